#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "rwadic/group.hpp"
#include "rwadic/measures.hpp"
#include "rwadic/point.hpp"

namespace rwadic {

// Finite-range observable: a table on admissible words of length `range`
// with values in Z^k x R^{D-k}.  value_at(x, p) reads the window
// x_p ... x_{p+range-1}.
class Cocycle {
public:
    Cocycle(std::shared_ptr<const TransitionSystem> ts, GroupSpec spec, int range,
            std::vector<std::pair<Word, GroupElement>> entries);

    const TransitionSystem& system() const { return *ts_; }
    std::shared_ptr<const TransitionSystem> system_ptr() const { return ts_; }
    const GroupSpec& spec() const { return spec_; }
    int range() const { return range_; }

    const std::vector<Word>& words() const { return words_; }
    const GroupElement& value(const Word& w) const;
    const GroupElement& value_by_code(std::uint64_t code) const { return table_[code]; }
    std::uint64_t encode(const Word& w) const;
    const GroupElement& value_at(const Point& x, std::int64_t pos = 1) const;

    // E_mu(f) as a real D-vector (expectation of each coordinate under the
    // shift-invariant measure)
    std::vector<double> mean(const MeasurePair& m) const;

    double sup_norm() const;  // max over words and coordinates of |f|

private:
    std::shared_ptr<const TransitionSystem> ts_;
    GroupSpec spec_;
    int range_;
    std::vector<Word> words_;          // admissible range-words, lexicographic
    std::vector<GroupElement> table_;  // indexed by packed code (dense)
    std::vector<char> present_;
};

// sum of f over the windows starting at 1..n
GroupElement birkhoff_sum(const Cocycle& f, const Point& x, std::int64_t n);

// transfer function between tail-equivalent points:
//   psi(x, y) = sum_{k>=0} (f(sigma^k y) - f(sigma^k x))
// The sum is finite: terms vanish once the window clears the last
// disagreement.  The two-argument form certifies tail equivalence itself
// (exact points); the _from form takes a caller-supplied start index T with
// x_i == y_i for all i >= T.
GroupElement psi(const Cocycle& f, const Point& x, const Point& y);
GroupElement psi_from(const Cocycle& f, const Point& x, const Point& y, std::int64_t tail_start);

// phi(x) = psi(x, successor(x)); the successor's carry depth bounds the sum
GroupElement phi_step(const Cocycle& f, const Point& x);

struct SkewState {
    Point base;
    GroupElement position;
};

// adic skew product: (x, y) -> (tau x, y + phi(x))
SkewState skew_step(const Cocycle& f, const SkewState& s);
// shift skew product: (x, y) -> (sigma x, y + f(x))
SkewState shift_skew_step(const Cocycle& f, const SkewState& s);

// Group generated by periodic-orbit sums (H) and by same-period differences
// (G), from all periodic points of period <= max_period.  Integer parts are
// reduced to Hermite normal form bases; continuous parts report real rank.
struct GroupSpanReport {
    GroupSpec spec;
    int degree = 0;           // dim_R span of the difference generators
    int lattice_rank = 0;     // rank of G's integer part
    bool lattice_full = false;  // G's integer part equals Z^k
    int continuous_rank = 0;  // real rank of G's continuous part
    bool full_rank = false;   // degree == D and lattice_full
    std::vector<std::vector<std::int64_t>> g_lattice_basis;  // HNF rows
    std::vector<std::vector<std::int64_t>> h_lattice_basis;  // HNF rows
    std::size_t periodic_points_used = 0;
};

GroupSpanReport group_span(const Cocycle& f, int max_period,
                           std::size_t word_budget = 10'000'000);

// The symbol-count observable: range 1, values in Z^{d-1}, coordinate c of
// f(x) is [x_1 == c] for c = 1..d-1.
Cocycle exchangeability_cocycle(std::shared_ptr<const TransitionSystem> ts);

// Whether the graph on symbols with edges {b, c : some a has
// allowed(b,a) and allowed(c,a)} is connected.
bool almost_onto(const TransitionSystem& ts);

}  // namespace rwadic
