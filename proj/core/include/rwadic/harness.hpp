#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "rwadic/cocycle.hpp"
#include "rwadic/extreme_points.hpp"
#include "rwadic/limit_laws.hpp"
#include "rwadic/measures.hpp"
#include "rwadic/spectral.hpp"

namespace rwadic {

// ceil(log_lambda n) for n >= 2, via a multiply loop with a relative guard
// (1e-12) against boundary rounding
std::int64_t ell(double lambda, std::int64_t n);

// a(n) = n / (ell^{D/2} (4 pi)^{D/2} sqrt(det Gamma)); the constant makes the
// mean of the limiting variable 1
double return_sequence(const PerronData& pd, const CovarianceData& cov, std::int64_t n);

// least m >= 2 with a(m) >= y.  a is increasing within each ceiling plateau
// but dips where the ceiling jumps, so this scans plateaus instead of
// bisecting; candidates are confirmed by direct evaluation.
std::int64_t return_inverse(const PerronData& pd, const CovarianceData& cov, double y);

// normalizer for the induced-map sums: 2^{-D/2} * return_inverse(n).  The
// factor makes the limit exactly e^{chi^2_D / 2} (it converts between the
// mean-1 convention of a and the inverse law's support convention).
double return_inverse_w(const PerronData& pd, const CovarianceData& cov, double n);

// Iterates the successor map in place on a coordinate buffer, keeping the
// skew-product position up to date by adding the transfer-function value of
// each step (windows up to the carry depth change; everything past it is
// untouched).  Amortized cost per step is O(carry depth) = O(1) on average.
// The cocycle, when given, must outlive the walker.
class OrbitWalker {
public:
    OrbitWalker(std::shared_ptr<const TransitionSystem> ts, Point start);
    OrbitWalker(const Cocycle& f, Point start);

    void step();
    std::int64_t steps() const { return steps_; }

    bool tracks_position() const { return f_ != nullptr; }
    const GroupElement& position() const;

    // current coordinate x_i (1-indexed); extends the buffer as needed
    Symbol coordinate(std::int64_t i);
    Point current() const;  // materialized point (slow; tests and oracles)

private:
    void ensure(std::int64_t i);

    std::shared_ptr<const TransitionSystem> ts_;
    const Cocycle* f_ = nullptr;
    Point source_;
    std::vector<Symbol> buf_;
    GroupElement pos_;
    std::int64_t steps_ = 0;
};

// S_n = #{0 <= k < n : position after k steps lies in the window}, recorded
// at each checkpoint (sorted ascending) for each window in one pass.
struct OccupationSeries {
    std::vector<std::int64_t> checkpoints;
    std::vector<std::vector<std::int64_t>> counts;  // [checkpoint][window]
};

OccupationSeries simulate_occupation(const Cocycle& f, const Point& x0,
                                     const std::vector<std::int64_t>& checkpoints,
                                     const std::vector<Window>& windows);

// One pointwise comparison: lhs = ell^{D/2} S_n / n against the Gaussian
// profile rhs = |I| / sqrt((2 pi)^D det Gamma) * exp(-q(fbar_ell)/(2 ell)),
// with the ball indicator at radius R evaluated on fbar_ell / sqrt(ell).
struct StarRow {
    std::int64_t n = 0;
    std::size_t point_index = 0;
    double lhs = 0.0;
    double rhs = 0.0;
    int indicator = 0;
    double fbar_norm = 0.0;
};

StarRow star_check(const Cocycle& f, const PerronData& pd, const CovarianceData& cov,
                   const Point& x, std::int64_t n, double R, const Window& I);

struct StarReport {
    std::vector<StarRow> rows;
    std::vector<double> median_err;  // per n: median over points of |lhs-rhs|*indicator
    bool decreasing = false;
};

StarReport star_trend(const Cocycle& f, const MeasurePair& m, const CovarianceData& cov,
                      const Window& I, double R, const std::vector<std::int64_t>& n_list,
                      std::size_t points, std::uint64_t seed, int threads = 1);

// Monte Carlo for the occupation-time law: orbits independent points from
// the tail-invariant measure, samples S_n / a(n), KS distance against the
// exp-chi-squared law.  Deterministic in (seed, orbit index); thread count
// only affects scheduling.
struct TheoremMcResult {
    std::vector<std::int64_t> n_list;
    std::vector<double> a_values;
    // samples[n_index][window_index][orbit]
    std::vector<std::vector<std::vector<double>>> samples;
    std::vector<std::vector<double>> ks;    // [n_index][window_index]
    std::vector<std::vector<double>> mean;  // [n_index][window_index]
};

TheoremMcResult theorem_mc(const Cocycle& f, const MeasurePair& m, const CovarianceData& cov,
                           const std::vector<Window>& windows, std::size_t orbits,
                           const std::vector<std::int64_t>& n_list, std::uint64_t seed,
                           int threads = 1);

// Monte Carlo for the induced map on cocycle-position zero: each sample is
// (sum of the first n return times) / (2^{-D/2} a^{-1}(n)), compared against
// the inverse law with d-1 degrees of freedom.  Orbits whose step count hits
// the budget before the last checkpoint are censored there and excluded from
// that checkpoint's KS; the censored fraction is reported.
struct ExchangeabilityResult {
    std::vector<std::int64_t> n_list;  // return counts
    std::vector<double> b_values;
    std::vector<std::vector<double>> samples;  // [n_index][uncensored orbits]
    std::vector<double> ks;                    // vs W_{d-1}
    std::vector<double> mean;
    std::vector<double> censored_fraction;
};

ExchangeabilityResult exchangeability_mc(std::shared_ptr<const TransitionSystem> ts,
                                         std::size_t orbits,
                                         const std::vector<std::int64_t>& n_list,
                                         std::uint64_t seed, std::int64_t step_budget,
                                         int threads = 1);

// Birkhoff averages of cylinder indicators along the successor map against
// the tail-invariant mass, sup over sampled points (tail-measure samples
// plus adversarial points agreeing with a maximal point to depth 20).
struct UniformReport {
    struct Row {
        std::int64_t n = 0;
        Word cylinder;
        double err = 0.0;  // sup over points
    };
    std::vector<std::int64_t> n_list;
    std::vector<Row> rows;
    std::vector<double> sup_error;  // per n, over all cylinders and points
    bool decreasing = false;        // non-increasing in n (exact zeros can tie)
};

UniformReport uniform_convergence_check(const MeasurePair& m, int max_depth,
                                        const std::vector<std::int64_t>& n_list,
                                        std::size_t nu_points, std::size_t adversarial_points,
                                        std::uint64_t seed);

// Exact fiber-count comparison: over sampled points x and each depth n, the
// number of fiber words whose n-step sum lands in t + I (t the point's own
// n-step sum) against lambda^n c(x_{n+1}) |I| exp(-q(tbar)/(2n)) /
// sqrt((2 pi n)^D det Gamma).
struct Lemma41Report {
    struct Row {
        std::int64_t n = 0;
        std::size_t point_index = 0;
        double count = 0.0;
        double reference = 0.0;
        double ratio_err = 0.0;  // |count/reference - 1|
    };
    std::vector<Row> rows;
    std::vector<double> median_err;  // per n
    bool decreasing = false;
};

Lemma41Report lemma41_check(const Cocycle& f, const MeasurePair& m, const CovarianceData& cov,
                            const Window& I, const std::vector<std::int64_t>& n_list,
                            std::size_t points, std::uint64_t seed);

// Partition of the space into cylinders on which the successor map is a
// single prefix substitution.  source -> image at equal tail; pieces are
// emitted once the image prefix is at least min_depth long; prefixes still
// unresolved at max_depth (they shadow a maximal point) are accumulated as
// unresolved tail-measure mass.
struct TauPiece {
    Word source;
    Word image;
};

struct TauDecomposition {
    std::vector<TauPiece> pieces;
    double unresolved_mass = 0.0;
};

TauDecomposition tau_preimage_decomposition(const MeasurePair& m, int min_depth, int max_depth);

// Randomized cross-check of compact_successor_sets: sample points agreeing
// with each maximal point to a random large depth, apply the successor, and
// compare germs with the analytic limit candidates (both directions: every
// sampled germ is a candidate, every candidate is hit).
struct SuccessorSetOracleReport {
    bool match = true;
    std::size_t samples_used = 0;
    std::string detail;
};

SuccessorSetOracleReport oracle_successor_sets(std::shared_ptr<const TransitionSystem> ts,
                                               std::size_t samples_per_point,
                                               std::uint64_t seed);

}  // namespace rwadic
