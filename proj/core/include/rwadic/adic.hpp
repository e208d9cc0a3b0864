#pragma once

#include <cstdint>
#include <vector>

#include "rwadic/bigint.hpp"
#include "rwadic/point.hpp"

namespace rwadic {

inline constexpr std::int64_t kDefaultScanBudget = 1 << 22;
inline constexpr int kDefaultFiberCap = 24;

struct SuccessorResult {
    Point point;
    std::int64_t carry_depth;  // deepest coordinate changed
};

// Least point strictly above x in the reverse-lexicographic order on its
// tail class: increment the first coordinate that admits an admissible
// larger symbol, fill everything below it minimally.  Throws
// MaximalPointError when no coordinate can be incremented (decidable for
// exact points); lazy scans give up after scan_budget coordinates.
SuccessorResult successor_with_depth(const Point& x, std::int64_t scan_budget = kDefaultScanBudget);
Point successor(const Point& x);

// Greatest point strictly below x: decrement the first coordinate that
// admits an admissible smaller symbol, fill everything below maximally.
SuccessorResult predecessor_with_depth(const Point& x, std::int64_t scan_budget = kDefaultScanBudget);
Point predecessor(const Point& x);

// J_m(s) = number of admissible words of length m that may precede symbol s
// (m = 0 gives 1); returned for all s at once.
std::vector<BigInt> preceding_word_counts(const TransitionSystem& ts, std::int64_t m);

// Admissible words w of length n with allowed(w_n, x_{n+1}), sorted in
// reverse-lexicographic order (last differing coordinate decides).  Words
// are stored packed; alphabet^n must fit in 63 bits and n must not exceed
// the cap.
class FiberView {
public:
    FiberView(const TransitionSystem& ts, int n, Symbol continuation, int fiber_cap);

    int depth() const { return n_; }
    Symbol continuation() const { return continuation_; }
    std::size_t size() const { return codes_.size(); }
    Word word(std::size_t i) const;
    // position of w in the fiber order; throws if w is not a member
    std::size_t rank_of(const Word& w) const;

private:
    std::uint64_t encode(const Word& w) const;

    int d_;
    int n_;
    Symbol continuation_;
    std::vector<std::uint64_t> codes_;
};

FiberView fiber(const Point& x, int n, int fiber_cap = kDefaultFiberCap);

// Exact depth-n data for a point: fiber cardinality, reverse-lex rank of the
// prefix, remaining increments K_n = (J-hat - 1) - rank (zero for n-maximal
// prefixes, reported with the flag), the block successor tau_n, and the
// r-fold extension K_n^(r) = K_n + sum_{j=1}^{r-1} J-hat_n(tau^j sigma^n x).
struct BlockQuantities {
    BigInt j_hat;
    BigInt rank;
    BigInt k_n;
    bool n_maximal = false;
    bool n_minimal = false;
    BigInt k_n_r;
    Point tau_n;
};

BlockQuantities block_quantities(const Point& x, std::int64_t n, int r = 1);

}  // namespace rwadic
