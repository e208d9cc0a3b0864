#include "rwadic/adic.hpp"

#include <algorithm>

#include "rwadic/errors.hpp"

namespace rwadic {

namespace {

// smallest n >= 1 whose coordinate admits an admissible increment (dir > 0)
// or decrement (dir < 0); -1 when none exists
std::int64_t first_movable(const Point& x, int dir, std::int64_t scan_budget) {
    const TransitionSystem& ts = x.system();
    std::int64_t bound;
    if (x.is_exact()) {
        auto nf = x.normal_form();
        // beyond the head the pairs (x_n, x_{n+1}) repeat with the cycle
        bound = static_cast<std::int64_t>(nf.first.size() + nf.second.size());
    } else {
        bound = scan_budget;
    }
    for (std::int64_t n = 1; n <= bound; ++n) {
        Symbol cur = x.at(n);
        Symbol next = x.at(n + 1);
        if (dir > 0) {
            if (ts.smallest_allowed_above(cur, next)) return n;
        } else {
            if (ts.largest_allowed_below(cur, next)) return n;
        }
    }
    if (!x.is_exact())
        throw BudgetExceededError("no movable coordinate found within the scan budget");
    return -1;
}

}  // namespace

SuccessorResult successor_with_depth(const Point& x, std::int64_t scan_budget) {
    const TransitionSystem& ts = x.system();
    std::int64_t n = first_movable(x, +1, scan_budget);
    if (n < 0) throw MaximalPointError("point has no successor");
    Word fill(static_cast<std::size_t>(n));
    fill[static_cast<std::size_t>(n - 1)] = *ts.smallest_allowed_above(x.at(n), x.at(n + 1));
    for (std::int64_t j = n - 1; j >= 1; --j)
        fill[static_cast<std::size_t>(j - 1)] = ts.phi_minus(fill[static_cast<std::size_t>(j)]);
    return {x.with_prefix(fill), n};
}

Point successor(const Point& x) { return successor_with_depth(x).point; }

SuccessorResult predecessor_with_depth(const Point& x, std::int64_t scan_budget) {
    const TransitionSystem& ts = x.system();
    std::int64_t n = first_movable(x, -1, scan_budget);
    if (n < 0) throw MinimalPointError("point has no predecessor");
    Word fill(static_cast<std::size_t>(n));
    fill[static_cast<std::size_t>(n - 1)] = *ts.largest_allowed_below(x.at(n), x.at(n + 1));
    for (std::int64_t j = n - 1; j >= 1; --j)
        fill[static_cast<std::size_t>(j - 1)] = ts.phi_plus(fill[static_cast<std::size_t>(j)]);
    return {x.with_prefix(fill), n};
}

Point predecessor(const Point& x) { return predecessor_with_depth(x).point; }

std::vector<BigInt> preceding_word_counts(const TransitionSystem& ts, std::int64_t m) {
    const int d = ts.alphabet_size();
    std::vector<BigInt> c(static_cast<std::size_t>(d), BigInt(1));
    for (std::int64_t k = 1; k <= m; ++k) {
        std::vector<BigInt> next(static_cast<std::size_t>(d), BigInt(0));
        for (Symbol s = 0; s < d; ++s)
            for (Symbol y = 0; y < d; ++y)
                if (ts.allowed(y, s)) next[static_cast<std::size_t>(s)] += c[static_cast<std::size_t>(y)];
        c.swap(next);
    }
    return c;
}

FiberView::FiberView(const TransitionSystem& ts, int n, Symbol continuation, int fiber_cap)
    : d_(ts.alphabet_size()), n_(n), continuation_(continuation) {
    if (n < 1) throw Error("fiber depth must be at least 1");
    if (n > fiber_cap)
        throw DepthTooLargeError("fiber depth " + std::to_string(n) + " exceeds the cap " +
                                 std::to_string(fiber_cap));
    std::uint64_t span = 1;
    for (int j = 0; j < n; ++j) {
        if (span > (std::uint64_t{1} << 62) / static_cast<std::uint64_t>(d_))
            throw DepthTooLargeError("fiber words do not fit the packed encoding");
        span *= static_cast<std::uint64_t>(d_);
    }

    // choose coordinates from position n downward, ascending at each level:
    // that emits words in increasing reverse-lexicographic order, and the
    // packed code (position n most significant) is monotone in that order
    Word w(static_cast<std::size_t>(n));
    std::vector<Symbol> choice(static_cast<std::size_t>(n), -1);
    int level = 0;  // level counts from the top: position n - level
    while (level >= 0) {
        Symbol after = level == 0 ? continuation_ : w[static_cast<std::size_t>(n - level)];
        Symbol s = choice[static_cast<std::size_t>(level)] + 1;
        while (s < d_ && !ts.allowed(s, after)) ++s;
        if (s >= d_) {
            choice[static_cast<std::size_t>(level)] = -1;
            --level;
            continue;
        }
        choice[static_cast<std::size_t>(level)] = s;
        w[static_cast<std::size_t>(n - 1 - level)] = s;
        if (level == n - 1) {
            codes_.push_back(encode(w));
        } else {
            ++level;
        }
    }
}

std::uint64_t FiberView::encode(const Word& w) const {
    std::uint64_t code = 0;
    for (std::size_t j = w.size(); j-- > 0;)
        code = code * static_cast<std::uint64_t>(d_) + static_cast<std::uint64_t>(w[j]);
    return code;
}

Word FiberView::word(std::size_t i) const {
    std::uint64_t code = codes_.at(i);
    Word w(static_cast<std::size_t>(n_));
    for (int j = 0; j < n_; ++j) {
        w[static_cast<std::size_t>(j)] = static_cast<Symbol>(code % static_cast<std::uint64_t>(d_));
        code /= static_cast<std::uint64_t>(d_);
    }
    return w;
}

std::size_t FiberView::rank_of(const Word& w) const {
    if (static_cast<int>(w.size()) != n_) throw Error("word length does not match the fiber depth");
    std::uint64_t code = encode(w);
    auto it = std::lower_bound(codes_.begin(), codes_.end(), code);
    if (it == codes_.end() || *it != code)
        throw InadmissibleWordError("word is not a member of the fiber");
    return static_cast<std::size_t>(it - codes_.begin());
}

FiberView fiber(const Point& x, int n, int fiber_cap) {
    return FiberView(x.system(), n, x.at(static_cast<std::int64_t>(n) + 1), fiber_cap);
}

BlockQuantities block_quantities(const Point& x, std::int64_t n, int r) {
    if (n < 1) throw Error("block depth must be at least 1");
    if (r < 1) throw Error("block arity must be at least 1");
    const TransitionSystem& ts = x.system();
    const int d = ts.alphabet_size();

    // J_{j}(s) for j = 0..n
    std::vector<std::vector<BigInt>> jtab;
    jtab.reserve(static_cast<std::size_t>(n + 1));
    jtab.push_back(std::vector<BigInt>(static_cast<std::size_t>(d), BigInt(1)));
    for (std::int64_t k = 1; k <= n; ++k) {
        std::vector<BigInt> next(static_cast<std::size_t>(d), BigInt(0));
        for (Symbol s = 0; s < d; ++s)
            for (Symbol y = 0; y < d; ++y)
                if (ts.allowed(y, s))
                    next[static_cast<std::size_t>(s)] += jtab.back()[static_cast<std::size_t>(y)];
        jtab.push_back(std::move(next));
    }

    BigInt j_hat = jtab[static_cast<std::size_t>(n)][static_cast<std::size_t>(x.at(n + 1))];

    // reverse-lex rank: words below x differ last at some position j with a
    // smaller admissible symbol there and an arbitrary admissible start
    BigInt rank = 0;
    for (std::int64_t j = 1; j <= n; ++j) {
        Symbol xj = x.at(j);
        Symbol after = x.at(j + 1);
        for (Symbol s = 0; s < xj; ++s)
            if (ts.allowed(s, after)) rank += jtab[static_cast<std::size_t>(j - 1)][static_cast<std::size_t>(s)];
    }

    BigInt k_n = j_hat - 1 - rank;

    Point shifted = x.shifted(n);
    Point y = successor(shifted);
    Word fill(static_cast<std::size_t>(n));
    fill[static_cast<std::size_t>(n - 1)] = ts.phi_minus(y.at(1));
    for (std::int64_t j = n - 1; j >= 1; --j)
        fill[static_cast<std::size_t>(j - 1)] = ts.phi_minus(fill[static_cast<std::size_t>(j)]);
    Point tau_n = prepend(fill, y);

    BigInt k_n_r = k_n;
    Point cursor = y;
    for (int j = 1; j < r; ++j) {
        k_n_r += jtab[static_cast<std::size_t>(n)][static_cast<std::size_t>(cursor.at(1))];
        if (j + 1 < r) cursor = successor(cursor);
    }

    BlockQuantities out{std::move(j_hat), std::move(rank), std::move(k_n),
                        false, false, std::move(k_n_r), std::move(tau_n)};
    out.n_maximal = out.k_n == 0;
    out.n_minimal = out.rank == 0;
    return out;
}

}  // namespace rwadic
