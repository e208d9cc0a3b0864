#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>

#include "rwadic/rng.hpp"
#include "rwadic/transition_system.hpp"

namespace rwadic {

// Growable symbol source shared by lazy points.  Coordinates are produced on
// demand by the extender, in order, and cached; for a fixed seed the value of
// at(i) never depends on the read pattern.  Reads from several threads are
// safe (extension happens under a mutex).
class LazyStream {
public:
    // prev is empty for the very first symbol
    using Extender = std::function<Symbol(RandomStream&, std::optional<Symbol>)>;

    LazyStream(std::uint64_t seed, std::uint64_t stream_index, Extender next)
        : rng_(seed, stream_index), next_(std::move(next)) {}

    Symbol at(std::size_t i) const {
        std::lock_guard<std::mutex> lock(mu_);
        while (buf_.size() <= i) {
            std::optional<Symbol> prev;
            if (!buf_.empty()) prev = buf_.back();
            buf_.push_back(next_(rng_, prev));
        }
        return buf_[i];
    }

private:
    mutable std::mutex mu_;
    mutable std::vector<Symbol> buf_;
    mutable RandomStream rng_;
    Extender next_;
};

// One-sided admissible sequence, one-indexed.  Exact points are an explicit
// prefix followed by a repeating cycle; lazy points defer to a shared stream.
// Points are immutable values: shifting or replacing a prefix yields a new
// point over the same underlying data.
class Point {
public:
    static Point exact(std::shared_ptr<const TransitionSystem> ts, Word prefix, Word cycle);
    static Point lazy(std::shared_ptr<const TransitionSystem> ts,
                      std::shared_ptr<LazyStream> stream);

    const TransitionSystem& system() const { return *ts_; }
    std::shared_ptr<const TransitionSystem> system_ptr() const { return ts_; }

    bool is_exact() const { return cycle_ != nullptr; }

    // coordinate x_n, n >= 1
    Symbol at(std::int64_t n) const;

    // sigma^k of this point
    Point shifted(std::int64_t k = 1) const;

    // point equal to this one beyond |w| with coordinates 1..|w| set to w
    Point with_prefix(const Word& w) const;

    // exact points only: canonical (head, cycle) with the head absorbed into
    // the cycle as far as possible and the cycle rotated to its minimal form
    std::pair<Word, Word> normal_form() const;

    // structural equality of exact points (decidable); false for lazy inputs
    // unless they share stream identity and offsets
    bool same_point(const Point& other) const;

    // least T >= 1 with x_i == y_i for all i >= T, when the two points are
    // tail-equivalent; empty otherwise.  Exact x exact only.
    static std::optional<std::int64_t> tail_equivalence_start(const Point& x, const Point& y);

    std::size_t head_size() const { return head_.size(); }

private:
    Point() = default;

    std::shared_ptr<const TransitionSystem> ts_;
    Word head_;                          // coordinates 1..head_.size()
    std::shared_ptr<const Word> cycle_;  // exact tail
    std::shared_ptr<LazyStream> stream_; // lazy tail
    std::int64_t stream_pos_ = 0;        // stream index of coordinate head_.size()+1

    friend Point make_point_with_parts(std::shared_ptr<const TransitionSystem>, Word,
                                       std::shared_ptr<const Word>,
                                       std::shared_ptr<LazyStream>, std::int64_t);
    friend Point prepend(const Word& w, const Point& rest);
};

// point whose coordinates are w_1 ... w_m followed by rest_1, rest_2, ...
Point prepend(const Word& w, const Point& rest);

struct AgreementResult {
    enum class Kind { differ, equal, beyond_cap };
    Kind kind;
    std::int64_t index;  // first differing coordinate when kind == differ
};

// First coordinate where x and y differ, scanning up to cap; detects exact
// equality of two exact points via the eventual-periodicity bound.
AgreementResult agreement_index(const Point& x, const Point& y, std::int64_t cap);

}  // namespace rwadic
