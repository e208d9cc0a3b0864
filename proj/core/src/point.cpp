#include "rwadic/point.hpp"

#include <algorithm>
#include <numeric>

#include "rwadic/errors.hpp"

namespace rwadic {

namespace {

// shortest block whose repetition gives the cycle
Word primitive_block(const Word& c) {
    for (std::size_t p = 1; p <= c.size() / 2; ++p) {
        if (c.size() % p != 0) continue;
        bool ok = true;
        for (std::size_t i = p; i < c.size() && ok; ++i) ok = c[i] == c[i % p];
        if (ok) return Word(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(p));
    }
    return c;
}

}  // namespace

Point make_point_with_parts(std::shared_ptr<const TransitionSystem> ts, Word head,
                            std::shared_ptr<const Word> cycle,
                            std::shared_ptr<LazyStream> stream, std::int64_t stream_pos) {
    Point p;
    p.ts_ = std::move(ts);
    p.head_ = std::move(head);
    p.cycle_ = std::move(cycle);
    p.stream_ = std::move(stream);
    p.stream_pos_ = stream_pos;
    return p;
}

Point Point::exact(std::shared_ptr<const TransitionSystem> ts, Word prefix, Word cycle) {
    if (cycle.empty()) throw Error("exact point needs a nonempty cycle");
    ts->require_admissible(prefix);
    ts->require_admissible(cycle);
    if (!ts->allowed(cycle.back(), cycle.front()))
        throw InadmissibleWordError("cycle does not close admissibly");
    if (!prefix.empty() && !ts->allowed(prefix.back(), cycle.front()))
        throw InadmissibleWordError("prefix does not join the cycle admissibly");
    return make_point_with_parts(std::move(ts), std::move(prefix),
                                 std::make_shared<const Word>(std::move(cycle)), nullptr, 0);
}

Point Point::lazy(std::shared_ptr<const TransitionSystem> ts, std::shared_ptr<LazyStream> stream) {
    return make_point_with_parts(std::move(ts), {}, nullptr, std::move(stream), 0);
}

Symbol Point::at(std::int64_t n) const {
    if (n < 1) throw Error("coordinates are one-indexed");
    std::int64_t h = static_cast<std::int64_t>(head_.size());
    if (n <= h) return head_[static_cast<std::size_t>(n - 1)];
    if (cycle_) {
        std::int64_t m = (n - 1 - h) % static_cast<std::int64_t>(cycle_->size());
        return (*cycle_)[static_cast<std::size_t>(m)];
    }
    return stream_->at(static_cast<std::size_t>(stream_pos_ + (n - 1 - h)));
}

Point Point::shifted(std::int64_t k) const {
    if (k < 0) throw Error("shift amount must be nonnegative");
    if (k == 0) return *this;
    std::int64_t h = static_cast<std::int64_t>(head_.size());
    if (k <= h) {
        Word head(head_.begin() + static_cast<std::ptrdiff_t>(k), head_.end());
        return make_point_with_parts(ts_, std::move(head), cycle_, stream_, stream_pos_);
    }
    std::int64_t e = k - h;
    if (cycle_) {
        std::int64_t len = static_cast<std::int64_t>(cycle_->size());
        std::int64_t r = e % len;
        Word rotated(cycle_->begin(), cycle_->end());
        std::rotate(rotated.begin(), rotated.begin() + static_cast<std::ptrdiff_t>(r), rotated.end());
        return make_point_with_parts(ts_, {}, std::make_shared<const Word>(std::move(rotated)),
                                     nullptr, 0);
    }
    return make_point_with_parts(ts_, {}, nullptr, stream_, stream_pos_ + e);
}

Point Point::with_prefix(const Word& w) const {
    if (w.empty()) return *this;
    ts_->require_admissible(w);
    Symbol next = at(static_cast<std::int64_t>(w.size()) + 1);
    if (!ts_->allowed(w.back(), next))
        throw InadmissibleWordError("replacement prefix does not join the tail admissibly");
    std::int64_t h = static_cast<std::int64_t>(head_.size());
    std::int64_t m = static_cast<std::int64_t>(w.size());
    Word head = w;
    if (m < h) {
        head.insert(head.end(), head_.begin() + static_cast<std::ptrdiff_t>(m), head_.end());
        return make_point_with_parts(ts_, std::move(head), cycle_, stream_, stream_pos_);
    }
    std::int64_t e = m - h;
    if (cycle_) {
        std::int64_t len = static_cast<std::int64_t>(cycle_->size());
        std::int64_t r = e % len;
        Word rotated(cycle_->begin(), cycle_->end());
        std::rotate(rotated.begin(), rotated.begin() + static_cast<std::ptrdiff_t>(r), rotated.end());
        return make_point_with_parts(ts_, std::move(head),
                                     std::make_shared<const Word>(std::move(rotated)), nullptr, 0);
    }
    return make_point_with_parts(ts_, std::move(head), nullptr, stream_, stream_pos_ + e);
}

std::pair<Word, Word> Point::normal_form() const {
    if (!is_exact()) throw Error("normal form requires an exact point");
    Word head = head_;
    Word cycle = primitive_block(*cycle_);
    // absorb head symbols that extend the cycle backwards; the result (the
    // shortest head over the primitive cycle, phase pinned by the head end)
    // is the unique minimal representation, so it decides equality
    while (!head.empty() && head.back() == cycle.back()) {
        head.pop_back();
        std::rotate(cycle.begin(), cycle.end() - 1, cycle.end());
    }
    return {head, cycle};
}

bool Point::same_point(const Point& other) const {
    if (is_exact() && other.is_exact()) {
        return normal_form() == other.normal_form();
    }
    if (!is_exact() && !other.is_exact()) {
        return stream_ == other.stream_ && stream_pos_ == other.stream_pos_ &&
               head_ == other.head_;
    }
    return false;
}

std::optional<std::int64_t> Point::tail_equivalence_start(const Point& x, const Point& y) {
    if (!x.is_exact() || !y.is_exact())
        throw Error("tail equivalence certificate requires exact points");
    std::int64_t hx = static_cast<std::int64_t>(x.head_.size());
    std::int64_t hy = static_cast<std::int64_t>(y.head_.size());
    std::int64_t h = std::max(hx, hy);
    std::int64_t l = std::lcm(static_cast<std::int64_t>(x.cycle_->size()),
                              static_cast<std::int64_t>(y.cycle_->size()));
    // beyond h both are periodic with period l: one window decides the tails
    for (std::int64_t n = h + 1; n <= h + l; ++n)
        if (x.at(n) != y.at(n)) return std::nullopt;
    std::int64_t start = 1;
    for (std::int64_t n = h; n >= 1; --n) {
        if (x.at(n) != y.at(n)) {
            start = n + 1;
            break;
        }
    }
    return start;
}

Point prepend(const Word& w, const Point& rest) {
    if (w.empty()) return rest;
    rest.ts_->require_admissible(w);
    if (!rest.ts_->allowed(w.back(), rest.at(1)))
        throw InadmissibleWordError("prepended word does not join the point admissibly");
    Word head = w;
    head.insert(head.end(), rest.head_.begin(), rest.head_.end());
    return make_point_with_parts(rest.ts_, std::move(head), rest.cycle_, rest.stream_,
                                 rest.stream_pos_);
}

AgreementResult agreement_index(const Point& x, const Point& y, std::int64_t cap) {
    if (x.is_exact() && y.is_exact()) {
        auto nx = x.normal_form();
        auto ny = y.normal_form();
        std::int64_t bound = static_cast<std::int64_t>(std::max(nx.first.size(), ny.first.size())) +
                             std::lcm(static_cast<std::int64_t>(nx.second.size()),
                                      static_cast<std::int64_t>(ny.second.size()));
        for (std::int64_t n = 1; n <= std::min(bound, cap); ++n)
            if (x.at(n) != y.at(n)) return {AgreementResult::Kind::differ, n};
        if (bound <= cap) return {AgreementResult::Kind::equal, 0};
        return {AgreementResult::Kind::beyond_cap, cap};
    }
    for (std::int64_t n = 1; n <= cap; ++n)
        if (x.at(n) != y.at(n)) return {AgreementResult::Kind::differ, n};
    return {AgreementResult::Kind::beyond_cap, cap};
}

}  // namespace rwadic
