#include <algorithm>
#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

#include "doctest.h"
#include "rwadic/adic.hpp"
#include "rwadic/errors.hpp"
#include "rwadic/point.hpp"
#include "rwadic/transition_system.hpp"

using namespace rwadic;

namespace {

std::shared_ptr<const TransitionSystem> full2() {
    return std::make_shared<TransitionSystem>(validate_tms({{1, 1}, {1, 1}}));
}

std::shared_ptr<const TransitionSystem> golden() {
    return std::make_shared<TransitionSystem>(validate_tms({{1, 1}, {1, 0}}));
}

std::uint64_t read_bits(const Point& x, int count) {
    std::uint64_t v = 0;
    for (int i = count; i >= 1; --i) v = (v << 1) | static_cast<std::uint64_t>(x.at(i));
    return v;
}

// admissible length-n words that may precede symbol s, brute force
std::vector<Word> fiber_words_oracle(const TransitionSystem& ts, int n, Symbol s) {
    std::vector<Word> out;
    Word w(static_cast<std::size_t>(n), 0);
    std::function<void(int)> rec = [&](int pos) {
        if (pos == n) {
            if (ts.allowed(w.back(), s)) out.push_back(w);
            return;
        }
        for (Symbol b = 0; b < ts.alphabet_size(); ++b) {
            if (pos > 0 && !ts.allowed(w[static_cast<std::size_t>(pos - 1)], b)) continue;
            w[static_cast<std::size_t>(pos)] = b;
            rec(pos + 1);
        }
    };
    rec(0);
    // order: last differing coordinate decides
    std::sort(out.begin(), out.end(), [](const Word& a, const Word& b) {
        return std::lexicographical_compare(a.rbegin(), a.rend(), b.rbegin(), b.rend());
    });
    return out;
}

}  // namespace

TEST_CASE("full shift successor is binary increment, least significant first") {
    auto ts = full2();
    Point x = Point::exact(ts, {}, {0});
    for (std::uint64_t v = 0; v < 300; ++v) {
        CHECK(read_bits(x, 12) == v);
        SuccessorResult r = successor_with_depth(x);
        // carry depth = lowest zero bit position
        int j = 1;
        while (x.at(j) == 1) ++j;
        CHECK(r.carry_depth == j);
        x = r.point;
    }
}

TEST_CASE("minimal fill below the incremented coordinate") {
    auto ts = golden();
    // coordinates 1 and 2 cannot move (0 before 1 is stuck, 1 is the top);
    // coordinate 3 increments and 1..2 refill minimally
    Point x = Point::exact(ts, {0, 1, 0, 0}, {0});
    Point y = successor(x);
    // oracle: the next word of the depth-4 fiber before continuation x_5 = 0
    auto words = fiber_words_oracle(*ts, 4, 0);
    Word w0{0, 1, 0, 0}, w1;
    auto it = std::find(words.begin(), words.end(), w0);
    REQUIRE(it != words.end());
    REQUIRE(it + 1 != words.end());
    w1 = *(it + 1);
    for (int i = 1; i <= 4; ++i) CHECK(y.at(i) == w1[static_cast<std::size_t>(i - 1)]);
    for (int i = 5; i <= 12; ++i) CHECK(y.at(i) == x.at(i));
}

TEST_CASE("maximal and minimal points throw") {
    auto ts = full2();
    CHECK_THROWS_AS(successor(Point::exact(ts, {}, {1})), MaximalPointError);
    CHECK_THROWS_AS(predecessor(Point::exact(ts, {}, {0})), MinimalPointError);
    auto gm = golden();
    CHECK_THROWS_AS(successor(Point::exact(gm, {}, {1, 0})), MaximalPointError);
    CHECK_THROWS_AS(successor(Point::exact(gm, {0, 1}, {0, 1})), MaximalPointError);
}

TEST_CASE("predecessor undoes successor") {
    for (auto ts : {full2(), golden()}) {
        Point x = Point::exact(ts, {0, 0, 1, 0, 1}, {0});
        for (int k = 0; k < 50; ++k) {
            Point y = successor(x);
            Point back = predecessor(y);
            for (int i = 1; i <= 16; ++i) CHECK(back.at(i) == x.at(i));
            x = y;
        }
    }
}

TEST_CASE("successor enumerates the fiber in order, tail untouched") {
    for (auto ts : {full2(), golden()}) {
        const int n = 5;
        for (Symbol s = 0; s < ts->alphabet_size(); ++s) {
            auto words = fiber_words_oracle(*ts, n, s);
            REQUIRE(!words.empty());
            Word tail{s};
            if (!ts->allowed(s, s)) {
                Symbol t = -1;
                for (Symbol y = 0; y < ts->alphabet_size(); ++y)
                    if (ts->allowed(s, y) && ts->allowed(y, s)) t = y;
                REQUIRE(t >= 0);
                tail.push_back(t);
            }
            Point x = Point::exact(ts, words.front(), tail);
            for (std::size_t k = 0; k + 1 < words.size(); ++k) {
                Point y = successor(x);
                for (int i = 1; i <= n; ++i)
                    CHECK(y.at(i) == words[k + 1][static_cast<std::size_t>(i - 1)]);
                for (int i = n + 1; i <= n + 8; ++i) CHECK(y.at(i) == x.at(i));
                x = y;
            }
        }
    }
}

TEST_CASE("preceding word counts: powers of two and Fibonacci") {
    auto counts2 = preceding_word_counts(*full2(), 10);
    CHECK(counts2[0] == BigInt(1 << 10));
    CHECK(counts2[1] == BigInt(1 << 10));

    // golden mean: J_m(0) and J_m(1) follow the Fibonacci recursion
    auto g = golden();
    BigInt prev0 = 1, prev1 = 1;  // m = 0
    for (int m = 1; m <= 20; ++m) {
        auto c = preceding_word_counts(*g, m);
        if (m >= 2) {
            auto cm1 = preceding_word_counts(*g, m - 1);
            auto cm2 = preceding_word_counts(*g, m - 2);
            CHECK(c[0] == cm1[0] + cm2[0]);
            CHECK(c[1] == cm1[1] + cm2[1]);
        }
        prev0 = c[0];
        prev1 = c[1];
    }
    CHECK(preceding_word_counts(*g, 1)[0] == BigInt(2));
    CHECK(preceding_word_counts(*g, 1)[1] == BigInt(1));
    CHECK(preceding_word_counts(*g, 2)[0] == BigInt(3));
    CHECK(preceding_word_counts(*g, 2)[1] == BigInt(2));
    CHECK(prev0 > prev1);
}

TEST_CASE("fiber view matches the brute-force order") {
    for (auto ts : {full2(), golden()}) {
        for (int n = 1; n <= 7; ++n)
            for (Symbol s = 0; s < ts->alphabet_size(); ++s) {
                auto words = fiber_words_oracle(*ts, n, s);
                FiberView f(*ts, n, s, kDefaultFiberCap);
                REQUIRE(f.size() == words.size());
                for (std::size_t i = 0; i < words.size(); ++i) {
                    CHECK(f.word(i) == words[i]);
                    CHECK(f.rank_of(words[i]) == i);
                }
            }
    }
    FiberView f(*golden(), 4, 0, kDefaultFiberCap);
    CHECK_THROWS_AS(f.rank_of({1, 1, 0, 0}), Error);
}

TEST_CASE("block quantities against fiber enumeration and literal iteration") {
    for (auto ts : {full2(), golden()}) {
        Point x = Point::exact(ts, {0, 1, 0, 0}, {0});
        for (std::int64_t n : {2, 3, 4}) {
            BlockQuantities q = block_quantities(x, n);
            auto words = fiber_words_oracle(*ts, static_cast<int>(n),
                                            x.at(n + 1));
            CHECK(q.j_hat == BigInt(words.size()));
            Word prefix;
            for (std::int64_t i = 1; i <= n; ++i) prefix.push_back(x.at(i));
            auto it = std::find(words.begin(), words.end(), prefix);
            REQUIRE(it != words.end());
            const auto rank = static_cast<std::size_t>(it - words.begin());
            CHECK(q.rank == BigInt(rank));
            CHECK(q.k_n == BigInt(words.size() - 1 - rank));
            CHECK(q.n_maximal == (rank + 1 == words.size()));
            CHECK(q.n_minimal == (rank == 0));

            // literal iteration: K_n successor steps reach the n-maximal
            // prefix, never touching coordinates past n
            Point cur = x;
            for (BigInt k = 0; k < q.k_n; ++k) cur = successor(cur);
            for (int i = 1; i <= static_cast<int>(n); ++i)
                CHECK(cur.at(i) == words.back()[static_cast<std::size_t>(i - 1)]);
            // tau_n: one more literal step past the n-maximal prefix
            Point expect = successor(cur);
            for (int i = 1; i <= 10; ++i) CHECK(q.tau_n.at(i) == expect.at(i));
        }
    }
}

TEST_CASE("k_n_r matches its definition term by term") {
    for (auto ts : {full2(), golden()}) {
        Point x = Point::exact(ts, {0, 0, 1, 0}, {0});
        const std::int64_t n = 3;
        const int r = 3;
        BlockQuantities q = block_quantities(x, n, r);
        BigInt expect = q.k_n;
        Point y = x.shifted(n);
        for (int j = 1; j < r; ++j) {
            y = successor(y);
            auto words = fiber_words_oracle(*ts, static_cast<int>(n), y.at(1));
            expect += BigInt(words.size());
        }
        CHECK(q.k_n_r == expect);
        CHECK(block_quantities(x, n, 1).k_n_r == block_quantities(x, n, 1).k_n);
    }
}

TEST_CASE("k_n counts literal tau steps to depth-n exhaustion") {
    auto ts = golden();
    Point x = Point::exact(ts, {0, 0, 1, 0}, {0});
    Point cur = x;
    BigInt steps = 0;
    for (;;) {
        BlockQuantities q = block_quantities(cur, 5);
        if (q.n_maximal) break;
        cur = successor(cur);
        ++steps;
    }
    CHECK(block_quantities(x, 5).k_n == steps);
}

TEST_CASE("exact point plumbing") {
    auto ts = golden();
    Point x = Point::exact(ts, {0, 1}, {0, 0, 1});
    CHECK(x.at(1) == 0);
    CHECK(x.at(2) == 1);
    CHECK(x.at(3) == 0);
    CHECK(x.at(5) == 1);
    CHECK(x.at(6) == 0);

    Point s = x.shifted(2);
    for (int i = 1; i <= 20; ++i) CHECK(s.at(i) == x.at(i + 2));

    Point p = prepend({1, 0}, x.shifted(2));
    CHECK(p.at(1) == 1);
    CHECK(p.at(2) == 0);
    for (int i = 3; i <= 20; ++i) CHECK(p.at(i) == x.at(i));

    Point w = x.with_prefix({1, 0, 0});
    CHECK(w.at(1) == 1);
    CHECK(w.at(3) == 0);
    for (int i = 4; i <= 20; ++i) CHECK(w.at(i) == x.at(i));

    CHECK_THROWS_AS(Point::exact(ts, {1, 1}, {0}), InadmissibleWordError);
    CHECK_THROWS_AS(Point::exact(ts, {0}, {1, 1, 0}), InadmissibleWordError);
}

TEST_CASE("normal form and structural equality") {
    auto ts = full2();
    Point a = Point::exact(ts, {0, 1}, {0, 1});
    Point b = Point::exact(ts, {}, {0, 1});
    CHECK(a.same_point(b));
    auto [head, cycle] = a.normal_form();
    CHECK(head.empty());
    CHECK(cycle.size() == 2);

    Point c = Point::exact(ts, {1}, {0, 1});  // 1 0 1 0 1 ...
    Point d = Point::exact(ts, {}, {1, 0});
    CHECK(c.same_point(d));
    CHECK_FALSE(a.same_point(c));
}

TEST_CASE("tail equivalence start and agreement index") {
    auto ts = full2();
    Point x = Point::exact(ts, {0, 0, 0}, {0, 1});
    Point y = Point::exact(ts, {1, 1, 0}, {0, 1});
    auto t = Point::tail_equivalence_start(x, y);
    REQUIRE(t.has_value());
    CHECK(*t == 3);
    for (std::int64_t i = *t; i <= *t + 10; ++i) CHECK(x.at(i) == y.at(i));

    // same cycle, shifted phase: agreement starts once the phases line up
    Point z = Point::exact(ts, {}, {1, 0});
    auto tz = Point::tail_equivalence_start(x, z);
    REQUIRE(tz.has_value());
    CHECK(*tz == 4);

    CHECK_FALSE(Point::tail_equivalence_start(x, Point::exact(ts, {}, {1})).has_value());

    AgreementResult r = agreement_index(x, y, 100);
    CHECK(r.kind == AgreementResult::Kind::differ);
    CHECK(r.index == 1);
    CHECK(agreement_index(x, x, 100).kind == AgreementResult::Kind::equal);
}

TEST_CASE("lazy streams are read-order independent") {
    auto ts = golden();
    auto ext = [](RandomStream& rs, std::optional<Symbol> prev) -> Symbol {
        if (prev && *prev == 1) return 0;
        return static_cast<Symbol>(rs.next_below(2));
    };
    auto s1 = std::make_shared<LazyStream>(42, 7, ext);
    auto s2 = std::make_shared<LazyStream>(42, 7, ext);
    Point a = Point::lazy(ts, s1);
    Point b = Point::lazy(ts, s2);
    (void)a.at(50);  // force deep extension first
    for (int i = 1; i <= 50; ++i) CHECK(a.at(i) == b.at(i));
    auto s3 = std::make_shared<LazyStream>(42, 8, ext);
    Point c = Point::lazy(ts, s3);
    bool all_same = true;
    for (int i = 1; i <= 50; ++i) all_same = all_same && (a.at(i) == c.at(i));
    CHECK_FALSE(all_same);
}
