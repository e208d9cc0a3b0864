#include <memory>
#include <vector>

#include "doctest.h"
#include "rwadic/adic.hpp"
#include "rwadic/cocycle.hpp"
#include "rwadic/errors.hpp"
#include "rwadic/measures.hpp"

using namespace rwadic;

namespace {

std::shared_ptr<const TransitionSystem> full2() {
    return std::make_shared<TransitionSystem>(validate_tms({{1, 1}, {1, 1}}));
}

std::shared_ptr<const TransitionSystem> golden() {
    return std::make_shared<TransitionSystem>(validate_tms({{1, 1}, {1, 0}}));
}

GroupElement zel(const GroupSpec& spec, std::int64_t v) {
    GroupElement g = GroupElement::zero(spec);
    g.lattice[0] = v;
    return g;
}

// f(x) = x_1 as an integer
Cocycle first_symbol(std::shared_ptr<const TransitionSystem> ts) {
    GroupSpec spec{1, 1};
    std::vector<std::pair<Word, GroupElement>> entries;
    for (Symbol a = 0; a < ts->alphabet_size(); ++a) entries.emplace_back(Word{a}, zel(spec, a));
    return Cocycle(std::move(ts), spec, 1, std::move(entries));
}

// literal tail series with an explicit cap; independent of psi internals
GroupElement psi_oracle(const Cocycle& f, const Point& x, const Point& y, std::int64_t cap) {
    GroupElement acc = GroupElement::zero(f.spec());
    for (std::int64_t k = 0; k <= cap; ++k) {
        acc.add(f.value_at(y, 1 + k));
        acc.sub(f.value_at(x, 1 + k));
    }
    return acc;
}

}  // namespace

TEST_CASE("table lookup and window reads") {
    auto ts = golden();
    Cocycle f = first_symbol(ts);
    CHECK(f.range() == 1);
    CHECK(f.words().size() == 2);
    Point x = Point::exact(ts, {0, 1, 0, 0, 1}, {0});
    for (std::int64_t p = 1; p <= 5; ++p) CHECK(f.value_at(x, p).lattice[0] == x.at(p));
    CHECK(f.value({1}).lattice[0] == 1);
    CHECK_THROWS_AS(f.value({0, 1}), Error);

    // range 2: f(x) = [x_1 x_2 == 01]
    GroupSpec spec{1, 1};
    std::vector<std::pair<Word, GroupElement>> entries;
    entries.emplace_back(Word{0, 0}, zel(spec, 0));
    entries.emplace_back(Word{0, 1}, zel(spec, 1));
    entries.emplace_back(Word{1, 0}, zel(spec, 0));
    Cocycle g(ts, spec, 2, entries);
    CHECK(g.value_at(x, 1).lattice[0] == 1);
    CHECK(g.value_at(x, 2).lattice[0] == 0);
    CHECK(g.value_at(x, 4).lattice[0] == 1);
    CHECK(g.sup_norm() == doctest::Approx(1.0));
}

TEST_CASE("missing or inadmissible table entries are rejected") {
    auto ts = golden();
    GroupSpec spec{1, 1};
    std::vector<std::pair<Word, GroupElement>> missing;
    missing.emplace_back(Word{0}, zel(spec, 0));
    CHECK_THROWS_AS(Cocycle(ts, spec, 1, missing), Error);

    std::vector<std::pair<Word, GroupElement>> bad;
    bad.emplace_back(Word{0}, zel(spec, 0));
    bad.emplace_back(Word{1}, zel(spec, 1));
    bad.emplace_back(Word{1, 1}, zel(spec, 7));
    CHECK_THROWS_AS(Cocycle(ts, spec, 1, bad), Error);
}

TEST_CASE("birkhoff sums add up literally") {
    auto ts = golden();
    Cocycle f = first_symbol(ts);
    Point x = Point::exact(ts, {0, 1, 0, 1, 0, 0}, {1, 0});
    for (std::int64_t n = 0; n <= 30; ++n) {
        std::int64_t expect = 0;
        for (std::int64_t i = 1; i <= n; ++i) expect += x.at(i);
        CHECK(birkhoff_sum(f, x, n).lattice[0] == expect);
    }
}

TEST_CASE("transfer function against the literal series") {
    for (auto ts : {full2(), golden()}) {
        Cocycle f = first_symbol(ts);
        Point x = Point::exact(ts, {0, 0, 1, 0, 1}, {0});
        Point y = successor(x);
        GroupElement direct = psi(f, x, y);
        CHECK(direct.lattice[0] == psi_oracle(f, x, y, 64).lattice[0]);
        CHECK(psi_from(f, x, y, 32).lattice[0] == direct.lattice[0]);
        // antisymmetry
        CHECK(psi(f, y, x).lattice[0] == -direct.lattice[0]);
        // skew additivity through an intermediate point
        Point z = successor(y);
        CHECK(psi(f, x, z).lattice[0] == direct.lattice[0] + psi(f, y, z).lattice[0]);
    }
}

TEST_CASE("transfer function demands tail equivalence") {
    auto ts = full2();
    Cocycle f = first_symbol(ts);
    Point x = Point::exact(ts, {}, {0, 1});
    Point y = Point::exact(ts, {}, {1, 0});
    CHECK_THROWS_AS(psi(f, x, y), NotTailEquivalentError);
}

TEST_CASE("one step of the odometer moves the sum by two minus the carry") {
    auto ts = full2();
    Cocycle f = first_symbol(ts);
    Point x = Point::exact(ts, {}, {0});
    for (int step = 0; step < 200; ++step) {
        SuccessorResult r = successor_with_depth(x);
        GroupElement move = phi_step(f, x);
        CHECK(move.lattice[0] == 2 - r.carry_depth);
        x = r.point;
    }
}

TEST_CASE("skew product steps accumulate the right sums") {
    auto ts = golden();
    Cocycle f = first_symbol(ts);
    SkewState s{Point::exact(ts, {0, 0, 1}, {0}), GroupElement::zero(f.spec())};
    GroupElement acc = GroupElement::zero(f.spec());
    Point cur = s.base;
    for (int k = 0; k < 100; ++k) {
        acc.add(phi_step(f, cur));
        s = skew_step(f, s);
        cur = successor(cur);
        CHECK(s.position.lattice[0] == acc.lattice[0]);
        CHECK(s.base.at(1) == cur.at(1));
    }

    SkewState t{Point::exact(ts, {0, 1, 0, 0, 1, 0}, {0}), GroupElement::zero(f.spec())};
    std::int64_t sum = 0;
    for (int k = 0; k < 5; ++k) {
        sum += t.base.at(1);
        t = shift_skew_step(f, t);
    }
    CHECK(t.position.lattice[0] == sum);
}

TEST_CASE("span report: full lattice for the first-symbol observable") {
    for (auto ts : {full2(), golden()}) {
        Cocycle f = first_symbol(ts);
        GroupSpanReport rep = group_span(f, 6);
        CHECK(rep.full_rank);
        CHECK(rep.lattice_full);
        CHECK(rep.degree == 1);
        REQUIRE(rep.g_lattice_basis.size() == 1);
        CHECK(rep.g_lattice_basis[0] == std::vector<std::int64_t>{1});
        CHECK(rep.periodic_points_used > 0);
    }
}

TEST_CASE("span report: even-valued observable generates the even lattice") {
    auto ts = full2();
    GroupSpec spec{1, 1};
    std::vector<std::pair<Word, GroupElement>> entries;
    entries.emplace_back(Word{0}, zel(spec, 0));
    entries.emplace_back(Word{1}, zel(spec, 2));
    Cocycle f(ts, spec, 1, entries);
    GroupSpanReport rep = group_span(f, 6);
    CHECK_FALSE(rep.lattice_full);
    CHECK_FALSE(rep.full_rank);
    REQUIRE(rep.g_lattice_basis.size() == 1);
    CHECK(rep.g_lattice_basis[0] == std::vector<std::int64_t>{2});
}

TEST_CASE("span report: diagonal embedding is rank deficient") {
    auto ts = full2();
    GroupSpec spec{2, 2};
    std::vector<std::pair<Word, GroupElement>> entries;
    GroupElement g0 = GroupElement::zero(spec);
    GroupElement g1 = GroupElement::zero(spec);
    g1.lattice[0] = 1;
    g1.lattice[1] = 1;
    entries.emplace_back(Word{0}, g0);
    entries.emplace_back(Word{1}, g1);
    Cocycle f(ts, spec, 1, entries);
    GroupSpanReport rep = group_span(f, 6);
    CHECK(rep.degree == 1);
    CHECK_FALSE(rep.full_rank);
}

TEST_CASE("symbol count observable") {
    auto ts = std::make_shared<TransitionSystem>(validate_tms({{0, 1, 1}, {1, 0, 1}, {1, 1, 0}}));
    Cocycle f = exchangeability_cocycle(ts);
    CHECK(f.range() == 1);
    CHECK(f.spec().lattice_rank == 2);
    CHECK(f.spec().dimension == 2);
    CHECK(f.value({0}).lattice == std::vector<std::int64_t>{0, 0});
    CHECK(f.value({1}).lattice == std::vector<std::int64_t>{1, 0});
    CHECK(f.value({2}).lattice == std::vector<std::int64_t>{0, 1});
}

TEST_CASE("almost onto detection") {
    CHECK(almost_onto(*full2()));
    CHECK(almost_onto(*golden()));
    CHECK(almost_onto(validate_tms({{0, 1, 1}, {1, 0, 1}, {1, 1, 0}})));
    // two blocks that never share an out-neighbour
    CHECK_FALSE(almost_onto(
        validate_tms({{1, 1, 0, 0}, {1, 1, 0, 0}, {0, 0, 1, 1}, {0, 0, 1, 1}})));
}

TEST_CASE("observable mean under the invariant measure") {
    auto ts = golden();
    MeasurePair m = make_measures(ts);
    Cocycle f = first_symbol(ts);
    auto mean = f.mean(m);
    REQUIRE(mean.size() == 1);
    CHECK(mean[0] == doctest::Approx(m.mu_cylinder({1})).epsilon(1e-13));
}
