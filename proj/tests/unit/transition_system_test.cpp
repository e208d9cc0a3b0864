#include <numeric>
#include <vector>

#include "doctest.h"
#include "rwadic/errors.hpp"
#include "rwadic/transition_system.hpp"

using namespace rwadic;

namespace {

using Mat = std::vector<std::vector<int>>;

const Mat kFull2{{1, 1}, {1, 1}};
const Mat kGolden{{1, 1}, {1, 0}};
const Mat kRing3{{0, 1, 1}, {1, 0, 1}, {1, 1, 0}};
const Mat kCycle3{{0, 1, 0}, {0, 0, 1}, {1, 0, 0}};

// reachability oracle: positivity of powers by plain boolean products
Mat bool_product(const Mat& a, const Mat& b) {
    const std::size_t d = a.size();
    Mat out(d, std::vector<int>(d, 0));
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t k = 0; k < d; ++k)
            if (a[i][k])
                for (std::size_t j = 0; j < d; ++j)
                    if (b[k][j]) out[i][j] = 1;
    return out;
}

bool all_positive(const Mat& a) {
    for (const auto& row : a)
        for (int v : row)
            if (!v) return false;
    return true;
}

bool primitive_oracle(const Mat& a) {
    const int d = static_cast<int>(a.size());
    const int wielandt = (d - 1) * (d - 1) + 1;
    Mat p = a;
    for (int k = 1; k <= wielandt; ++k) {
        if (all_positive(p)) return true;
        p = bool_product(p, a);
    }
    return false;
}

bool irreducible_oracle(const Mat& a) {
    const std::size_t d = a.size();
    Mat reach = a;
    Mat p = a;
    for (std::size_t k = 1; k < d; ++k) {
        p = bool_product(p, a);
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) reach[i][j] |= p[i][j];
    }
    return all_positive(reach);
}

int period_oracle(const Mat& a) {
    // gcd of k <= 3 d^2 with (A^k)_{00} > 0
    Mat p = a;
    int g = 0;
    const int cap = static_cast<int>(3 * a.size() * a.size());
    for (int k = 1; k <= cap; ++k) {
        if (p[0][0]) g = std::gcd(g, k);
        p = bool_product(p, a);
    }
    return g;
}

}  // namespace

TEST_CASE("validation rejects empty rows and columns") {
    CHECK_THROWS_AS(validate_tms({{0, 0}, {1, 1}}), EmptyRowOrColumnError);
    CHECK_THROWS_AS(validate_tms({{1, 0}, {1, 0}}), EmptyRowOrColumnError);
    CHECK_THROWS_AS(validate_tms({{0}}), EmptyRowOrColumnError);
    CHECK_NOTHROW(validate_tms(kGolden));
}

TEST_CASE("irreducibility, primitivity, period against reachability oracles") {
    const Mat cases[] = {kFull2,
                         kGolden,
                         kRing3,
                         kCycle3,
                         {{1, 1}, {0, 1}},
                         {{0, 1, 1}, {1, 0, 0}, {1, 0, 0}},
                         {{0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}, {1, 1, 0, 0}}};
    for (const Mat& a : cases) {
        TransitionSystem ts = validate_tms(a);
        CAPTURE(ts.describe());
        CHECK(ts.irreducible() == irreducible_oracle(a));
        CHECK(ts.primitive() == primitive_oracle(a));
        if (ts.irreducible()) CHECK(ts.period() == period_oracle(a));
    }
}

TEST_CASE("known periods") {
    CHECK(validate_tms(kFull2).period() == 1);
    CHECK(validate_tms(kGolden).period() == 1);
    CHECK(validate_tms(kCycle3).period() == 3);
    CHECK(validate_tms({{0, 1}, {1, 0}}).period() == 2);
    CHECK_FALSE(validate_tms(kCycle3).primitive());
    CHECK_FALSE(validate_tms({{0, 1}, {1, 0}}).primitive());
}

TEST_CASE("phi bounds and neighbour moves match the matrix") {
    for (const Mat& a : {kFull2, kGolden, kRing3}) {
        TransitionSystem ts = validate_tms(a);
        const int d = ts.alphabet_size();
        for (Symbol s = 0; s < d; ++s) {
            Symbol hi = -1, lo = -1;
            for (Symbol y = 0; y < d; ++y)
                if (ts.allowed(y, s)) {
                    hi = y;
                    if (lo < 0) lo = y;
                }
            CHECK(ts.phi_plus(s) == hi);
            CHECK(ts.phi_minus(s) == lo);
            for (Symbol from = 0; from < d; ++from) {
                std::optional<Symbol> up, down;
                for (Symbol y = from + 1; y < d; ++y)
                    if (ts.allowed(y, s)) {
                        up = y;
                        break;
                    }
                for (Symbol y = from - 1; y >= 0; --y)
                    if (ts.allowed(y, s)) {
                        down = y;
                        break;
                    }
                CHECK(ts.smallest_allowed_above(from, s) == up);
                CHECK(ts.largest_allowed_below(from, s) == down);
            }
        }
    }
}

TEST_CASE("golden mean phi values") {
    TransitionSystem ts = validate_tms(kGolden);
    CHECK(ts.phi_plus(0) == 1);
    CHECK(ts.phi_plus(1) == 0);
    CHECK(ts.phi_minus(0) == 0);
    CHECK(ts.phi_minus(1) == 0);
}

TEST_CASE("word admissibility") {
    TransitionSystem ts = validate_tms(kGolden);
    CHECK(ts.word_admissible({0, 1, 0, 0, 1}));
    CHECK_FALSE(ts.word_admissible({0, 1, 1}));
    CHECK(ts.word_admissible({}));
    CHECK(ts.word_admissible({1}));
    CHECK_THROWS_AS(ts.require_admissible({1, 1}), InadmissibleWordError);
}

TEST_CASE("functional orbit splits tail and cycle") {
    FunctionalOrbit o = functional_orbit({1, 0}, 0);  // 0 -> 1 -> 0
    CHECK(o.tail.empty());
    CHECK(o.cycle == std::vector<Symbol>{0, 1});

    o = functional_orbit({1, 2, 1}, 0);  // 0 -> 1 -> 2 -> 1
    CHECK(o.tail == std::vector<Symbol>{0});
    CHECK(o.cycle == std::vector<Symbol>{1, 2});

    o = functional_orbit({0, 0, 0}, 2);  // 2 -> 0 -> 0
    CHECK(o.tail == std::vector<Symbol>{2});
    CHECK(o.cycle == std::vector<Symbol>{0});
}

TEST_CASE("levelled diagram shape checks") {
    LevelledDiagram good;
    good.alphabet_sizes = {2, 3, 2};
    good.matrices = {{{1, 0, 1}, {0, 1, 1}}, {{1, 0}, {1, 1}, {0, 1}}};
    CHECK_NOTHROW(good.validate());

    LevelledDiagram bad = good;
    bad.matrices[0][0] = {1, 0};  // wrong width
    CHECK_THROWS_AS(bad.validate(), Error);

    LevelledDiagram bad2 = good;
    bad2.matrices[1][2] = {0, 2};  // not 0/1
    CHECK_THROWS_AS(bad2.validate(), Error);
}
