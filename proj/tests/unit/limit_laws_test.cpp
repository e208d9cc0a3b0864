#include <cmath>
#include <vector>

#include "doctest.h"
#include "rwadic/errors.hpp"
#include "rwadic/limit_laws.hpp"

using namespace rwadic;

namespace {

double std_normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

// chi-squared cdf closed forms for 1 and 2 degrees
double chi2_cdf(int d, double x) {
    if (x <= 0.0) return 0.0;
    if (d == 1) return 2.0 * std_normal_cdf(std::sqrt(x)) - 1.0;
    return 1.0 - std::exp(-0.5 * x);  // d == 2
}

}  // namespace

TEST_CASE("exp variant cdf against the chi-squared closed forms") {
    for (int d : {1, 2}) {
        LimitLaw law = LimitLaw::y_law(d);
        const double top = std::pow(2.0, 0.5 * d);
        CHECK(law.support_min() == 0.0);
        CHECK(law.support_max() == doctest::Approx(top));
        CHECK(law.cdf(top) == doctest::Approx(1.0));
        for (double y = 0.05; y < top; y += 0.1) {
            // P(2^{d/2} e^{-X/2} <= y) = P(X >= -2 log(y 2^{-d/2}))
            const double expect = 1.0 - chi2_cdf(d, -2.0 * std::log(y / top));
            CHECK(law.cdf(y) == doctest::Approx(expect).epsilon(1e-10));
        }
    }
}

TEST_CASE("inverse variant cdf: explicit forms") {
    LimitLaw w2 = LimitLaw::w_law(2);
    // P(e^{X/2} <= w) with X chi-squared(2): 1 - 1/w exactly
    for (double w = 1.0; w < 50.0; w += 0.7)
        CHECK(w2.cdf(w) == doctest::Approx(1.0 - 1.0 / w).epsilon(1e-12));

    LimitLaw w1 = LimitLaw::w_law(1);
    CHECK(w1.support_min() == doctest::Approx(1.0));
    CHECK(w1.cdf(1.0) == doctest::Approx(0.0));
    for (double w = 1.1; w < 20.0; w += 0.5) {
        const double expect = chi2_cdf(1, 2.0 * std::log(w));
        CHECK(w1.cdf(w) == doctest::Approx(expect).epsilon(1e-10));
    }
    CHECK(std::isinf(w1.support_max()));
}

TEST_CASE("support is enforced, clamped cdf is total") {
    LimitLaw y1 = LimitLaw::y_law(1);
    CHECK_THROWS_AS(y1.cdf(-0.1), OutOfSupportError);
    CHECK_THROWS_AS(y1.cdf(2.0), OutOfSupportError);
    CHECK(y1.cdf_clamped(-0.1) == 0.0);
    CHECK(y1.cdf_clamped(25.0) == 1.0);

    LimitLaw w1 = LimitLaw::w_law(1);
    CHECK_THROWS_AS(w1.cdf(0.5), OutOfSupportError);
    CHECK(w1.cdf_clamped(0.5) == 0.0);
}

TEST_CASE("sampling is deterministic and matches the law") {
    LimitLaw y1 = LimitLaw::y_law(1);
    auto a = y1.sample(123, 4000);
    auto b = y1.sample(123, 4000);
    CHECK(a == b);
    auto c = y1.sample(124, 4000);
    CHECK(a != c);

    EmpiricalDistribution emp(a);
    CHECK(emp.size() == 4000);
    CHECK(emp.ks_distance(y1) < 0.03);
    // mean of the exp variant is 1 by construction
    CHECK(std::abs(emp.mean() - 1.0) < 0.05);
    // and the samples are nothing like the inverse law
    CHECK(emp.ks_distance(LimitLaw::w_law(1)) > 0.4);
}

TEST_CASE("two-sided ks against a hand-computed case") {
    // samples 1, 2, 3 against U(0, 4): max over jump sides
    EmpiricalDistribution emp({2.0, 1.0, 3.0});
    auto cdf = [](double x) { return std::min(1.0, std::max(0.0, x / 4.0)); };
    // at x=3: F_n jumps 2/3 -> 1, F = 3/4; sup side = |2/3 - 3/4| and |1 - 3/4|
    CHECK(emp.ks_distance(cdf) == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(emp.samples().front() == 1.0);
    CHECK(emp.samples().back() == 3.0);
    CHECK(emp.mean() == doctest::Approx(2.0));
}

TEST_CASE("sample means: infinite-mean law keeps growing, finite-mean law settles") {
    LimitLaw w1 = LimitLaw::w_law(1);
    auto s = w1.sample(5, 20000);
    double lo = 0.0;
    for (double v : s) {
        CHECK(v >= 1.0);
        lo = std::max(lo, v);
    }
    CHECK(lo > 100.0);  // heavy tail shows up at this size
}
