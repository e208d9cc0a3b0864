#include <cmath>
#include <complex>
#include <functional>
#include <map>
#include <memory>
#include <vector>

#include "doctest.h"
#include "rwadic/cocycle.hpp"
#include "rwadic/errors.hpp"
#include "rwadic/measures.hpp"
#include "rwadic/spectral.hpp"

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

Cocycle first_symbol(std::shared_ptr<const TransitionSystem> ts) {
    GroupSpec spec{1, 1};
    std::vector<std::pair<Word, GroupElement>> entries;
    for (Symbol a = 0; a < ts->alphabet_size(); ++a) entries.emplace_back(Word{a}, zel(spec, a));
    return Cocycle(std::move(ts), spec, 1, std::move(entries));
}

void for_each_word(const TransitionSystem& ts, int len,
                   const std::function<void(const Word&)>& fn) {
    Word w(static_cast<std::size_t>(len), 0);
    std::function<void(int)> rec = [&](int pos) {
        if (pos == len) {
            fn(w);
            return;
        }
        for (Symbol b = 0; b < ts.alphabet_size(); ++b) {
            if (pos > 0 && !ts.allowed(w[static_cast<std::size_t>(pos - 1)], b)) continue;
            w[static_cast<std::size_t>(pos)] = b;
            rec(pos + 1);
        }
    };
    rec(0);
}

BigInt binom(int n, int k) {
    BigInt r = 1;
    for (int i = 0; i < k; ++i) {
        r *= n - i;
        r /= i + 1;
    }
    return r;
}

}  // namespace

TEST_CASE("transfer data on the full shift") {
    auto ts = full2();
    MeasurePair m = make_measures(ts);
    Cocycle f = first_symbol(ts);
    TransferData td = build_transfer(f, m);
    REQUIRE(td.states.size() == 2);
    CHECK(td.states[0] == Word{0});
    CHECK(td.states[1] == Word{1});
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            CHECK(td.transfer(i, j) == doctest::Approx(0.5).epsilon(1e-13));
            CHECK(td.forward(i, j) == doctest::Approx(0.5).epsilon(1e-13));
        }
    CHECK(td.stationary(0) == doctest::Approx(0.5).epsilon(1e-13));
    CHECK(td.f_mean[0] == doctest::Approx(0.5).epsilon(1e-13));
    CHECK(td.f_sup == doctest::Approx(1.0));
}

TEST_CASE("row stochasticity on a range-2 observable") {
    auto ts = golden();
    MeasurePair m = make_measures(ts);
    GroupSpec spec{1, 1};
    std::vector<std::pair<Word, GroupElement>> entries;
    entries.emplace_back(Word{0, 0}, zel(spec, 0));
    entries.emplace_back(Word{0, 1}, zel(spec, 1));
    entries.emplace_back(Word{1, 0}, zel(spec, 0));
    Cocycle f(ts, spec, 2, entries);
    TransferData td = build_transfer(f, m);
    REQUIRE(td.states.size() == 3);
    for (int i = 0; i < 3; ++i) {
        double row_t = 0.0, row_f = 0.0;
        for (int j = 0; j < 3; ++j) {
            row_t += td.transfer(i, j);
            row_f += td.forward(i, j);
            CHECK(td.transfer(i, j) >= 0.0);
        }
        CHECK(row_t == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(row_f == doctest::Approx(1.0).epsilon(1e-12));
    }
    double mass = 0.0;
    for (int i = 0; i < 3; ++i) mass += td.stationary(i);
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("twisted eigenvalue closed form on the full shift") {
    auto ts = full2();
    MeasurePair m = make_measures(ts);
    Cocycle f = first_symbol(ts);
    TransferData td = build_transfer(f, m);
    for (double t = -0.45; t <= 0.45; t += 0.05) {
        const std::complex<double> got = nagaev_lambda(td, {t});
        const std::complex<double> expect = 0.5 * (1.0 + std::exp(std::complex<double>(0.0, t)));
        CHECK(std::abs(got - expect) <= 1e-12);
    }
    CHECK(std::abs(nagaev_lambda(td, {0.0}) - std::complex<double>(1.0, 0.0)) <= 1e-14);
    // centered variant only rotates by the mean phase
    for (double t : {0.1, 0.3, -0.2}) {
        const std::complex<double> raw = nagaev_lambda(td, {t}, false);
        const std::complex<double> cen = nagaev_lambda(td, {t}, true);
        CHECK(std::abs(std::abs(raw) - std::abs(cen)) <= 1e-13);
        CHECK(std::abs(cen - raw * std::exp(std::complex<double>(0.0, -t * 0.5))) <= 1e-12);
    }
    CHECK_THROWS_AS(nagaev_lambda(td, {0.8}), RadiusExceededError);
}

TEST_CASE("eigenvalue branch ambiguity is detected") {
    // golden mean at t = pi: the two branches are (1 +- i sqrt 3) / (2 lambda),
    // equal modulus, reachable by widening the radius deliberately
    auto ts = golden();
    MeasurePair m = make_measures(ts);
    Cocycle f = first_symbol(ts);
    TransferData td = build_transfer(f, m);
    CHECK_THROWS_AS(nagaev_lambda(td, {M_PI}, false, 4.0), EigenvalueCollisionError);
    CHECK_NOTHROW(nagaev_lambda(td, {0.4}));
}

TEST_CASE("covariance by series and by derivatives: known value and cross-route") {
    auto ts = full2();
    MeasurePair m = make_measures(ts);
    Cocycle f = first_symbol(ts);
    TransferData td = build_transfer(f, m);
    CovarianceData cov = gamma_series(td);
    CHECK(cov.positive_definite);
    CHECK(cov.gamma(0, 0) == doctest::Approx(0.25).epsilon(1e-10));
    CHECK(cov.det == doctest::Approx(0.25).epsilon(1e-10));
    CHECK(cov.mean[0] == doctest::Approx(0.5).epsilon(1e-13));
    Eigen::MatrixXd hess = gamma_hessian(td);
    CHECK(std::abs(hess(0, 0) - cov.gamma(0, 0)) < 1e-8);
    CHECK(cov.quadratic({1.0}) == doctest::Approx(4.0).epsilon(1e-9));

    auto g = golden();
    MeasurePair mg = make_measures(g);
    Cocycle fg = first_symbol(g);
    TransferData tdg = build_transfer(fg, mg);
    CovarianceData covg = gamma_series(tdg);
    Eigen::MatrixXd hg = gamma_hessian(tdg);
    CHECK(std::abs(hg(0, 0) - covg.gamma(0, 0)) < 1e-8);
    CHECK(covg.positive_definite);
    CHECK(covg.tail_bound < 1e-13);
}

TEST_CASE("degenerate observable is flagged") {
    auto ts = full2();
    MeasurePair m = make_measures(ts);
    GroupSpec spec{1, 1};
    std::vector<std::pair<Word, GroupElement>> entries;
    entries.emplace_back(Word{0}, zel(spec, 0));
    entries.emplace_back(Word{1}, zel(spec, 0));
    Cocycle f(ts, spec, 1, entries);
    TransferData td = build_transfer(f, m);
    CovarianceData cov = gamma_series(td);
    CHECK_FALSE(cov.positive_definite);
    CHECK_THROWS_AS(cov.require_positive(), DegenerateGammaError);
}

TEST_CASE("exact distribution is binomial on the full shift") {
    auto ts = full2();
    MeasurePair m = make_measures(ts);
    Cocycle f = first_symbol(ts);
    for (std::int64_t n : {1, 2, 5, 10}) {
        auto dist = exact_fn_distribution(f, m, n);
        REQUIRE(dist.size() == static_cast<std::size_t>(n + 1));
        double total = 0.0;
        for (int k = 0; k <= n; ++k) {
            const double expect =
                binom(static_cast<int>(n), k).convert_to<double>() * std::pow(2.0, -double(n));
            const double got = dist.at({k});
            CHECK(got == doctest::Approx(expect).epsilon(1e-12));
            total += got;
        }
        CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("exact distribution against brute enumeration on the golden mean") {
    auto ts = golden();
    MeasurePair m = make_measures(ts);
    Cocycle f = first_symbol(ts);
    for (std::int64_t n : {1, 3, 6, 9}) {
        std::map<std::vector<std::int64_t>, double> oracle;
        for_each_word(*ts, static_cast<int>(n), [&](const Word& w) {
            std::int64_t s = 0;
            for (Symbol a : w) s += a;
            oracle[{s}] += m.mu_cylinder(w);
        });
        auto dist = exact_fn_distribution(f, m, n);
        REQUIRE(dist.size() == oracle.size());
        for (const auto& [k, v] : oracle) CHECK(dist.at(k) == doctest::Approx(v).epsilon(1e-12));
    }
}

TEST_CASE("fiber counts against brute enumeration") {
    for (auto ts : {full2(), golden()}) {
        Cocycle f = first_symbol(ts);
        for (std::int64_t n : {1, 4, 7}) {
            for (Symbol c = 0; c < ts->alphabet_size(); ++c) {
                std::map<std::vector<std::int64_t>, BigInt> oracle;
                for_each_word(*ts, static_cast<int>(n), [&](const Word& w) {
                    if (!ts->allowed(w.back(), c)) return;
                    std::int64_t s = 0;
                    for (Symbol a : w) s += a;
                    oracle[{s}] += 1;
                });
                auto counts = fiber_fn_counts(f, n, {c});
                REQUIRE(counts.size() == oracle.size());
                for (const auto& [k, v] : oracle) CHECK(counts.at(k) == v);
            }
        }
    }
}

TEST_CASE("fiber counts with an overlapping window") {
    auto ts = full2();
    GroupSpec spec{1, 1};
    std::vector<std::pair<Word, GroupElement>> entries;
    entries.emplace_back(Word{0, 0}, zel(spec, 0));
    entries.emplace_back(Word{0, 1}, zel(spec, 1));
    entries.emplace_back(Word{1, 0}, zel(spec, 0));
    entries.emplace_back(Word{1, 1}, zel(spec, 0));
    Cocycle f(ts, spec, 2, entries);
    const std::int64_t n = 6;
    for (Symbol c : {0, 1}) {
        std::map<std::vector<std::int64_t>, BigInt> oracle;
        for_each_word(*ts, static_cast<int>(n), [&](const Word& w) {
            std::int64_t s = 0;
            for (std::size_t p = 0; p + 1 < w.size(); ++p)
                s += (w[p] == 0 && w[p + 1] == 1) ? 1 : 0;
            if (w.back() == 0 && c == 1) ++s;
            oracle[{s}] += 1;
        });
        auto counts = fiber_fn_counts(f, n, {c});
        REQUIRE(counts.size() == oracle.size());
        for (const auto& [k, v] : oracle) CHECK(counts.at(k) == v);
    }
}

TEST_CASE("dp budget is enforced") {
    auto ts = full2();
    MeasurePair m = make_measures(ts);
    Cocycle f = first_symbol(ts);
    CHECK_THROWS_AS(exact_fn_distribution(f, m, 40, 4), BudgetExceededError);
}

TEST_CASE("distribution checks report coherent rows") {
    auto ts = full2();
    MeasurePair m = make_measures(ts);
    Cocycle f = first_symbol(ts);
    TransferData td = build_transfer(f, m);
    CovarianceData cov = gamma_series(td);

    CheckReport clt = clt_check(f, m, cov, {8, 32}, {{{0.0, 1.0}}, {{-1.0, 0.0}}});
    REQUIRE(clt.rows.size() == 4);
    REQUIRE(clt.per_n_error.size() == 2);
    for (const CheckRow& row : clt.rows) {
        CHECK(row.statistic >= 0.0);
        CHECK(row.statistic <= 1.0);
        CHECK(row.abs_err == doctest::Approx(std::abs(row.statistic - row.reference)));
    }

    CheckReport llt = llt_check(f, m, cov, {16, 64}, {{0.0}});
    REQUIRE(llt.rows.size() == 2);
    // statistic = sqrt(n) P(S_n = n/2) exactly
    const double p16 = binom(16, 8).convert_to<double>() * std::pow(2.0, -16.0);
    CHECK(llt.rows[0].statistic == doctest::Approx(4.0 * p16).epsilon(1e-12));
    const double ref = 1.0 / std::sqrt(2.0 * M_PI * 0.25);
    CHECK(llt.rows[0].reference == doctest::Approx(ref).epsilon(1e-12));
    CHECK(llt.per_n_error[1] < llt.per_n_error[0]);
}
