#include "rwadic/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <exception>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "rwadic/adic.hpp"
#include "rwadic/errors.hpp"

namespace rwadic {
namespace {

constexpr std::int64_t kWalkScanBudget = std::int64_t{1} << 20;
constexpr double kTwoPi = 6.283185307179586476925286766559;

double median(std::vector<double> v) {
    if (v.empty()) return 0.0;
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    if (n % 2 == 1) return v[n / 2];
    return 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

bool strictly_decreasing(const std::vector<double>& v) {
    for (std::size_t i = 1; i < v.size(); ++i)
        if (!(v[i] < v[i - 1])) return false;
    return true;
}

void check_n_list(const std::vector<std::int64_t>& n_list) {
    if (n_list.empty()) throw ConfigError("empty n list");
    if (n_list.front() < 1) throw ConfigError("n values must be positive");
    for (std::size_t i = 1; i < n_list.size(); ++i)
        if (n_list[i] <= n_list[i - 1]) throw ConfigError("n list must be strictly increasing");
}

// Static partition over [0, count): worker w gets one contiguous chunk.
// Bodies write to disjoint preallocated slots, so the thread count cannot
// change any output.
void parallel_over(std::size_t count, int threads, const std::function<void(std::size_t)>& body) {
    const int t = std::max(1, threads);
    if (t == 1 || count < 2) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    const std::size_t chunk = (count + static_cast<std::size_t>(t) - 1) / static_cast<std::size_t>(t);
    std::mutex mu;
    std::exception_ptr first_error;
    std::vector<std::thread> pool;
    for (int w = 0; w < t; ++w) {
        const std::size_t lo = static_cast<std::size_t>(w) * chunk;
        const std::size_t hi = std::min(count, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&, lo, hi] {
            try {
                for (std::size_t i = lo; i < hi; ++i) body(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(mu);
                if (!first_error) first_error = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace

std::int64_t ell(double lambda, std::int64_t n) {
    if (!(lambda > 1.0)) throw Error("growth rate must exceed 1");
    if (n < 1) throw Error("ceiling logarithm needs n >= 1");
    // safe while n stays well below 1/tolerance = 1e12
    const double target = static_cast<double>(n) * (1.0 - 1e-12);
    double p = 1.0;
    std::int64_t l = 0;
    while (p < target) {
        p *= lambda;
        if (++l > 4000) throw NoConvergenceError("ceiling logarithm did not terminate");
    }
    return l;
}

double return_sequence(const PerronData& pd, const CovarianceData& cov, std::int64_t n) {
    if (n < 2) throw Error("return sequence needs n >= 2");
    cov.require_positive();
    const int D = static_cast<int>(cov.gamma.rows());
    const double l = static_cast<double>(ell(pd.lambda, n));
    const double c = std::pow(2.0 * kTwoPi, 0.5 * D) * std::sqrt(cov.det);
    return static_cast<double>(n) / (std::pow(l, 0.5 * D) * c);
}

std::int64_t return_inverse(const PerronData& pd, const CovarianceData& cov, double y) {
    cov.require_positive();
    if (!(y > 0.0) || !std::isfinite(y)) throw Error("inverse return target must be positive and finite");
    if (return_sequence(pd, cov, 2) >= y) return 2;
    const int D = static_cast<int>(cov.gamma.rows());
    const double c = std::pow(2.0 * kTwoPi, 0.5 * D) * std::sqrt(cov.det);
    double plo = 1.0;  // lambda^{l-1}
    for (int l = 1; l <= 4000; ++l) {
        const double phi = plo * pd.lambda;
        // on the plateau with ceiling value l, a(n) >= y iff n >= t
        const double t = y * c * std::pow(static_cast<double>(l), 0.5 * D);
        if (t <= phi + 1.0) {
            if (phi > 8.9e18) throw IntegerOverflowError("inverse return time exceeds the 64-bit range");
            const std::int64_t lo = static_cast<std::int64_t>(std::floor(plo)) + 1;
            const std::int64_t hi = static_cast<std::int64_t>(std::floor(phi));
            std::int64_t cand = std::max<std::int64_t>(
                {std::int64_t{2}, lo, static_cast<std::int64_t>(std::ceil(t))});
            if (cand <= hi) {
                // settle boundary rounding against the real sequence
                while (cand > 2 && return_sequence(pd, cov, cand - 1) >= y) --cand;
                while (return_sequence(pd, cov, cand) < y) ++cand;
                return cand;
            }
        }
        plo = phi;
    }
    throw NoConvergenceError("no plateau reached the inverse return target");
}

double return_inverse_w(const PerronData& pd, const CovarianceData& cov, double n) {
    const int D = static_cast<int>(cov.gamma.rows());
    const double m = static_cast<double>(return_inverse(pd, cov, n));
    return std::pow(2.0, -0.5 * D) * m;
}

OrbitWalker::OrbitWalker(std::shared_ptr<const TransitionSystem> ts, Point start)
    : ts_(std::move(ts)), source_(std::move(start)) {}

OrbitWalker::OrbitWalker(const Cocycle& f, Point start)
    : ts_(f.system_ptr()),
      f_(&f),
      source_(std::move(start)),
      pos_(GroupElement::zero(f.spec())) {}

void OrbitWalker::ensure(std::int64_t i) {
    while (static_cast<std::int64_t>(buf_.size()) < i)
        buf_.push_back(source_.at(static_cast<std::int64_t>(buf_.size()) + 1));
}

const GroupElement& OrbitWalker::position() const {
    if (!f_) throw Error("walker was built without a cocycle");
    return pos_;
}

Symbol OrbitWalker::coordinate(std::int64_t i) {
    if (i < 1) throw Error("coordinates are one-indexed");
    ensure(i);
    return buf_[static_cast<std::size_t>(i - 1)];
}

Point OrbitWalker::current() const {
    if (buf_.empty()) return source_;
    Word head(buf_.begin(), buf_.end());
    return prepend(head, source_.shifted(static_cast<std::int64_t>(head.size())));
}

void OrbitWalker::step() {
    std::int64_t j = 1;
    std::optional<Symbol> s;
    for (;; ++j) {
        if (j > kWalkScanBudget)
            throw MaximalPointError("no movable coordinate within the scan budget");
        ensure(j + 1);
        s = ts_->smallest_allowed_above(buf_[static_cast<std::size_t>(j - 1)],
                                        buf_[static_cast<std::size_t>(j)]);
        if (s) break;
    }
    if (f_) {
        const int r = f_->range();
        const std::uint64_t d = static_cast<std::uint64_t>(ts_->alphabet_size());
        ensure(j + r - 1);  // windows 1..j read coordinates up to j + r - 1
        const auto window_code = [&](std::int64_t p) {
            std::uint64_t code = 0, mult = 1;
            for (int q = 0; q < r; ++q) {
                code += static_cast<std::uint64_t>(buf_[static_cast<std::size_t>(p - 1 + q)]) * mult;
                mult *= d;
            }
            return code;
        };
        for (std::int64_t p = 1; p <= j; ++p) pos_.sub(f_->value_by_code(window_code(p)));
        buf_[static_cast<std::size_t>(j - 1)] = *s;
        for (std::int64_t i = j - 1; i >= 1; --i)
            buf_[static_cast<std::size_t>(i - 1)] = ts_->phi_minus(buf_[static_cast<std::size_t>(i)]);
        for (std::int64_t p = 1; p <= j; ++p) pos_.add(f_->value_by_code(window_code(p)));
    } else {
        buf_[static_cast<std::size_t>(j - 1)] = *s;
        for (std::int64_t i = j - 1; i >= 1; --i)
            buf_[static_cast<std::size_t>(i - 1)] = ts_->phi_minus(buf_[static_cast<std::size_t>(i)]);
    }
    ++steps_;
}

OccupationSeries simulate_occupation(const Cocycle& f, const Point& x0,
                                     const std::vector<std::int64_t>& checkpoints,
                                     const std::vector<Window>& windows) {
    check_n_list(checkpoints);
    if (windows.empty()) throw ConfigError("need at least one window");
    for (const auto& w : windows)
        if (!(w.spec() == f.spec())) throw GroupMismatchError("window group does not match the cocycle");

    OccupationSeries out;
    out.checkpoints = checkpoints;
    out.counts.assign(checkpoints.size(), {});
    OrbitWalker walker(f, x0);
    std::vector<std::int64_t> counters(windows.size(), 0);
    std::size_t ci = 0;
    for (std::int64_t k = 0;; ++k) {
        const GroupElement& pos = walker.position();
        for (std::size_t wi = 0; wi < windows.size(); ++wi)
            if (windows[wi].contains(pos)) ++counters[wi];
        if (k + 1 == checkpoints[ci]) {
            out.counts[ci] = counters;
            if (++ci == checkpoints.size()) break;
        }
        walker.step();
    }
    return out;
}

namespace {

StarRow star_row(const Cocycle& f, const PerronData& pd, const CovarianceData& cov,
                 const Point& x, std::int64_t n, double R, double mass_norm,
                 std::int64_t occupation) {
    const int D = static_cast<int>(cov.gamma.rows());
    const std::int64_t l = ell(pd.lambda, n);
    std::vector<double> fbar = birkhoff_sum(f, x, l).as_real();
    double norm2 = 0.0;
    for (std::size_t i = 0; i < fbar.size(); ++i) {
        fbar[i] -= static_cast<double>(l) * cov.mean[i];
        norm2 += fbar[i] * fbar[i];
    }
    StarRow row;
    row.n = n;
    row.lhs = std::pow(static_cast<double>(l), 0.5 * D) * static_cast<double>(occupation) /
              static_cast<double>(n);
    row.rhs = mass_norm * std::exp(-cov.quadratic(fbar) / (2.0 * static_cast<double>(l)));
    row.fbar_norm = std::sqrt(norm2 / static_cast<double>(l));
    row.indicator = row.fbar_norm < R ? 1 : 0;
    return row;
}

}  // namespace

StarRow star_check(const Cocycle& f, const PerronData& pd, const CovarianceData& cov,
                   const Point& x, std::int64_t n, double R, const Window& I) {
    cov.require_positive();
    const int D = static_cast<int>(cov.gamma.rows());
    OccupationSeries occ = simulate_occupation(f, x, {n}, {I});
    const double mass_norm = I.haar_mass() / std::sqrt(std::pow(kTwoPi, D) * cov.det);
    return star_row(f, pd, cov, x, n, R, mass_norm, occ.counts[0][0]);
}

StarReport star_trend(const Cocycle& f, const MeasurePair& m, const CovarianceData& cov,
                      const Window& I, double R, const std::vector<std::int64_t>& n_list,
                      std::size_t points, std::uint64_t seed, int threads) {
    check_n_list(n_list);
    if (points == 0) throw ConfigError("need at least one sample point");
    cov.require_positive();
    const PerronData& pd = m.perron_data();
    const int D = static_cast<int>(cov.gamma.rows());
    const double mass_norm = I.haar_mass() / std::sqrt(std::pow(kTwoPi, D) * cov.det);

    StarReport rep;
    rep.rows.assign(points * n_list.size(), StarRow{});
    parallel_over(points, threads, [&](std::size_t pi) {
        Point x = m.sample_nu(seed, pi);
        OccupationSeries occ = simulate_occupation(f, x, n_list, {I});
        for (std::size_t k = 0; k < n_list.size(); ++k) {
            StarRow row = star_row(f, pd, cov, x, n_list[k], R, mass_norm, occ.counts[k][0]);
            row.point_index = pi;
            rep.rows[pi * n_list.size() + k] = row;
        }
    });

    for (std::size_t k = 0; k < n_list.size(); ++k) {
        std::vector<double> errs;
        errs.reserve(points);
        for (std::size_t pi = 0; pi < points; ++pi) {
            const StarRow& row = rep.rows[pi * n_list.size() + k];
            errs.push_back(row.indicator ? std::abs(row.lhs - row.rhs) : 0.0);
        }
        rep.median_err.push_back(median(std::move(errs)));
    }
    rep.decreasing = strictly_decreasing(rep.median_err);
    return rep;
}

TheoremMcResult theorem_mc(const Cocycle& f, const MeasurePair& m, const CovarianceData& cov,
                           const std::vector<Window>& windows, std::size_t orbits,
                           const std::vector<std::int64_t>& n_list, std::uint64_t seed,
                           int threads) {
    check_n_list(n_list);
    if (orbits == 0) throw ConfigError("need at least one orbit");
    if (windows.empty()) throw ConfigError("need at least one window");
    const PerronData& pd = m.perron_data();

    TheoremMcResult res;
    res.n_list = n_list;
    for (std::int64_t n : n_list) res.a_values.push_back(return_sequence(pd, cov, n));
    res.samples.assign(
        n_list.size(),
        std::vector<std::vector<double>>(windows.size(), std::vector<double>(orbits, 0.0)));

    parallel_over(orbits, threads, [&](std::size_t orbit) {
        Point x = m.sample_nu(seed, orbit);
        OccupationSeries occ = simulate_occupation(f, x, n_list, windows);
        for (std::size_t k = 0; k < n_list.size(); ++k)
            for (std::size_t wi = 0; wi < windows.size(); ++wi)
                res.samples[k][wi][orbit] = static_cast<double>(occ.counts[k][wi]) /
                                            (res.a_values[k] * windows[wi].haar_mass());
    });

    const int D = static_cast<int>(cov.gamma.rows());
    const LimitLaw law = LimitLaw::y_law(D);
    res.ks.assign(n_list.size(), std::vector<double>(windows.size(), 0.0));
    res.mean = res.ks;
    for (std::size_t k = 0; k < n_list.size(); ++k)
        for (std::size_t wi = 0; wi < windows.size(); ++wi) {
            EmpiricalDistribution emp(res.samples[k][wi]);
            res.ks[k][wi] = emp.ks_distance(law);
            res.mean[k][wi] = emp.mean();
        }
    return res;
}

ExchangeabilityResult exchangeability_mc(std::shared_ptr<const TransitionSystem> ts,
                                         std::size_t orbits,
                                         const std::vector<std::int64_t>& n_list,
                                         std::uint64_t seed, std::int64_t step_budget,
                                         int threads) {
    check_n_list(n_list);
    if (orbits == 0) throw ConfigError("need at least one orbit");
    if (!almost_onto(*ts))
        throw NotAlmostOntoError(
            "symbol-count positions cannot return to zero: the common-successor graph is disconnected");

    const Cocycle f = exchangeability_cocycle(ts);
    const MeasurePair m = make_measures(ts);
    const TransferData td = build_transfer(f, m);
    const CovarianceData cov = gamma_series(td);
    cov.require_positive();
    const PerronData& pd = m.perron_data();
    const int D = f.spec().dimension;

    ExchangeabilityResult res;
    res.n_list = n_list;
    for (std::int64_t n : n_list)
        res.b_values.push_back(return_inverse_w(pd, cov, static_cast<double>(n)));
    std::int64_t budget = step_budget;
    if (budget <= 0)
        budget = checked_mul(100, return_inverse(pd, cov, static_cast<double>(n_list.back())));

    const std::size_t K = n_list.size();
    std::vector<std::vector<std::int64_t>> steps_at(orbits, std::vector<std::int64_t>(K, -1));
    parallel_over(orbits, threads, [&](std::size_t orbit) {
        Point x = m.sample_nu(seed, orbit);
        OrbitWalker walker(f, x);
        std::int64_t returns = 0;
        std::size_t ci = 0;
        while (ci < K && walker.steps() < budget) {
            walker.step();
            if (walker.position().is_zero()) {
                ++returns;
                if (returns == n_list[ci]) {
                    steps_at[orbit][ci] = walker.steps();
                    ++ci;
                }
            }
        }
    });

    res.samples.assign(K, {});
    res.ks.assign(K, 0.0);
    res.mean.assign(K, 0.0);
    res.censored_fraction.assign(K, 0.0);
    const LimitLaw law = LimitLaw::w_law(D);
    for (std::size_t k = 0; k < K; ++k) {
        std::size_t censored = 0;
        for (std::size_t orbit = 0; orbit < orbits; ++orbit) {
            if (steps_at[orbit][k] < 0) {
                ++censored;
                continue;
            }
            res.samples[k].push_back(static_cast<double>(steps_at[orbit][k]) / res.b_values[k]);
        }
        res.censored_fraction[k] = static_cast<double>(censored) / static_cast<double>(orbits);
        if (!res.samples[k].empty()) {
            EmpiricalDistribution emp(res.samples[k]);
            res.ks[k] = emp.ks_distance(law);
            res.mean[k] = emp.mean();
        }
    }
    return res;
}

UniformReport uniform_convergence_check(const MeasurePair& m, int max_depth,
                                        const std::vector<std::int64_t>& n_list,
                                        std::size_t nu_points, std::size_t adversarial_points,
                                        std::uint64_t seed) {
    check_n_list(n_list);
    if (max_depth < 1) throw ConfigError("cylinder depth must be positive");
    if (nu_points + adversarial_points == 0) throw ConfigError("need at least one sample point");
    auto ts = m.system_ptr();
    const int d = ts->alphabet_size();

    std::uint64_t span = 1;
    for (int i = 0; i < max_depth; ++i) {
        span *= static_cast<std::uint64_t>(d);
        if (span > (std::uint64_t{1} << 22)) throw DepthTooLargeError("too many cylinder codes");
    }

    std::vector<Word> cylinders;
    std::vector<double> target;
    for (int depth = 1; depth <= max_depth; ++depth) {
        Word w(static_cast<std::size_t>(depth), 0);
        std::function<void(int)> rec = [&](int pos) {
            if (pos == depth) {
                cylinders.push_back(w);
                target.push_back(m.nu_cylinder(w));
                return;
            }
            for (Symbol b = 0; b < d; ++b) {
                if (pos > 0 && !ts->allowed(w[static_cast<std::size_t>(pos - 1)], b)) continue;
                w[static_cast<std::size_t>(pos)] = b;
                rec(pos + 1);
            }
        };
        rec(0);
    }

    // codes pack coordinate 1 in the least significant digit, so the codes in
    // a depth-m cylinder are exactly one residue class mod d^m
    std::vector<std::uint64_t> cyl_code(cylinders.size()), cyl_mod(cylinders.size());
    for (std::size_t c = 0; c < cylinders.size(); ++c) {
        std::uint64_t code = 0, mult = 1;
        for (Symbol s : cylinders[c]) {
            code += static_cast<std::uint64_t>(s) * mult;
            mult *= static_cast<std::uint64_t>(d);
        }
        cyl_code[c] = code;
        cyl_mod[c] = mult;
    }

    ExtremePointSet extremes = extreme_points(ts);
    if (adversarial_points > 0 && extremes.maximal.empty())
        throw Error("no maximal points to build adversarial samples from");

    const std::size_t total_points = nu_points + adversarial_points;
    std::vector<std::vector<double>> err(n_list.size(), std::vector<double>(cylinders.size(), 0.0));

    for (std::size_t pi = 0; pi < total_points; ++pi) {
        Point x = [&] {
            if (pi < nu_points) return m.sample_nu(seed, pi);
            const std::size_t j = pi - nu_points;
            const Point& omega = extremes.maximal[j % extremes.maximal.size()];
            Word prefix;
            for (std::int64_t q = 1; q <= 20; ++q) prefix.push_back(omega.at(q));
            Point tail = m.sample_nu(seed, pi);
            std::int64_t shift = 0;
            while (shift < 256 && !ts->allowed(prefix.back(), tail.at(shift + 1))) ++shift;
            if (shift == 256) throw NoConvergenceError("no admissible seam for the adversarial prefix");
            return prepend(prefix, tail.shifted(shift));
        }();

        OrbitWalker walker(ts, x);
        std::vector<std::int64_t> counts(span, 0);
        std::size_t ci = 0;
        for (std::int64_t k = 0;; ++k) {
            std::uint64_t code = 0, mult = 1;
            for (int q = 1; q <= max_depth; ++q) {
                code += static_cast<std::uint64_t>(walker.coordinate(q)) * mult;
                mult *= static_cast<std::uint64_t>(d);
            }
            ++counts[code];
            if (k + 1 == n_list[ci]) {
                const double n = static_cast<double>(n_list[ci]);
                for (std::size_t c = 0; c < cylinders.size(); ++c) {
                    std::int64_t hits = 0;
                    for (std::uint64_t t = cyl_code[c]; t < span; t += cyl_mod[c]) hits += counts[t];
                    err[ci][c] = std::max(err[ci][c],
                                          std::abs(static_cast<double>(hits) / n - target[c]));
                }
                if (++ci == n_list.size()) break;
            }
            walker.step();
        }
    }

    UniformReport rep;
    rep.n_list = n_list;
    rep.sup_error.assign(n_list.size(), 0.0);
    for (std::size_t k = 0; k < n_list.size(); ++k)
        for (std::size_t c = 0; c < cylinders.size(); ++c) {
            rep.rows.push_back({n_list[k], cylinders[c], err[k][c]});
            rep.sup_error[k] = std::max(rep.sup_error[k], err[k][c]);
        }
    // ties are legitimate here: on the full 2-shift the walker equidistributes
    // depth-m cylinders exactly whenever 2^m divides n, so the sup error can
    // be exactly zero at several checkpoints
    rep.decreasing = !rep.sup_error.empty();
    for (std::size_t k = 1; k < rep.sup_error.size(); ++k)
        if (rep.sup_error[k] > rep.sup_error[k - 1]) rep.decreasing = false;
    return rep;
}

Lemma41Report lemma41_check(const Cocycle& f, const MeasurePair& m, const CovarianceData& cov,
                            const Window& I, const std::vector<std::int64_t>& n_list,
                            std::size_t points, std::uint64_t seed) {
    check_n_list(n_list);
    if (points == 0) throw ConfigError("need at least one sample point");
    if (f.spec().lattice_rank != f.spec().dimension)
        throw GroupMismatchError("exact fiber counts need a pure lattice observable");
    if (!(I.spec() == f.spec())) throw GroupMismatchError("window group does not match the cocycle");
    cov.require_positive();
    const PerronData& pd = m.perron_data();
    const int D = f.spec().dimension;
    const int r = f.range();
    const std::size_t cont_len = static_cast<std::size_t>(std::max(1, r - 1));
    const double norm_base = I.haar_mass() / std::sqrt(cov.det);

    Lemma41Report rep;
    for (std::int64_t n : n_list) {
        std::map<Word, std::map<std::vector<std::int64_t>, BigInt>> cache;
        std::vector<double> errs;
        for (std::size_t pi = 0; pi < points; ++pi) {
            Point x = m.sample_nu(seed, pi);
            Word continuation;
            for (std::size_t q = 0; q < cont_len; ++q)
                continuation.push_back(x.at(n + 1 + static_cast<std::int64_t>(q)));
            auto it = cache.find(continuation);
            if (it == cache.end())
                it = cache.emplace(continuation, fiber_fn_counts(f, n, continuation)).first;
            const auto& counts = it->second;

            GroupElement t = birkhoff_sum(f, x, n);
            BigInt hits = 0;
            for (const auto& p : I.lattice_points()) {
                std::vector<std::int64_t> key = t.lattice;
                for (std::size_t i = 0; i < key.size(); ++i) key[i] = checked_add(key[i], p[i]);
                auto ct = counts.find(key);
                if (ct != counts.end()) hits += ct->second;
            }

            std::vector<double> fbar = t.as_real();
            for (std::size_t i = 0; i < fbar.size(); ++i)
                fbar[i] -= static_cast<double>(n) * cov.mean[i];

            Lemma41Report::Row row;
            row.n = n;
            row.point_index = pi;
            row.count = hits.convert_to<double>();
            row.reference = std::pow(pd.lambda, static_cast<double>(n)) *
                            m.constant_c(x.at(n + 1)) * norm_base /
                            std::pow(kTwoPi * static_cast<double>(n), 0.5 * D) *
                            std::exp(-cov.quadratic(fbar) / (2.0 * static_cast<double>(n)));
            row.ratio_err = std::abs(row.count / row.reference - 1.0);
            rep.rows.push_back(row);
            errs.push_back(row.ratio_err);
        }
        rep.median_err.push_back(median(std::move(errs)));
    }
    rep.decreasing = strictly_decreasing(rep.median_err);
    return rep;
}

TauDecomposition tau_preimage_decomposition(const MeasurePair& m, int min_depth, int max_depth) {
    if (min_depth < 2 || max_depth < min_depth)
        throw ConfigError("need 2 <= min_depth <= max_depth");
    auto ts = m.system_ptr();
    const int d = ts->alphabet_size();

    TauDecomposition out;
    Word w;
    std::function<void()> rec = [&] {
        std::size_t movable = 0;
        Symbol next = 0;
        for (std::size_t j = 1; j + 1 <= w.size(); ++j) {
            auto s = ts->smallest_allowed_above(w[j - 1], w[j]);
            if (s) {
                movable = j;
                next = *s;
                break;
            }
        }
        if (movable > 0 && static_cast<int>(w.size()) >= min_depth) {
            TauPiece piece;
            piece.source = w;
            piece.image = w;
            piece.image[movable - 1] = next;
            for (std::size_t i = movable - 1; i >= 1; --i)
                piece.image[i - 1] = ts->phi_minus(piece.image[i]);
            out.pieces.push_back(std::move(piece));
            return;
        }
        if (static_cast<int>(w.size()) == max_depth) {
            out.unresolved_mass += m.nu_cylinder(w);
            return;
        }
        for (Symbol b = 0; b < d; ++b) {
            if (!w.empty() && !ts->allowed(w.back(), b)) continue;
            w.push_back(b);
            rec();
            w.pop_back();
        }
    };
    rec();
    return out;
}

SuccessorSetOracleReport oracle_successor_sets(std::shared_ptr<const TransitionSystem> ts,
                                               std::size_t samples_per_point,
                                               std::uint64_t seed) {
    if (samples_per_point == 0) throw ConfigError("need at least one sample");
    const CompactRepresentation rep = compact_successor_sets(ts);
    const int germ = 64;  // separates periodic candidates on any sane alphabet

    SuccessorSetOracleReport out;
    RandomStream rs(seed, 0x6f7261636cULL);
    for (std::size_t mi = 0; mi < rep.maximal.size(); ++mi) {
        const Point& omega = rep.maximal[mi];
        std::map<Word, std::size_t> candidates;
        for (std::size_t ai = 0; ai < rep.successor_sets[mi].size(); ++ai) {
            Word g;
            for (int q = 1; q <= germ; ++q) g.push_back(rep.successor_sets[mi][ai].at(q));
            candidates.emplace(std::move(g), ai);
        }
        if (candidates.size() != rep.successor_sets[mi].size()) {
            out.match = false;
            out.detail = "two limit candidates share a depth-64 germ";
            return out;
        }
        std::vector<char> hit(rep.successor_sets[mi].size(), 0);

        for (std::size_t s = 0; s < samples_per_point; ++s) {
            const std::int64_t n = 96 + static_cast<std::int64_t>(rs.next_below(905));
            Word prefix;
            for (std::int64_t q = 1; q <= n; ++q) prefix.push_back(omega.at(q));

            auto stream = std::make_shared<LazyStream>(
                seed ^ 0x5eed5eedULL,
                (static_cast<std::uint64_t>(mi) << 32) ^ static_cast<std::uint64_t>(s),
                [ts](RandomStream& rng, std::optional<Symbol> prev) {
                    const int d = ts->alphabet_size();
                    if (!prev)
                        return static_cast<Symbol>(rng.next_below(static_cast<std::uint64_t>(d)));
                    std::vector<Symbol> allowed;
                    for (Symbol b = 0; b < d; ++b)
                        if (ts->allowed(*prev, b)) allowed.push_back(b);
                    return allowed[rng.next_below(allowed.size())];
                });
            Point tail = Point::lazy(ts, stream);
            std::int64_t shift = 0;
            while (shift < 256 && !ts->allowed(prefix.back(), tail.at(shift + 1))) ++shift;
            if (shift == 256) continue;
            Point x = prepend(prefix, tail.shifted(shift));

            try {
                Point y = successor(x);
                Word g;
                for (int q = 1; q <= germ; ++q) g.push_back(y.at(q));
                auto it = candidates.find(g);
                if (it == candidates.end()) {
                    out.match = false;
                    if (out.detail.empty()) {
                        std::ostringstream os;
                        os << "successor germ escaped the candidate set (maximal #" << mi
                           << ", sample " << s << ", depth " << n << ")";
                        out.detail = os.str();
                    }
                } else {
                    hit[it->second] = 1;
                }
                ++out.samples_used;
            } catch (const MaximalPointError&) {
                // the random tail continued the maximal pattern; skip
            }
        }

        for (std::size_t ai = 0; ai < hit.size(); ++ai)
            if (!hit[ai]) {
                out.match = false;
                if (out.detail.empty()) {
                    std::ostringstream os;
                    os << "limit candidate " << ai << " of maximal #" << mi
                       << " was never realized by the sampler";
                    out.detail = os.str();
                }
            }
    }
    return out;
}

}  // namespace rwadic
