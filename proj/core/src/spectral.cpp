#include "rwadic/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <unordered_map>

#include <boost/math/quadrature/gauss.hpp>

#include "rwadic/errors.hpp"

namespace rwadic {

namespace {

bool shift_overlap(const Word& a, const Word& b) {
    for (std::size_t i = 0; i + 1 < a.size(); ++i)
        if (a[i + 1] != b[i]) return false;
    return true;
}

std::vector<double> sorted_moduli(const Eigen::MatrixXd& m) {
    Eigen::VectorXcd ev = Eigen::EigenSolver<Eigen::MatrixXd>(m, false).eigenvalues();
    std::vector<double> mods(static_cast<std::size_t>(ev.size()));
    for (Eigen::Index i = 0; i < ev.size(); ++i) mods[static_cast<std::size_t>(i)] = std::abs(ev(i));
    std::sort(mods.begin(), mods.end(), std::greater<>());
    return mods;
}

}  // namespace

int TransferData::state_index(const Word& w) const {
    auto it = std::lower_bound(states.begin(), states.end(), w);
    if (it == states.end() || *it != w) throw InadmissibleWordError("word is not a chain state");
    return static_cast<int>(it - states.begin());
}

TransferData build_transfer(const Cocycle& f, const MeasurePair& m) {
    TransferData td;
    td.ts = f.system_ptr();
    td.range = f.range();
    td.spec = f.spec();
    td.states = f.words();

    const TransitionSystem& ts = *td.ts;
    const PerronData& pd = m.perron_data();
    const int ns = static_cast<int>(td.states.size());
    td.forward = Eigen::MatrixXd::Zero(ns, ns);
    td.transfer = Eigen::MatrixXd::Zero(ns, ns);
    td.stationary = Eigen::VectorXd::Zero(ns);

    for (int i = 0; i < ns; ++i) {
        const Word& w = td.states[static_cast<std::size_t>(i)];
        td.stationary(i) = m.mu_cylinder(w);
        for (int j = 0; j < ns; ++j) {
            const Word& w2 = td.states[static_cast<std::size_t>(j)];
            // forward: w2 follows w under the shift
            if (shift_overlap(w, w2) && (td.range > 1 || ts.allowed(w.back(), w2.back())))
                td.forward(i, j) = m.transition(w.back(), w2.back());
            // transfer: w2 = a . w_{1..r-1}
            if (shift_overlap(w2, w) && (td.range > 1 || ts.allowed(w2.front(), w.front())))
                td.transfer(i, j) =
                    pd.left[static_cast<std::size_t>(w2.front())] /
                    (pd.lambda * pd.left[static_cast<std::size_t>(w.front())]);
        }
    }

    const int D = td.spec.dimension;
    td.f_mean.assign(static_cast<std::size_t>(D), 0.0);
    td.f_raw.reserve(td.states.size());
    for (int i = 0; i < ns; ++i) {
        std::vector<double> v = f.value(td.states[static_cast<std::size_t>(i)]).as_real();
        for (int c = 0; c < D; ++c) {
            td.f_mean[static_cast<std::size_t>(c)] += td.stationary(i) * v[static_cast<std::size_t>(c)];
            td.f_sup = std::max(td.f_sup, std::abs(v[static_cast<std::size_t>(c)]));
        }
        td.f_raw.push_back(std::move(v));
    }

    std::vector<double> mods = sorted_moduli(td.forward);
    td.subleading_modulus = mods.size() > 1 ? mods[1] : 0.0;
    return td;
}

double CovarianceData::quadratic(const std::vector<double>& z) const {
    require_positive();
    const Eigen::Index D = gamma.rows();
    if (static_cast<Eigen::Index>(z.size()) != D)
        throw GroupMismatchError("vector dimension does not match the covariance");
    Eigen::VectorXd zv(D);
    for (Eigen::Index i = 0; i < D; ++i) zv(i) = z[static_cast<std::size_t>(i)];
    Eigen::VectorXd y = u_rows * zv;
    double q = 0.0;
    for (Eigen::Index i = 0; i < D; ++i) q += (y(i) / m_diag(i)) * (y(i) / m_diag(i));
    return q;
}

Eigen::MatrixXd CovarianceData::inverse() const {
    require_positive();
    return u_rows.transpose() * m_diag.array().pow(-2).matrix().asDiagonal() * u_rows;
}

void CovarianceData::require_positive() const {
    if (!positive_definite)
        throw DegenerateGammaError("covariance is not positive definite");
}

CovarianceData gamma_series(const TransferData& td, int max_lag) {
    const int ns = static_cast<int>(td.states.size());
    const int D = td.spec.dimension;

    Eigen::MatrixXd fbar(ns, D);
    for (int i = 0; i < ns; ++i)
        for (int c = 0; c < D; ++c)
            fbar(i, c) = td.f_raw[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)] -
                         td.f_mean[static_cast<std::size_t>(c)];

    Eigen::MatrixXd weighted = td.stationary.asDiagonal() * fbar;  // mu_w * fbar_i(w)
    Eigen::MatrixXd gamma = weighted.transpose() * fbar;           // lag-0 term

    const double scale = std::max(1.0, td.f_sup * td.f_sup);
    Eigen::MatrixXd propagated = fbar;
    double last_term = 0.0;
    int quiet = 0;
    int lag = 0;
    while (quiet < 3) {
        if (++lag > max_lag)
            throw NoConvergenceError("correlation series did not settle within the lag budget");
        propagated = td.forward * propagated;
        Eigen::MatrixXd term = weighted.transpose() * propagated;
        gamma += term + term.transpose();
        last_term = term.cwiseAbs().maxCoeff();
        quiet = last_term < 1e-18 * scale ? quiet + 1 : 0;
    }

    CovarianceData cov;
    double rho = std::min(td.subleading_modulus + 1e-10, 1.0 - 1e-6);
    cov.tail_bound = 2.0 * last_term * rho / (1.0 - rho);
    cov.mean = td.f_mean;
    cov.gamma = 0.5 * (gamma + gamma.transpose());

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(cov.gamma);
    cov.u_rows = es.eigenvectors().transpose();
    Eigen::VectorXd eig = es.eigenvalues();
    cov.det = eig.prod();
    cov.positive_definite = eig.minCoeff() > 1e-12 * std::max(1.0, eig.maxCoeff());
    cov.m_diag = eig.cwiseMax(0.0).cwiseSqrt();
    return cov;
}

std::complex<double> nagaev_lambda(const TransferData& td, const std::vector<double>& t,
                                   bool centered, double radius_scale) {
    const int ns = static_cast<int>(td.states.size());
    const int D = td.spec.dimension;
    if (static_cast<int>(t.size()) != D)
        throw GroupMismatchError("frequency dimension does not match the observable");

    double sup = 0.0;
    for (int i = 0; i < ns; ++i)
        for (int c = 0; c < D; ++c) {
            double v = td.f_raw[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)];
            if (centered) v -= td.f_mean[static_cast<std::size_t>(c)];
            sup = std::max(sup, std::abs(v));
        }
    double tnorm = 0.0;
    for (double tc : t) tnorm += tc * tc;
    tnorm = std::sqrt(tnorm);
    if (sup > 0.0 && tnorm > radius_scale / sup)
        throw RadiusExceededError("frequency outside the perturbation radius");

    Eigen::MatrixXcd pt(ns, ns);
    for (int j = 0; j < ns; ++j) {
        double phase = 0.0;
        for (int c = 0; c < D; ++c) {
            double v = td.f_raw[static_cast<std::size_t>(j)][static_cast<std::size_t>(c)];
            if (centered) v -= td.f_mean[static_cast<std::size_t>(c)];
            phase += t[static_cast<std::size_t>(c)] * v;
        }
        std::complex<double> w = std::polar(1.0, phase);
        for (int i = 0; i < ns; ++i) pt(i, j) = td.transfer(i, j) * w;
    }

    Eigen::VectorXcd ev = Eigen::ComplexEigenSolver<Eigen::MatrixXcd>(pt, false).eigenvalues();
    Eigen::Index lead = 0;
    for (Eigen::Index i = 1; i < ev.size(); ++i)
        if (std::abs(ev(i)) > std::abs(ev(lead))) lead = i;
    double second = 0.0;
    for (Eigen::Index i = 0; i < ev.size(); ++i)
        if (i != lead) second = std::max(second, std::abs(ev(i)));
    if (ev.size() > 1 && second > std::abs(ev(lead)) * (1.0 - 1e-8))
        throw EigenvalueCollisionError("leading eigenvalue branch is ambiguous");
    return ev(lead);
}

namespace {

double log_modulus_lambda(const TransferData& td, const std::vector<double>& t) {
    return std::log(std::abs(nagaev_lambda(td, t, /*centered=*/true)));
}

Eigen::MatrixXd hessian_at_step(const TransferData& td, double h) {
    const int D = td.spec.dimension;
    Eigen::MatrixXd hess(D, D);
    std::vector<double> t(static_cast<std::size_t>(D), 0.0);
    const double g0 = log_modulus_lambda(td, t);
    for (int i = 0; i < D; ++i) {
        t[static_cast<std::size_t>(i)] = h;
        double gp = log_modulus_lambda(td, t);
        t[static_cast<std::size_t>(i)] = -h;
        double gm = log_modulus_lambda(td, t);
        t[static_cast<std::size_t>(i)] = 0.0;
        hess(i, i) = (gp + gm - 2.0 * g0) / (h * h);
        for (int j = i + 1; j < D; ++j) {
            double quad[4];
            const double si[4] = {h, -h, h, -h};
            const double sj[4] = {h, -h, -h, h};
            for (int q = 0; q < 4; ++q) {
                t[static_cast<std::size_t>(i)] = si[q];
                t[static_cast<std::size_t>(j)] = sj[q];
                quad[q] = log_modulus_lambda(td, t);
            }
            t[static_cast<std::size_t>(i)] = 0.0;
            t[static_cast<std::size_t>(j)] = 0.0;
            hess(i, j) = hess(j, i) = (quad[0] + quad[1] - quad[2] - quad[3]) / (4.0 * h * h);
        }
    }
    return hess;
}

}  // namespace

Eigen::MatrixXd gamma_hessian(const TransferData& td, double h1, double h2) {
    Eigen::MatrixXd d1 = -hessian_at_step(td, h1);
    Eigen::MatrixXd d2 = -hessian_at_step(td, h2);
    // central differences carry an O(h^2) error term; eliminate it
    return (h1 * h1 * d2 - h2 * h2 * d1) / (h1 * h1 - h2 * h2);
}

namespace {

// Dynamic program over (suffix state, accumulated lattice sum).  Positions
// walk the extended sequence; a position is either free (all admissible
// symbols) or forced (a fixed continuation symbol).  The window ending at
// position p contributes when its start index p-r+1 lies in [1, n].
struct LatticeLayout {
    int dims = 0;
    std::vector<std::int64_t> lo;
    std::vector<std::int64_t> stride;
    std::vector<std::int64_t> span;

    std::int64_t key_of(const std::vector<std::int64_t>& v) const {
        std::int64_t key = 0;
        for (int c = 0; c < dims; ++c)
            key += (v[static_cast<std::size_t>(c)] - lo[static_cast<std::size_t>(c)]) *
                   stride[static_cast<std::size_t>(c)];
        return key;
    }
    std::vector<std::int64_t> value_of(std::int64_t key) const {
        std::vector<std::int64_t> v(static_cast<std::size_t>(dims));
        for (int c = 0; c < dims; ++c)
            v[static_cast<std::size_t>(c)] =
                (key / stride[static_cast<std::size_t>(c)]) % span[static_cast<std::size_t>(c)] +
                lo[static_cast<std::size_t>(c)];
        return v;
    }
};

LatticeLayout make_layout(const Cocycle& f, std::int64_t n) {
    if (f.spec().lattice_rank != f.spec().dimension)
        throw GroupMismatchError("exact distributions need a purely lattice observable");
    LatticeLayout lay;
    lay.dims = f.spec().dimension;
    lay.lo.resize(static_cast<std::size_t>(lay.dims));
    lay.span.resize(static_cast<std::size_t>(lay.dims));
    lay.stride.resize(static_cast<std::size_t>(lay.dims));
    std::int64_t stride = 1;
    for (int c = 0; c < lay.dims; ++c) {
        std::int64_t vmin = 0, vmax = 0;
        bool first = true;
        for (const Word& w : f.words()) {
            std::int64_t v = f.value(w).lattice[static_cast<std::size_t>(c)];
            vmin = first ? v : std::min(vmin, v);
            vmax = first ? v : std::max(vmax, v);
            first = false;
        }
        lay.lo[static_cast<std::size_t>(c)] = std::min<std::int64_t>(0, checked_mul(n, vmin));
        std::int64_t hi = std::max<std::int64_t>(0, checked_mul(n, vmax));
        lay.span[static_cast<std::size_t>(c)] = hi - lay.lo[static_cast<std::size_t>(c)] + 1;
        lay.stride[static_cast<std::size_t>(c)] = stride;
        stride = checked_mul(stride, lay.span[static_cast<std::size_t>(c)]);
        if (stride > (std::int64_t{1} << 62) / 2)
            throw BudgetExceededError("lattice value range too large to pack");
    }
    return lay;
}

template <typename WeightT>
using DpLayer = std::vector<std::unordered_map<std::int64_t, WeightT>>;

// runs the DP; `forced` holds the fixed symbols after the n free positions
// (empty for the full-measure variant).  Returns per-suffix-state maps.
template <typename WeightT>
DpLayer<WeightT> run_lattice_dp(const Cocycle& f, std::int64_t n, const Word& forced,
                                const LatticeLayout& lay, bool mu_weights,
                                const PerronData* pd, std::size_t max_entries) {
    const TransitionSystem& ts = f.system();
    const int d = ts.alphabet_size();
    const int r = f.range();
    const int s = std::max(1, r - 1);
    std::int64_t suffix_states = 1;
    for (int i = 0; i < s; ++i) suffix_states *= d;
    if (suffix_states > (std::int64_t{1} << 22))
        throw DepthTooLargeError("suffix state space too large");
    const std::int64_t p_total = n + static_cast<std::int64_t>(forced.size()) +
                                 (mu_weights ? r - 1 : 0);
    const std::int64_t window_last = n + r - 1;
    std::int64_t suffix_msd = 1;
    for (int i = 0; i < s - 1; ++i) suffix_msd *= d;

    auto symbol_ok = [&](std::int64_t p, Symbol b) {
        if (p <= n || mu_weights) return true;
        return forced[static_cast<std::size_t>(p - n - 1)] == b;
    };

    DpLayer<WeightT> cur(static_cast<std::size_t>(suffix_states)), nxt(cur.size());

    // seed with admissible r-words at positions 1..r
    for (const Word& w : f.words()) {
        bool ok = true;
        for (int p = 1; p <= r && ok; ++p) ok = symbol_ok(p, w[static_cast<std::size_t>(p - 1)]);
        if (!ok) continue;
        std::int64_t suffix = 0;
        std::int64_t digit = 1;
        for (int i = r - s; i < r; ++i) {
            suffix += static_cast<std::int64_t>(w[static_cast<std::size_t>(i)]) * digit;
            digit *= d;
        }
        std::int64_t key = lay.key_of([&] {
            std::vector<std::int64_t> v(static_cast<std::size_t>(lay.dims));
            for (int c = 0; c < lay.dims; ++c)
                v[static_cast<std::size_t>(c)] = f.value(w).lattice[static_cast<std::size_t>(c)];
            return v;
        }());
        WeightT weight;
        if constexpr (std::is_same_v<WeightT, double>) {
            weight = mu_weights ? pd->left[static_cast<std::size_t>(w.front())] /
                                      std::pow(pd->lambda, r - 1)
                                : 1.0;
        } else {
            weight = 1;
        }
        cur[static_cast<std::size_t>(suffix)][key] += weight;
    }

    for (std::int64_t p = r + 1; p <= p_total; ++p) {
        for (auto& m : nxt) m.clear();
        std::size_t total = 0;
        const bool add_window = p <= window_last;
        for (std::int64_t suffix = 0; suffix < suffix_states; ++suffix) {
            auto& bucket = cur[static_cast<std::size_t>(suffix)];
            if (bucket.empty()) continue;
            const Symbol last = static_cast<Symbol>(suffix / suffix_msd);
            for (Symbol b = 0; b < d; ++b) {
                if (!ts.allowed(last, b) || !symbol_ok(p, b)) continue;
                const std::int64_t nsuffix = suffix / d + static_cast<std::int64_t>(b) * suffix_msd;
                const std::uint64_t wcode =
                    r == 1 ? static_cast<std::uint64_t>(b)
                           : static_cast<std::uint64_t>(suffix) +
                                 static_cast<std::uint64_t>(b) *
                                     static_cast<std::uint64_t>(suffix_msd) *
                                     static_cast<std::uint64_t>(d);
                std::int64_t shift = 0;
                if (add_window) {
                    const auto& gv = f.value_by_code(wcode).lattice;
                    for (int c = 0; c < lay.dims; ++c)
                        shift += gv[static_cast<std::size_t>(c)] *
                                 lay.stride[static_cast<std::size_t>(c)];
                }
                auto& out = nxt[static_cast<std::size_t>(nsuffix)];
                for (const auto& [key, weight] : bucket) {
                    if constexpr (std::is_same_v<WeightT, double>) {
                        out[key + shift] += weight / (mu_weights ? pd->lambda : 1.0);
                    } else {
                        out[key + shift] += weight;
                    }
                }
            }
        }
        cur.swap(nxt);
        for (const auto& m : cur) total += m.size();
        if (total > max_entries)
            throw BudgetExceededError("exact distribution support exceeds the entry budget");
    }
    return cur;
}

}  // namespace

std::map<std::vector<std::int64_t>, double> exact_fn_distribution(const Cocycle& f,
                                                                  const MeasurePair& m,
                                                                  std::int64_t n,
                                                                  std::size_t max_entries) {
    if (n < 1) throw Error("distribution depth must be positive");
    LatticeLayout lay = make_layout(f, n);
    const PerronData& pd = m.perron_data();
    DpLayer<double> layer =
        run_lattice_dp<double>(f, n, Word{}, lay, /*mu_weights=*/true, &pd, max_entries);
    const int d = f.system().alphabet_size();
    const int s = std::max(1, f.range() - 1);
    std::int64_t suffix_msd = 1;
    for (int i = 0; i < s - 1; ++i) suffix_msd *= d;
    std::map<std::vector<std::int64_t>, double> out;
    for (std::size_t suffix = 0; suffix < layer.size(); ++suffix) {
        const Symbol lastsym = static_cast<Symbol>(static_cast<std::int64_t>(suffix) / suffix_msd);
        for (const auto& [key, weight] : layer[suffix])
            out[lay.value_of(key)] += weight * pd.right[static_cast<std::size_t>(lastsym)];
    }
    return out;
}

std::map<std::vector<std::int64_t>, BigInt> fiber_fn_counts(const Cocycle& f, std::int64_t n,
                                                            const Word& continuation,
                                                            std::size_t max_entries) {
    if (n < 1) throw Error("fiber depth must be positive");
    const int r = f.range();
    if (static_cast<int>(continuation.size()) < std::max(1, r - 1))
        throw Error("continuation must cover the boundary windows");
    f.system().require_admissible(continuation);
    Word forced(continuation.begin(),
                continuation.begin() + std::max<std::ptrdiff_t>(1, r - 1));
    LatticeLayout lay = make_layout(f, n);
    DpLayer<BigInt> layer =
        run_lattice_dp<BigInt>(f, n, forced, lay, /*mu_weights=*/false, nullptr, max_entries);
    std::map<std::vector<std::int64_t>, BigInt> out;
    for (const auto& bucket : layer)
        for (const auto& [key, count] : bucket) out[lay.value_of(key)] += count;
    return out;
}

namespace {

double gaussian_box_mass(const CovarianceData& cov,
                         const std::vector<std::pair<double, double>>& box) {
    const int D = static_cast<int>(cov.gamma.rows());
    cov.require_positive();
    if (D == 1) {
        const double s = std::sqrt(2.0 * cov.gamma(0, 0));
        return 0.5 * (std::erf(box[0].second / s) - std::erf(box[0].first / s));
    }
    const double norm = 1.0 / (std::pow(2.0 * M_PI, 0.5 * D) * std::sqrt(cov.det));
    Eigen::MatrixXd inv = cov.inverse();
    std::vector<double> z(static_cast<std::size_t>(D), 0.0);
    using Gauss = boost::math::quadrature::gauss<double, 64>;
    std::function<double(int)> level = [&](int dim) -> double {
        if (dim == D) {
            double q = 0.0;
            for (int i = 0; i < D; ++i)
                for (int j = 0; j < D; ++j)
                    q += z[static_cast<std::size_t>(i)] * inv(i, j) * z[static_cast<std::size_t>(j)];
            return std::exp(-0.5 * q);
        }
        auto inner = [&](double x) {
            z[static_cast<std::size_t>(dim)] = x;
            return level(dim + 1);
        };
        return Gauss::integrate(inner, box[static_cast<std::size_t>(dim)].first,
                                box[static_cast<std::size_t>(dim)].second);
    };
    return norm * level(0);
}

bool strictly_decreasing(const std::vector<double>& v) {
    for (std::size_t i = 0; i + 1 < v.size(); ++i)
        if (!(v[i + 1] < v[i])) return false;
    return !v.empty();
}

}  // namespace

CheckReport clt_check(const Cocycle& f, const MeasurePair& m, const CovarianceData& cov,
                      const std::vector<std::int64_t>& n_list,
                      const std::vector<std::vector<std::pair<double, double>>>& boxes,
                      std::size_t max_entries) {
    const int D = f.spec().dimension;
    CheckReport rep;
    for (std::int64_t n : n_list) {
        auto dist = exact_fn_distribution(f, m, n, max_entries);
        const double root = std::sqrt(static_cast<double>(n));
        double worst = 0.0;
        for (std::size_t bi = 0; bi < boxes.size(); ++bi) {
            const auto& box = boxes[bi];
            double mass = 0.0;
            for (const auto& [value, p] : dist) {
                bool inside = true;
                for (int c = 0; c < D && inside; ++c) {
                    double zc = (static_cast<double>(value[static_cast<std::size_t>(c)]) -
                                 static_cast<double>(n) * cov.mean[static_cast<std::size_t>(c)]) /
                                root;
                    inside = zc >= box[static_cast<std::size_t>(c)].first &&
                             zc < box[static_cast<std::size_t>(c)].second;
                }
                if (inside) mass += p;
            }
            double ref = gaussian_box_mass(cov, box);
            CheckRow row;
            row.n = n;
            row.location = static_cast<double>(bi);
            row.statistic = mass;
            row.reference = ref;
            row.abs_err = std::abs(mass - ref);
            row.rel_err = ref != 0.0 ? row.abs_err / std::abs(ref) : row.abs_err;
            worst = std::max(worst, row.abs_err);
            rep.rows.push_back(row);
        }
        rep.per_n_error.push_back(worst);
    }
    rep.decreasing = strictly_decreasing(rep.per_n_error);
    return rep;
}

CheckReport llt_check(const Cocycle& f, const MeasurePair& m, const CovarianceData& cov,
                      const std::vector<std::int64_t>& n_list,
                      const std::vector<std::vector<double>>& u_targets,
                      std::size_t max_entries) {
    const int D = f.spec().dimension;
    cov.require_positive();
    const double norm = 1.0 / (std::pow(2.0 * M_PI, 0.5 * D) * std::sqrt(cov.det));
    CheckReport rep;
    for (std::int64_t n : n_list) {
        auto dist = exact_fn_distribution(f, m, n, max_entries);
        const double root = std::sqrt(static_cast<double>(n));
        double worst = 0.0;
        for (const auto& u : u_targets) {
            std::vector<std::int64_t> g(static_cast<std::size_t>(D));
            std::vector<double> ueff(static_cast<std::size_t>(D));
            double unorm = 0.0;
            for (int c = 0; c < D; ++c) {
                double target = static_cast<double>(n) * cov.mean[static_cast<std::size_t>(c)] +
                                root * u[static_cast<std::size_t>(c)];
                g[static_cast<std::size_t>(c)] = static_cast<std::int64_t>(std::floor(target));
                ueff[static_cast<std::size_t>(c)] =
                    (static_cast<double>(g[static_cast<std::size_t>(c)]) -
                     static_cast<double>(n) * cov.mean[static_cast<std::size_t>(c)]) /
                    root;
                unorm += u[static_cast<std::size_t>(c)] * u[static_cast<std::size_t>(c)];
            }
            auto it = dist.find(g);
            double prob = it != dist.end() ? it->second : 0.0;
            CheckRow row;
            row.n = n;
            row.location = std::sqrt(unorm);
            row.statistic = std::pow(static_cast<double>(n), 0.5 * D) * prob;
            row.reference = norm * std::exp(-0.5 * cov.quadratic(ueff));
            row.abs_err = std::abs(row.statistic - row.reference);
            row.rel_err = row.reference != 0.0 ? row.abs_err / row.reference : row.abs_err;
            worst = std::max(worst, row.rel_err);
            rep.rows.push_back(row);
        }
        rep.per_n_error.push_back(worst);
    }
    rep.decreasing = strictly_decreasing(rep.per_n_error);
    return rep;
}

}  // namespace rwadic
