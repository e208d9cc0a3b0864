#include "rwadic/measures.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "rwadic/errors.hpp"

namespace rwadic {

namespace {

std::vector<double> iterate_to_fixpoint(const std::vector<std::vector<int>>& m, bool transpose,
                                        double tol, int max_iterations, int& used) {
    const int d = static_cast<int>(m.size());
    std::vector<double> v(static_cast<std::size_t>(d), 1.0 / d);
    std::vector<double> w(static_cast<std::size_t>(d));
    for (used = 0; used < max_iterations; ++used) {
        for (int i = 0; i < d; ++i) {
            double acc = 0.0;
            for (int j = 0; j < d; ++j) {
                int a = transpose ? m[j][i] : m[i][j];
                if (a) acc += v[static_cast<std::size_t>(j)];
            }
            w[static_cast<std::size_t>(i)] = acc;
        }
        double sum = 0.0;
        for (double x : w) sum += x;
        for (double& x : w) x /= sum;
        double delta = 0.0;
        for (int i = 0; i < d; ++i)
            delta = std::max(delta, std::abs(w[static_cast<std::size_t>(i)] - v[static_cast<std::size_t>(i)]));
        v.swap(w);
        if (delta < tol) return v;
    }
    throw NoConvergenceError("power iteration did not converge within the budget");
}

}  // namespace

PerronData perron(const TransitionSystem& ts, double tol, int max_iterations) {
    if (!ts.primitive())
        throw NotPrimitiveError("leading eigendata requires a primitive transition matrix");
    const auto& m = ts.matrix();
    const int d = ts.alphabet_size();

    PerronData pd;
    int it_r = 0, it_l = 0;
    pd.right = iterate_to_fixpoint(m, false, tol, max_iterations, it_r);
    pd.left = iterate_to_fixpoint(m, true, tol, max_iterations, it_l);
    pd.iterations = std::max(it_r, it_l);

    // lambda from the normalized right vector: sum(A v) with sum(v) = 1
    double lam = 0.0;
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            if (m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)])
                lam += pd.right[static_cast<std::size_t>(j)];
    pd.lambda = lam;

    // normalize: sum(right) = 1 holds already; scale left so <left,right> = 1
    double inner = 0.0;
    for (int i = 0; i < d; ++i) inner += pd.left[static_cast<std::size_t>(i)] * pd.right[static_cast<std::size_t>(i)];
    for (double& x : pd.left) x /= inner;
    pd.right_sum = 1.0;
    pd.inner = 1.0;

    double rr = 0.0, rl = 0.0;
    for (int i = 0; i < d; ++i) {
        double av = 0.0, ua = 0.0;
        for (int j = 0; j < d; ++j) {
            if (m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]) av += pd.right[static_cast<std::size_t>(j)];
            if (m[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)]) ua += pd.left[static_cast<std::size_t>(j)];
        }
        rr = std::max(rr, std::abs(av - pd.lambda * pd.right[static_cast<std::size_t>(i)]));
        rl = std::max(rl, std::abs(ua - pd.lambda * pd.left[static_cast<std::size_t>(i)]));
    }
    pd.residual_right = rr;
    pd.residual_left = rl;

    Eigen::MatrixXd a(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) a(i, j) = m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    Eigen::VectorXcd ev = a.eigenvalues();
    std::vector<double> mods;
    for (int i = 0; i < d; ++i) mods.push_back(std::abs(ev(i)));
    std::sort(mods.begin(), mods.end(), std::greater<double>());
    pd.subleading_modulus = d > 1 ? mods[1] : 0.0;
    return pd;
}

MeasurePair::MeasurePair(std::shared_ptr<const TransitionSystem> ts, PerronData pd)
    : ts_(std::move(ts)), pd_(std::move(pd)) {}

double MeasurePair::mu_cylinder(const Word& w) const {
    ts_->require_admissible(w);
    if (w.empty()) return 1.0;
    return pd_.left[static_cast<std::size_t>(w.front())] * pd_.right[static_cast<std::size_t>(w.back())] /
           std::pow(pd_.lambda, static_cast<double>(w.size() - 1));
}

double MeasurePair::nu_cylinder(const Word& w) const {
    ts_->require_admissible(w);
    if (w.empty()) return 1.0;
    return pd_.right[static_cast<std::size_t>(w.back())] /
           std::pow(pd_.lambda, static_cast<double>(w.size() - 1));
}

double MeasurePair::transition(Symbol a, Symbol b) const {
    if (!ts_->allowed(a, b)) return 0.0;
    return pd_.right[static_cast<std::size_t>(b)] / (pd_.lambda * pd_.right[static_cast<std::size_t>(a)]);
}

BigInt MeasurePair::count_Jn(Symbol s, std::int64_t n) const {
    return preceding_word_counts(*ts_, n)[static_cast<std::size_t>(s)];
}

double MeasurePair::jn_ratio(Symbol s, std::int64_t n) const {
    const int d = ts_->alphabet_size();
    std::vector<double> c(static_cast<std::size_t>(d), 1.0);
    for (std::int64_t k = 1; k <= n; ++k) {
        std::vector<double> next(static_cast<std::size_t>(d), 0.0);
        for (Symbol t = 0; t < d; ++t)
            for (Symbol y = 0; y < d; ++y)
                if (ts_->allowed(y, t)) next[static_cast<std::size_t>(t)] += c[static_cast<std::size_t>(y)];
        for (double& x : next) x /= pd_.lambda;
        c.swap(next);
    }
    return c[static_cast<std::size_t>(s)];
}

Point MeasurePair::sample_markov(std::uint64_t seed, std::uint64_t stream_index,
                                 std::vector<double> initial) const {
    auto ts = ts_;
    const int d = ts_->alphabet_size();
    std::vector<std::vector<double>> kernel(static_cast<std::size_t>(d),
                                            std::vector<double>(static_cast<std::size_t>(d), 0.0));
    for (Symbol a = 0; a < d; ++a)
        for (Symbol b = 0; b < d; ++b) kernel[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = transition(a, b);

    auto extender = [initial = std::move(initial), kernel, d](RandomStream& rng,
                                                              std::optional<Symbol> prev) -> Symbol {
        const std::vector<double>& law =
            prev ? kernel[static_cast<std::size_t>(*prev)] : initial;
        double x = rng.next_double();
        double acc = 0.0;
        for (Symbol b = 0; b < d; ++b) {
            acc += law[static_cast<std::size_t>(b)];
            if (x < acc) return b;
        }
        // guard against rounding at the top of the CDF
        for (Symbol b = d - 1; b >= 0; --b)
            if (law[static_cast<std::size_t>(b)] > 0.0) return b;
        return 0;
    };
    auto stream = std::make_shared<LazyStream>(seed, stream_index, extender);
    return Point::lazy(ts, std::move(stream));
}

Point MeasurePair::sample_nu(std::uint64_t seed, std::uint64_t stream_index) const {
    std::vector<double> initial = pd_.right;  // already sums to 1
    return sample_markov(seed, stream_index, std::move(initial));
}

Point MeasurePair::sample_mu(std::uint64_t seed, std::uint64_t stream_index) const {
    const int d = ts_->alphabet_size();
    std::vector<double> initial(static_cast<std::size_t>(d));
    for (Symbol a = 0; a < d; ++a) initial[static_cast<std::size_t>(a)] = initial_mu(a);
    return sample_markov(seed, stream_index, std::move(initial));
}

MeasurePair make_measures(std::shared_ptr<const TransitionSystem> ts) {
    PerronData pd = perron(*ts);
    return MeasurePair(std::move(ts), std::move(pd));
}

}  // namespace rwadic
