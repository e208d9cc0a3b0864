#pragma once

#include <complex>
#include <map>
#include <memory>
#include <vector>

#include <Eigen/Dense>

#include "rwadic/bigint.hpp"
#include "rwadic/cocycle.hpp"
#include "rwadic/measures.hpp"

namespace rwadic {

// The mu-Markov chain recoded on admissible r-words, together with the
// transfer matrix (its time reversal) and the observable values per state.
// transfer rows sum to 1 exactly in formula: L[w][w~] = u_{w~_1}/(lambda u_{w_1})
// over the words w~ = a . w_{1..r-1} obtained by prepending a symbol.
struct TransferData {
    std::shared_ptr<const TransitionSystem> ts;
    int range = 1;
    GroupSpec spec;
    std::vector<Word> states;  // admissible r-words, lexicographic
    Eigen::MatrixXd forward;   // word chain under the shift (row-stochastic)
    Eigen::MatrixXd transfer;  // prepend chain (row-stochastic)
    Eigen::VectorXd stationary;             // mu mass per state
    std::vector<std::vector<double>> f_raw; // observable per state, length D
    std::vector<double> f_mean;             // stationary expectation, length D
    double f_sup = 0.0;
    double subleading_modulus = 0.0;  // of the word chain

    int state_index(const Word& w) const;
};

TransferData build_transfer(const Cocycle& f, const MeasurePair& m);

// Asymptotic covariance of the centered observable with its factorization
// Gamma = (U^T M)(U^T M)^T, U orthogonal (rows = eigenvectors), M = sqrt of
// the eigenvalues.  quadratic(z) = ||M^{-1} U z||^2 = z^T Gamma^{-1} z.
struct CovarianceData {
    Eigen::MatrixXd gamma;
    Eigen::MatrixXd u_rows;
    Eigen::VectorXd m_diag;
    double det = 0.0;
    bool positive_definite = false;
    double tail_bound = 0.0;  // truncation budget of the correlation series
    std::vector<double> mean; // stationary expectation of the raw observable

    double quadratic(const std::vector<double>& z) const;
    Eigen::MatrixXd inverse() const;
    void require_positive() const;
};

// Gamma_ij = E(fi fj) + sum_{n>=1} [E(fi fj o sigma^n) + E(fj fi o sigma^n)]
// for the centered observable, each correlation an exact finite matrix power;
// truncated when terms vanish, with a geometric tail bound from the
// subleading eigenvalue recorded in tail_bound.
CovarianceData gamma_series(const TransferData& td, int max_lag = 200000);

// Independent route: negated second derivative of log|lambda(t)| at t = 0 by
// central differences at two steps with Richardson extrapolation.
Eigen::MatrixXd gamma_hessian(const TransferData& td, double h1 = 1e-2, double h2 = 1e-3);

// Leading (maximal-modulus) eigenvalue of the weighted transfer matrix
// P_t[w][w~] = L[w][w~] e^{i t.f(w~)}.  lambda(0) = 1.  centered switches the
// observable to f - E(f).  Throws RadiusExceededError when |t| exceeds
// radius_scale/||f||_inf and EigenvalueCollisionError when the modulus gap to
// the second eigenvalue closes (branch ambiguity).
std::complex<double> nagaev_lambda(const TransferData& td, const std::vector<double>& t,
                                   bool centered = false, double radius_scale = 0.5);

// Exact distribution of the n-step sum for a purely lattice observable
// (k == D): value vector -> probability under mu.  Dynamic program over
// (suffix state, accumulated sum); throws BudgetExceededError when the
// support times the state count exceeds max_entries.
std::map<std::vector<std::int64_t>, double> exact_fn_distribution(
    const Cocycle& f, const MeasurePair& m, std::int64_t n,
    std::size_t max_entries = std::size_t{1} << 25);

// Exact counts over the depth-n fiber with the given continuation word
// (covers x_{n+1}..x_{n+r-1} plus the admissibility filter symbol):
// value -> #{w in the fiber with that n-step sum}.
std::map<std::vector<std::int64_t>, BigInt> fiber_fn_counts(
    const Cocycle& f, std::int64_t n, const Word& continuation,
    std::size_t max_entries = std::size_t{1} << 25);

struct CheckRow {
    std::int64_t n = 0;
    double location = 0.0;  // box index or profile offset, for table output
    double statistic = 0.0;
    double reference = 0.0;
    double abs_err = 0.0;
    double rel_err = 0.0;
};

struct CheckReport {
    std::vector<CheckRow> rows;
    std::vector<double> per_n_error;  // sup of abs_err per n_list entry
    bool decreasing = false;          // per_n_error strictly decreasing
};

// P(centered sum / sqrt n in box) against the Gaussian box integral; boxes
// are axis-aligned [lo, hi) per dimension.
CheckReport clt_check(const Cocycle& f, const MeasurePair& m, const CovarianceData& cov,
                      const std::vector<std::int64_t>& n_list,
                      const std::vector<std::vector<std::pair<double, double>>>& boxes,
                      std::size_t max_entries = std::size_t{1} << 25);

// n^{D/2} P(f_n = g) at g = floor(n E(f) + sqrt n u) against the Gaussian
// density at the realized offset, one row per (n, u target).
CheckReport llt_check(const Cocycle& f, const MeasurePair& m, const CovarianceData& cov,
                      const std::vector<std::int64_t>& n_list,
                      const std::vector<std::vector<double>>& u_targets,
                      std::size_t max_entries = std::size_t{1} << 25);

}  // namespace rwadic
