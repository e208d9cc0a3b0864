#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "rwadic/adic.hpp"
#include "rwadic/bigint.hpp"
#include "rwadic/point.hpp"

namespace rwadic {

// Leading eigendata of a primitive transition matrix, found by power
// iteration (left and right separately).  Normalization: sum(right) = 1 and
// <left, right> = 1.  Residuals are reported so callers can insist on
// quality rather than trust the iteration count.
struct PerronData {
    double lambda = 0.0;
    std::vector<double> left;
    std::vector<double> right;
    double right_sum = 1.0;
    double inner = 1.0;
    double residual_left = 0.0;
    double residual_right = 0.0;
    int iterations = 0;
    double subleading_modulus = 0.0;  // |second largest eigenvalue|
};

PerronData perron(const TransitionSystem& ts, double tol = 1e-14, int max_iterations = 1000000);

// The shift-invariant measure mu and the tail-invariant measure nu built
// from the Perron data, as cylinder weights:
//   mu[w] = u_{w_1} v_{w_m} / lambda^{m-1},   nu[w] = v_{w_m} / lambda^{m-1}
// (with the normalization above; both are normalization-invariant as
// ratios).  dmu/dnu depends on the first coordinate only: h(a) = c(a) = u_a.
class MeasurePair {
public:
    MeasurePair(std::shared_ptr<const TransitionSystem> ts, PerronData pd);

    const TransitionSystem& system() const { return *ts_; }
    std::shared_ptr<const TransitionSystem> system_ptr() const { return ts_; }
    const PerronData& perron_data() const { return pd_; }

    double mu_cylinder(const Word& w) const;
    double nu_cylinder(const Word& w) const;

    double density_h(Symbol a) const { return pd_.left[static_cast<std::size_t>(a)]; }
    double constant_c(Symbol a) const { return density_h(a); }

    // Markov sampling data: initial laws and the common transition kernel
    double initial_nu(Symbol a) const { return pd_.right[static_cast<std::size_t>(a)]; }
    double initial_mu(Symbol a) const {
        return pd_.left[static_cast<std::size_t>(a)] * pd_.right[static_cast<std::size_t>(a)];
    }
    double transition(Symbol a, Symbol b) const;

    // exact J_n(s) and the normalized ratio J_n(s) / lambda^n (which tends
    // to c(s) at the geometric rate subleading/lambda)
    BigInt count_Jn(Symbol s, std::int64_t n) const;
    double jn_ratio(Symbol s, std::int64_t n) const;

    // lazy points with the given stream identity; coordinates are produced
    // by the Markov kernel, first symbol from the respective initial law
    Point sample_nu(std::uint64_t seed, std::uint64_t stream_index) const;
    Point sample_mu(std::uint64_t seed, std::uint64_t stream_index) const;

private:
    Point sample_markov(std::uint64_t seed, std::uint64_t stream_index,
                        std::vector<double> initial) const;

    std::shared_ptr<const TransitionSystem> ts_;
    PerronData pd_;
};

MeasurePair make_measures(std::shared_ptr<const TransitionSystem> ts);

}  // namespace rwadic
