#include "rwadic/limit_laws.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <boost/math/special_functions/gamma.hpp>

#include "rwadic/errors.hpp"
#include "rwadic/rng.hpp"

namespace rwadic {

LimitLaw::LimitLaw(Variant variant, int degrees) : variant_(variant), degrees_(degrees) {
    if (degrees < 1) throw Error("limit law needs at least one degree of freedom");
}

double LimitLaw::support_min() const {
    return variant_ == Variant::exp_chi_squared ? 0.0 : 1.0;
}

double LimitLaw::support_max() const {
    return variant_ == Variant::exp_chi_squared
               ? std::pow(2.0, 0.5 * static_cast<double>(degrees_))
               : std::numeric_limits<double>::infinity();
}

double LimitLaw::cdf(double x) const {
    if (x < support_min() || x > support_max())
        throw OutOfSupportError("argument outside the law's support closure");
    return cdf_clamped(x);
}

double LimitLaw::cdf_clamped(double x) const {
    const double half = 0.5 * static_cast<double>(degrees_);
    if (variant_ == Variant::exp_chi_squared) {
        if (x <= 0.0) return 0.0;
        if (x >= support_max()) return 1.0;
        // P(2^{D/2} e^{-chi^2/2} <= x) = P(chi^2 >= D ln2 - 2 ln x)
        double threshold = 0.5 * (static_cast<double>(degrees_) * std::log(2.0) - 2.0 * std::log(x));
        return boost::math::gamma_q(half, threshold);
    }
    if (x <= 1.0) return 0.0;
    // P(e^{chi^2/2} <= x) = P(chi^2 <= 2 ln x)
    return boost::math::gamma_p(half, std::log(x));
}

std::vector<double> LimitLaw::sample(std::uint64_t seed, std::size_t count) const {
    RandomStream rs(seed, 0x6c61'77ULL);  // fixed stream for law sampling
    std::vector<double> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        double chi2 = 0.0;
        for (int j = 0; j < degrees_; ++j) {
            double z = rs.next_normal();
            chi2 += z * z;
        }
        out.push_back(variant_ == Variant::exp_chi_squared
                          ? std::pow(2.0, 0.5 * static_cast<double>(degrees_)) *
                                std::exp(-0.5 * chi2)
                          : std::exp(0.5 * chi2));
    }
    return out;
}

EmpiricalDistribution::EmpiricalDistribution(std::vector<double> samples)
    : samples_(std::move(samples)) {
    if (samples_.empty()) throw Error("empirical distribution needs samples");
    std::sort(samples_.begin(), samples_.end());
}

double EmpiricalDistribution::mean() const {
    return std::accumulate(samples_.begin(), samples_.end(), 0.0) /
           static_cast<double>(samples_.size());
}

double EmpiricalDistribution::ks_distance(const LimitLaw& law) const {
    return ks_distance([&law](double x) { return law.cdf_clamped(x); });
}

double EmpiricalDistribution::ks_distance(const std::function<double(double)>& cdf) const {
    const double n = static_cast<double>(samples_.size());
    double worst = 0.0;
    for (std::size_t i = 0; i < samples_.size(); ++i) {
        double f = cdf(samples_[i]);
        worst = std::max(worst, std::max(f - static_cast<double>(i) / n,
                                         static_cast<double>(i + 1) / n - f));
    }
    return worst;
}

}  // namespace rwadic
