#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace rwadic {

// The two limit laws built from a chi-squared variable with `degrees`
// degrees of freedom:
//   exp variant      Y_D = 2^{D/2} e^{-chi^2/2}, support (0, 2^{D/2}], mean 1
//   inverse variant  W_D = e^{chi^2/2},          support [1, inf), infinite mean
class LimitLaw {
public:
    enum class Variant { exp_chi_squared, inverse_exp_chi_squared };

    LimitLaw(Variant variant, int degrees);

    static LimitLaw y_law(int degrees) { return {Variant::exp_chi_squared, degrees}; }
    static LimitLaw w_law(int degrees) { return {Variant::inverse_exp_chi_squared, degrees}; }

    Variant variant() const { return variant_; }
    int degrees() const { return degrees_; }
    double support_min() const;
    double support_max() const;  // +inf for the inverse variant

    // CDF inside the support closure; throws OutOfSupportError outside it
    double cdf(double x) const;
    // CDF extended by 0/1 outside the support (what the KS evaluator wants)
    double cdf_clamped(double x) const;

    // chi-squared drawn as a sum of squared standard normals
    std::vector<double> sample(std::uint64_t seed, std::size_t count) const;

private:
    Variant variant_;
    int degrees_;
};

// Sorted sample set with a two-sided Kolmogorov-Smirnov evaluator.
class EmpiricalDistribution {
public:
    explicit EmpiricalDistribution(std::vector<double> samples);

    const std::vector<double>& samples() const { return samples_; }
    std::size_t size() const { return samples_.size(); }
    double mean() const;

    double ks_distance(const LimitLaw& law) const;
    double ks_distance(const std::function<double(double)>& cdf) const;

private:
    std::vector<double> samples_;
};

}  // namespace rwadic
