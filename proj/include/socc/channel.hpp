#pragma once

#include <Eigen/Dense>
#include <complex>
#include <span>
#include <vector>

#include "socc/rng.hpp"

namespace socc {

/// Additive noise model for the memoryless MAC: plain Gaussian, or Middleton
/// Class A impulsive noise (Poisson mixture of Gaussians) normalized so that
/// its marginal variance equals the configured power exactly.
class NoiseModel {
public:
    static NoiseModel gaussian(double power);
    static NoiseModel middleton(double impulsive_index, double gamma, double power);

    bool is_gaussian() const { return gaussian_; }
    double power() const { return power_; }
    double impulsive_index() const { return impulsive_index_; }
    double gaussian_to_impulsive_ratio() const { return gamma_; }

    NoiseModel with_power(double power) const;

    double sample(Rng& rng) const;
    void fill(Eigen::VectorXd& out, Rng& rng) const;

    /// Marginal density. For Middleton the Poisson series is truncated once
    /// the remaining mass drops below 1e-12.
    double pdf(double x) const;

private:
    NoiseModel() = default;

    bool gaussian_ = true;
    double power_ = 1.0;
    double impulsive_index_ = 0.0;
    double gamma_ = 0.0;

    // conditional std dev given m impulses: sigma_m^2 = power*(m/A + G)/(1 + G)
    double sigma_m(int m) const;
};

/// How the complex noise power splits across real components.
enum class ComplexNoiseSplit {
    HalfPerComponent,  ///< total complex variance sigma^2, sigma^2/2 per component
    PerComponent,      ///< sigma^2 per real component
};

/// y_i = sum_k x_{k,i} + bias_i + N_i over the real adder channel.
Eigen::VectorXd mac_output(std::span<const Eigen::VectorXd> inputs,
                           const Eigen::VectorXd& bias,
                           const NoiseModel& noise,
                           Rng& rng);

/// Y_i = sum_k h_k X_{k,i} + N_i with circular complex Gaussian noise.
Eigen::VectorXcd fading_mac_output(std::span<const Eigen::VectorXcd> inputs,
                                   std::span<const std::complex<double>> coefficients,
                                   double noise_power,
                                   ComplexNoiseSplit split,
                                   Rng& rng);

}  // namespace socc
