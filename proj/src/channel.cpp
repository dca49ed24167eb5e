#include "socc/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace socc {

NoiseModel NoiseModel::gaussian(double power) {
    if (!(power >= 0.0)) {
        throw std::invalid_argument("NoiseModel: power must be >= 0");
    }
    NoiseModel m;
    m.gaussian_ = true;
    m.power_ = power;
    return m;
}

NoiseModel NoiseModel::middleton(double impulsive_index, double gamma, double power) {
    if (!(impulsive_index > 0.0) || !(gamma > 0.0) || !(power > 0.0)) {
        throw std::invalid_argument("NoiseModel: Middleton parameters must be positive");
    }
    NoiseModel m;
    m.gaussian_ = false;
    m.power_ = power;
    m.impulsive_index_ = impulsive_index;
    m.gamma_ = gamma;
    return m;
}

NoiseModel NoiseModel::with_power(double power) const {
    NoiseModel m = *this;
    m.power_ = power;
    if (!(power >= 0.0)) {
        throw std::invalid_argument("NoiseModel: power must be >= 0");
    }
    return m;
}

double NoiseModel::sigma_m(int m) const {
    const double v = power_ * (static_cast<double>(m) / impulsive_index_ + gamma_) / (1.0 + gamma_);
    return std::sqrt(v);
}

double NoiseModel::sample(Rng& rng) const {
    if (gaussian_) {
        return rng.gaussian(0.0, std::sqrt(power_));
    }
    const int m = rng.poisson(impulsive_index_);
    return rng.gaussian(0.0, sigma_m(m));
}

void NoiseModel::fill(Eigen::VectorXd& out, Rng& rng) const {
    for (Eigen::Index i = 0; i < out.size(); ++i) {
        out[i] = sample(rng);
    }
}

double NoiseModel::pdf(double x) const {
    if (gaussian_) {
        const double s2 = power_;
        return std::exp(-x * x / (2.0 * s2)) / std::sqrt(2.0 * M_PI * s2);
    }
    double p = std::exp(-impulsive_index_);  // Poisson(A) at m = 0
    double mass = 0.0;
    double density = 0.0;
    int m = 0;
    while (mass < 1.0 - 1e-12) {
        const double s = sigma_m(m);
        if (s > 0.0) {
            density += p * std::exp(-x * x / (2.0 * s * s)) / (std::sqrt(2.0 * M_PI) * s);
        } else if (x == 0.0) {
            // degenerate component only arises when gamma == 0
            throw std::domain_error("NoiseModel::pdf: degenerate Middleton component");
        }
        mass += p;
        ++m;
        p *= impulsive_index_ / static_cast<double>(m);
    }
    return density;
}

Eigen::VectorXd mac_output(std::span<const Eigen::VectorXd> inputs,
                           const Eigen::VectorXd& bias,
                           const NoiseModel& noise,
                           Rng& rng) {
    const Eigen::Index n = bias.size();
    for (const auto& x : inputs) {
        if (x.size() != n) {
            throw std::invalid_argument("mac_output: input length mismatch");
        }
    }
    Eigen::VectorXd y = bias;
    for (const auto& x : inputs) {
        y += x;
    }
    for (Eigen::Index i = 0; i < n; ++i) {
        y[i] += noise.sample(rng);
    }
    return y;
}

Eigen::VectorXcd fading_mac_output(std::span<const Eigen::VectorXcd> inputs,
                                   std::span<const std::complex<double>> coefficients,
                                   double noise_power,
                                   ComplexNoiseSplit split,
                                   Rng& rng) {
    if (inputs.size() != coefficients.size()) {
        throw std::invalid_argument("fading_mac_output: one coefficient per input required");
    }
    if (inputs.empty()) {
        throw std::invalid_argument("fading_mac_output: at least one input required");
    }
    const Eigen::Index n = inputs[0].size();
    Eigen::VectorXcd y = Eigen::VectorXcd::Zero(n);
    for (std::size_t k = 0; k < inputs.size(); ++k) {
        if (inputs[k].size() != n) {
            throw std::invalid_argument("fading_mac_output: input length mismatch");
        }
        y += coefficients[k] * inputs[k];
    }
    const double per_component =
        split == ComplexNoiseSplit::HalfPerComponent ? noise_power / 2.0 : noise_power;
    const double s = std::sqrt(per_component);
    for (Eigen::Index i = 0; i < n; ++i) {
        y[i] += std::complex<double>(rng.gaussian(0.0, s), rng.gaussian(0.0, s));
    }
    return y;
}

}  // namespace socc
