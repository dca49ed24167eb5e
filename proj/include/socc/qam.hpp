#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <span>
#include <vector>

namespace socc {
namespace qam16 {

inline constexpr int kBitsPerSymbol = 4;

/// Gray-mapped 16QAM with unit average symbol energy. Bits map pairwise onto
/// the I and Q 4-PAM components; scale by sqrt(power) for a power budget.
Eigen::VectorXcd modulate(std::span<const std::uint8_t> bits, double amplitude_scale = 1.0);

/// Exact per-bit log-likelihood ratios ln(P[b=0]/P[b=1]) for AWGN with the
/// given variance per real component; `amplitude_scale` must match the
/// modulator.
Eigen::VectorXd demodulate_llr(const Eigen::VectorXcd& symbols,
                               double noise_var_per_component,
                               double amplitude_scale = 1.0);

std::vector<std::uint8_t> hard_decisions(const Eigen::VectorXd& llrs);

/// Largest |I| or |Q| component over the constellation at the given scale.
double peak_component(double amplitude_scale = 1.0);

}  // namespace qam16

/// (re, im) pairs of a complex signal laid out as a real vector of twice the
/// length: x_real[2i] = Re X_i, x_real[2i+1] = Im X_i.
Eigen::VectorXd complex_to_real_interleaved(const Eigen::VectorXcd& x);
Eigen::VectorXcd real_interleaved_to_complex(const Eigen::VectorXd& x);

}  // namespace socc
