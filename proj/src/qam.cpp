#include "socc/qam.hpp"

#include <cmath>
#include <stdexcept>

namespace socc {
namespace qam16 {

namespace {

// Gray-coded 4-PAM levels indexed by (b_hi << 1) | b_lo, normalized so a
// uniform symbol has unit energy across both components (E|level|^2 = 1/2).
constexpr double kInvSqrt10 = 0.31622776601683794;
constexpr double kLevels[4] = {-3.0 * kInvSqrt10, -1.0 * kInvSqrt10, 3.0 * kInvSqrt10,
                               1.0 * kInvSqrt10};
constexpr int kBitHi[4] = {0, 0, 1, 1};
constexpr int kBitLo[4] = {0, 1, 0, 1};

double component(std::uint8_t hi, std::uint8_t lo, double scale) {
    return scale * kLevels[(hi << 1) | lo];
}

// ln(P[b=0]/P[b=1]) for one 4-PAM component; exact log-sum over the levels.
void component_llrs(double y, double noise_var, double scale, double& llr_hi, double& llr_lo) {
    double metric[4];
    double best = -1e300;
    for (int i = 0; i < 4; ++i) {
        const double d = y - scale * kLevels[i];
        metric[i] = -d * d / (2.0 * noise_var);
        best = std::max(best, metric[i]);
    }
    double num_hi = 0.0, den_hi = 0.0, num_lo = 0.0, den_lo = 0.0;
    for (int i = 0; i < 4; ++i) {
        const double e = std::exp(metric[i] - best);
        (kBitHi[i] == 0 ? num_hi : den_hi) += e;
        (kBitLo[i] == 0 ? num_lo : den_lo) += e;
    }
    llr_hi = std::log(num_hi) - std::log(den_hi);
    llr_lo = std::log(num_lo) - std::log(den_lo);
}

}  // namespace

Eigen::VectorXcd modulate(std::span<const std::uint8_t> bits, double amplitude_scale) {
    if (bits.size() % kBitsPerSymbol != 0) {
        throw std::invalid_argument("qam16::modulate: bit count must be divisible by 4");
    }
    const std::size_t n = bits.size() / kBitsPerSymbol;
    Eigen::VectorXcd out(static_cast<Eigen::Index>(n));
    for (std::size_t s = 0; s < n; ++s) {
        const std::uint8_t* b = bits.data() + 4 * s;
        out[static_cast<Eigen::Index>(s)] = {component(b[0], b[1], amplitude_scale),
                                             component(b[2], b[3], amplitude_scale)};
    }
    return out;
}

Eigen::VectorXd demodulate_llr(const Eigen::VectorXcd& symbols,
                               double noise_var_per_component,
                               double amplitude_scale) {
    if (!(noise_var_per_component > 0.0)) {
        throw std::invalid_argument("qam16::demodulate_llr: noise variance must be positive");
    }
    Eigen::VectorXd llrs(symbols.size() * kBitsPerSymbol);
    for (Eigen::Index s = 0; s < symbols.size(); ++s) {
        double* l = llrs.data() + 4 * s;
        component_llrs(symbols[s].real(), noise_var_per_component, amplitude_scale, l[0], l[1]);
        component_llrs(symbols[s].imag(), noise_var_per_component, amplitude_scale, l[2], l[3]);
    }
    return llrs;
}

std::vector<std::uint8_t> hard_decisions(const Eigen::VectorXd& llrs) {
    std::vector<std::uint8_t> bits(static_cast<std::size_t>(llrs.size()));
    for (Eigen::Index i = 0; i < llrs.size(); ++i) {
        bits[static_cast<std::size_t>(i)] = llrs[i] < 0.0 ? 1 : 0;
    }
    return bits;
}

double peak_component(double amplitude_scale) { return amplitude_scale * 3.0 * kInvSqrt10; }

}  // namespace qam16

Eigen::VectorXd complex_to_real_interleaved(const Eigen::VectorXcd& x) {
    Eigen::VectorXd out(2 * x.size());
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        out[2 * i] = x[i].real();
        out[2 * i + 1] = x[i].imag();
    }
    return out;
}

Eigen::VectorXcd real_interleaved_to_complex(const Eigen::VectorXd& x) {
    if (x.size() % 2 != 0) {
        throw std::invalid_argument("real_interleaved_to_complex: odd length");
    }
    Eigen::VectorXcd out(x.size() / 2);
    for (Eigen::Index i = 0; i < out.size(); ++i) {
        out[i] = {x[2 * i], x[2 * i + 1]};
    }
    return out;
}

}  // namespace socc
