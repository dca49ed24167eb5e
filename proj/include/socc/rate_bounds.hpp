#pragma once

#include <functional>
#include <span>
#include <vector>

#include "socc/partition.hpp"
#include "socc/socc_scheme.hpp"

namespace socc {

/// Gaussian capacity C(x) = (1/2) ln(1+x) in nats per real channel use.
double gaussian_capacity(double snr);

/// Achievable analog MSE of the scheme: beta' * sigma^2 / A_a^2.
double socc_mse(double beta, double noise_power, double analog_amplitude);

/// MSE of the time-sharing baseline (one channel use per computation).
double timeshare_mse(double noise_power, double analog_amplitude);

/// Converse sum-rate bound for a set of digital users:
/// min over k in {0..K_a} of C((sum P + k^2 A_a^2)/sigma^2)
///                         - max(0, (beta/2) ln(2 k^2 / (pi e V))).
double outer_bound_sum_rate(std::span<const double> digital_powers, int analog_users,
                            double analog_amplitude, double noise_power, double beta, double mse);

/// Tail level of a Gaussian estimator with the given variance:
/// delta = (1/e) sqrt(2/pi) exp(-e^2/2) with e standardized by sqrt(variance).
double gaussian_to_tail(double variance, double epsilon);

/// Chebyshev conversion: delta = min(1, variance / epsilon^2).
double mse_to_tail(double variance, double epsilon);

struct TailIntegral {
    double mse = 0.0;               ///< integral of delta(sqrt(t)) over [0, cutoff^2]
    double truncation_bound = 0.0;  ///< delta(cutoff) * extension, crude tail cap
    double quadrature_error = 0.0;
    bool divergent = false;         ///< tail does not decay fast enough to integrate
};

/// MSE from a tail profile: V = int_0^inf delta(sqrt(t)) dt, adaptive Simpson
/// on [0, cutoff^2] plus a tail estimate. Flags divergence when the tail mass
/// fails to vanish.
TailIntegral tail_to_mse(const std::function<double(double)>& delta, double epsilon_cutoff);

/// Tail prediction for a nomographic computation over blocks of
/// `complex_block_length` complex channel uses:
/// x = 2 (omega^{-1}(eps))^2 / delta_max^2 * A_a^2/sigma^2 * n_l and
/// delta = exp(-x)/sqrt(pi x).
double nomographic_tail(double epsilon, const NomographicFunction& fn, int complex_block_length,
                        double analog_amplitude, double noise_power);

/// Discrete input distribution supported on a regular grid.
struct DiscreteDistribution {
    double origin = 0.0;   ///< position of atom 0
    double spacing = 0.0;  ///< distance between adjacent atoms
    std::vector<double> prob;

    double atom(int i) const { return origin + spacing * i; }
    double second_moment() const;
};

/// Convolution of two distributions on grids with equal spacing.
DiscreteDistribution convolve(const DiscreteDistribution& a, const DiscreteDistribution& b);

/// Differential entropy of X + N with X discrete and N ~ N(0, noise_power).
double mixture_entropy(const DiscreteDistribution& x, double noise_power);

struct BaOptions {
    int grid_points = 201;
    double gap_tolerance = 1e-8;  ///< stop when the capacity bracket closes
    int max_iterations = 6000;
    /// When nonzero, atoms sit on multiples of this spacing instead of a
    /// grid derived from the amplitude; lets several users share one lattice
    /// so their inputs convolve exactly.
    double spacing = 0.0;
};

struct BaResult {
    double capacity = 0.0;  ///< nats per real channel use
    double residual = 0.0;  ///< final upper-minus-lower capacity gap; the
                            ///< capacity estimate is within this of the
                            ///< grid-restricted optimum
    double multiplier = 0.0;
    double second_moment = 0.0;
    bool converged = false;  ///< residual closed below 1e-5 nats
    DiscreteDistribution input;
};

/// Amplitude- and power-constrained single-user AWGN capacity via
/// Blahut-Arimoto over grid-supported inputs on [-A, A], with a bisected
/// Lagrange multiplier enforcing E X^2 <= P. Converges to the discrete-input
/// optimum from below as the grid refines.
BaResult ba_constrained_capacity(double power, double amplitude, double noise_power,
                                 const BaOptions& options = {});

/// Sum rate of the inner region for a user subset: I(sum_J X; Y | X_rest)
/// = h(sum_J X + N) - h(N) under independent per-user inputs.
double constrained_sum_rate(std::span<const DiscreteDistribution> users, double noise_power);

struct ConstrainedRegionOuter {
    std::vector<double> per_user_caps;      ///< single-user constrained capacities
    double unconstrained_sum_rate = 0.0;    ///< C(sum P / sigma^2)
};

ConstrainedRegionOuter constrained_region_outer(std::span<const double> powers,
                                                std::span<const double> amplitudes,
                                                double noise_power, const BaOptions& options = {});

/// Membership in the achievable region: (R_k / (1-beta'))_k must satisfy all
/// subset sum-rate constraints of the inner region evaluated at powers
/// P_k/(1-beta) and amplitudes A_k (sqrt2-1)/sqrt2.
bool inner_bound_membership(std::span<const double> rates, double beta,
                            std::span<const double> powers, std::span<const double> amplitudes,
                            double noise_power, const BaOptions& options = {});

/// Achievable digital sum rate of the full scheme in nats per real channel
/// use: (1 - beta') times the inner-region sum rate at the rescaled
/// constraints.
double achievable_sum_rate(int digital_users, double beta, double power, double amplitude,
                           double noise_power, const BaOptions& options = {});

}  // namespace socc
