#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "socc/channel.hpp"
#include "socc/ldpc.hpp"
#include "socc/mac_code.hpp"
#include "socc/partition.hpp"
#include "socc/rng.hpp"

namespace socc {

/// Scenario parameters shared by the transmit/receive chains.
struct SoccConfig {
    int analog_users = 1;                   // K_a
    double analog_amplitude = 1.0;          // A_a, linear
    BlockPartition partition;
    NoiseModel noise = NoiseModel::gaussian(1.0);
    ComplexNoiseSplit noise_split = ComplexNoiseSplit::HalfPerComponent;
};

/// Per-user analog pre-processor: repeat A_a * s_l across block l.
/// Every value must lie in [-1, 1].
Eigen::VectorXd analog_encode(const BlockPartition& partition, double amplitude,
                              const Eigen::VectorXd& values);

/// Block averages scaled by 1/(n_l * A_a); with Gaussian noise the estimate of
/// block l is N(sum_k s_{k,l}, sigma^2 / (n_l * A_a^2)).
Eigen::VectorXd analog_decode(const BlockPartition& partition, double amplitude,
                              const Eigen::VectorXd& received);

struct SoccRoundResult {
    Eigen::VectorXd estimates;          // f-hat per block
    std::vector<int> messages;          // joint decode of the digital code
    Eigen::VectorXd estimate_errors;    // f-hat minus true sums
    bool digital_error = false;
};

/// One full transmit/receive round: analog users send repeated values, the
/// digital users send through the wrapped code, everything superposes in the
/// channel, and the receiver runs block averaging plus unwrap-and-decode.
SoccRoundResult socc_round(const SoccConfig& config, const WrappedCode& code,
                           const std::vector<Eigen::VectorXd>& analog_values,
                           const std::vector<int>& digital_messages, Rng& noise_rng);

/// Nomographic representation f(s_1..s_K) = psi(sum_k phi_k(s_k)) together
/// with an increment majorant omega controlling psi's modulus of continuity.
struct NomographicFunction {
    std::vector<std::function<double(double)>> pre;         // phi_k
    std::vector<std::pair<double, double>> pre_range;       // [phi_min, phi_max] per user
    std::function<double(double)> post;                     // psi
    std::pair<double, double> post_domain;                  // clip range for psi's argument
    std::function<double(double)> increment;                // omega
    std::function<double(double)> increment_inverse;        // omega^{-1}

    int users() const { return static_cast<int>(pre.size()); }
    double delta_max() const;

    static NomographicFunction sum(int users);                          // values in [-1,1]
    static NomographicFunction p_norm(int users, double p);             // values in [-1,1]
    static NomographicFunction weighted_sum(std::vector<double> weights);  // values in [-1,1]
};

/// s' = 2(phi_k(s) - phi_min_k)/delta_max - 1, always in [-1, 1].
double nomographic_preprocess(const NomographicFunction& fn, int user, double value);

/// psi((f' + K)*delta_max/2 + sum_k phi_min_k) with the argument clipped to
/// psi's domain.
double nomographic_postprocess(const NomographicFunction& fn, double estimate, int users);

/// Pack a real signal of length 2n into n complex channel uses with channel
/// inversion: X_i = (x_{2i-1} + j x_{2i}) / h. Requires h != 0.
Eigen::VectorXcd fading_transmit_transform(const Eigen::VectorXd& real_signal,
                                           std::complex<double> coefficient);

/// One analog-only computation round over the complex fading MAC for a
/// function in the nomographic class; returns the post-processed estimates.
struct FmonRoundResult {
    Eigen::VectorXd estimates;      // one per block
    Eigen::VectorXd true_values;
};

FmonRoundResult fmon_fading_round(const NomographicFunction& fn,
                                  const std::vector<Eigen::VectorXd>& analog_inputs,
                                  const std::vector<std::complex<double>>& coefficients,
                                  const std::vector<double>& amplitude_limits,
                                  const BlockPartition& real_partition, double noise_power,
                                  ComplexNoiseSplit split, Rng& rng);

/// The production link: one digital LDPC/16QAM user plus K_a analog users
/// over the shared real AWGN (or Middleton) channel.
class LdpcSoccLink {
public:
    struct Params {
        int analog_users = 10;
        double analog_amplitude = 0.31622776601683794;  // -10 dB power
        double digital_power = 1.0;                     // average power budget
        int block_length_per_computation = 10;          // 1/beta'
        std::shared_ptr<const LdpcCode> code;
        NoiseModel noise = NoiseModel::gaussian(0.05);
    };

    explicit LdpcSoccLink(Params params);

    const BlockPartition& partition() const { return partition_; }
    const LdpcCode& code() const { return *params_.code; }
    int message_bits() const { return params_.code->message_length(); }
    int channel_uses() const { return partition_.total(); }

    struct FrameResult {
        int bit_errors = 0;
        bool frame_error = false;
        bool converged = false;
        std::uint64_t decoded_hash = 0;  // FNV over the decoded message bits
        Eigen::VectorXd analog_estimates;
        Eigen::VectorXd analog_truth;
        double amplitude_ratio_complex = 0.0;  // peak |X| after / before wrapping
        double amplitude_ratio_real = 0.0;     // peak component ratio
        double power_ratio = 0.0;              // wrapped / base total power
    };

    struct FrameOptions {
        bool analog_enabled = true;
        bool digital_enabled = true;
        std::optional<double> noise_power;  // overrides the configured power
    };

    /// Deterministic per-trial frame: all randomness comes from substreams of
    /// (seed, trial), so results do not depend on evaluation order.
    FrameResult run_frame(std::uint64_t seed, std::uint64_t trial,
                          const FrameOptions& options) const;
    FrameResult run_frame(std::uint64_t seed, std::uint64_t trial) const;

    /// Wrapped and unscaled base signals for one random message; used for
    /// amplitude statistics.
    struct CodewordSignals {
        Eigen::VectorXd base_real;
        Eigen::VectorXd wrapped_real;
    };
    CodewordSignals random_codeword(std::uint64_t seed, std::uint64_t index) const;

    double qam_scale() const { return qam_scale_; }

private:
    Params params_;
    BlockPartition partition_;
    double qam_scale_;
};

}  // namespace socc
