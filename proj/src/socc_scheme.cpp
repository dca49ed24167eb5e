#include "socc/socc_scheme.hpp"

#include <cmath>
#include <stdexcept>

#include "socc/qam.hpp"

namespace socc {

Eigen::VectorXd analog_encode(const BlockPartition& partition, double amplitude,
                              const Eigen::VectorXd& values) {
    if (values.size() != partition.block_count()) {
        throw std::invalid_argument("analog_encode: one value per block required");
    }
    Eigen::VectorXd out(partition.total());
    int pos = 0;
    for (int l = 0; l < partition.block_count(); ++l) {
        const double v = values[l];
        if (!(v >= -1.0 && v <= 1.0)) {
            throw std::invalid_argument("analog_encode: values must lie in [-1, 1]");
        }
        out.segment(pos, partition.lengths[l]).setConstant(amplitude * v);
        pos += partition.lengths[l];
    }
    return out;
}

Eigen::VectorXd analog_decode(const BlockPartition& partition, double amplitude,
                              const Eigen::VectorXd& received) {
    if (received.size() != partition.total()) {
        throw std::invalid_argument("analog_decode: length mismatch");
    }
    Eigen::VectorXd estimates(partition.block_count());
    int pos = 0;
    for (int l = 0; l < partition.block_count(); ++l) {
        const int len = partition.lengths[l];
        estimates[l] = received.segment(pos, len).sum() / (static_cast<double>(len) * amplitude);
        pos += len;
    }
    return estimates;
}

SoccRoundResult socc_round(const SoccConfig& config, const WrappedCode& code,
                           const std::vector<Eigen::VectorXd>& analog_values,
                           const std::vector<int>& digital_messages, Rng& noise_rng) {
    if (static_cast<int>(analog_values.size()) != config.analog_users) {
        throw std::invalid_argument("socc_round: one value vector per analog user required");
    }
    if (static_cast<int>(digital_messages.size()) != code.base().users()) {
        throw std::invalid_argument("socc_round: one message per digital user required");
    }
    if (code.block_length() != config.partition.total()) {
        throw std::invalid_argument("socc_round: code and partition disagree on block length");
    }

    std::vector<Eigen::VectorXd> inputs;
    inputs.reserve(analog_values.size() + digital_messages.size());
    Eigen::VectorXd true_sums = Eigen::VectorXd::Zero(config.partition.block_count());
    for (const auto& values : analog_values) {
        true_sums += values;
        inputs.push_back(analog_encode(config.partition, config.analog_amplitude, values));
    }
    for (std::size_t k = 0; k < digital_messages.size(); ++k) {
        inputs.push_back(code.encode(static_cast<int>(k), digital_messages[k]));
    }

    const Eigen::VectorXd zero_bias = Eigen::VectorXd::Zero(config.partition.total());
    const Eigen::VectorXd y = mac_output(inputs, zero_bias, config.noise, noise_rng);

    SoccRoundResult result;
    result.estimates = analog_decode(config.partition, config.analog_amplitude, y);
    result.messages = code.decode(y);
    result.estimate_errors = result.estimates - true_sums;
    result.digital_error = false;
    for (std::size_t k = 0; k < digital_messages.size(); ++k) {
        if (result.messages[k] != digital_messages[k]) {
            result.digital_error = true;
        }
    }
    return result;
}

double NomographicFunction::delta_max() const {
    double d = 0.0;
    for (const auto& [lo, hi] : pre_range) {
        d = std::max(d, hi - lo);
    }
    return d;
}

NomographicFunction NomographicFunction::sum(int users) {
    NomographicFunction fn;
    for (int k = 0; k < users; ++k) {
        fn.pre.push_back([](double s) { return s; });
        fn.pre_range.emplace_back(-1.0, 1.0);
    }
    fn.post = [](double x) { return x; };
    fn.post_domain = {-static_cast<double>(users), static_cast<double>(users)};
    fn.increment = [](double t) { return t; };
    fn.increment_inverse = [](double e) { return e; };
    return fn;
}

NomographicFunction NomographicFunction::p_norm(int users, double p) {
    if (!(p >= 1.0)) {
        throw std::invalid_argument("NomographicFunction::p_norm: p must be >= 1");
    }
    NomographicFunction fn;
    for (int k = 0; k < users; ++k) {
        fn.pre.push_back([p](double s) { return std::pow(std::abs(s), p); });
        fn.pre_range.emplace_back(0.0, 1.0);
    }
    // |x^{1/p} - y^{1/p}| <= |x - y|^{1/p} for p >= 1 on [0, inf)
    fn.post = [p](double x) { return std::pow(x, 1.0 / p); };
    fn.post_domain = {0.0, static_cast<double>(users)};
    fn.increment = [p](double t) { return std::pow(t, 1.0 / p); };
    fn.increment_inverse = [p](double e) { return std::pow(e, p); };
    return fn;
}

NomographicFunction NomographicFunction::weighted_sum(std::vector<double> weights) {
    NomographicFunction fn;
    for (double w : weights) {
        fn.pre.push_back([w](double s) { return w * s; });
        fn.pre_range.emplace_back(std::min(-w, w), std::max(-w, w));
    }
    double total = 0.0;
    for (double w : weights) {
        total += std::abs(w);
    }
    fn.post = [](double x) { return x; };
    fn.post_domain = {-total, total};
    fn.increment = [](double t) { return t; };
    fn.increment_inverse = [](double e) { return e; };
    return fn;
}

double nomographic_preprocess(const NomographicFunction& fn, int user, double value) {
    const auto& [lo, hi] = fn.pre_range[user];
    const double phi = fn.pre[user](value);
    if (phi < lo - 1e-12 || phi > hi + 1e-12) {
        throw std::domain_error("nomographic_preprocess: phi value outside declared range");
    }
    return 2.0 * (phi - lo) / fn.delta_max() - 1.0;
}

double nomographic_postprocess(const NomographicFunction& fn, double estimate, int users) {
    double arg = (estimate + static_cast<double>(users)) * fn.delta_max() / 2.0;
    for (int k = 0; k < users; ++k) {
        arg += fn.pre_range[k].first;
    }
    arg = std::clamp(arg, fn.post_domain.first, fn.post_domain.second);
    return fn.post(arg);
}

Eigen::VectorXcd fading_transmit_transform(const Eigen::VectorXd& real_signal,
                                           std::complex<double> coefficient) {
    if (coefficient == std::complex<double>(0.0, 0.0)) {
        throw std::invalid_argument("fading_transmit_transform: zero fading coefficient");
    }
    return real_interleaved_to_complex(real_signal) / coefficient;
}

FmonRoundResult fmon_fading_round(const NomographicFunction& fn,
                                  const std::vector<Eigen::VectorXd>& analog_inputs,
                                  const std::vector<std::complex<double>>& coefficients,
                                  const std::vector<double>& amplitude_limits,
                                  const BlockPartition& real_partition, double noise_power,
                                  ComplexNoiseSplit split, Rng& rng) {
    const int users = static_cast<int>(analog_inputs.size());
    if (users == 0 || users != fn.users() || coefficients.size() != analog_inputs.size() ||
        amplitude_limits.size() != analog_inputs.size()) {
        throw std::invalid_argument("fmon_fading_round: inconsistent user counts");
    }
    for (const auto& len : real_partition.lengths) {
        if (len % 2 != 0) {
            throw std::invalid_argument("fmon_fading_round: real blocks must pair into complex uses");
        }
    }
    const int blocks = real_partition.block_count();

    // effective analog amplitude: weakest user after fading, shared by all
    double effective = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < coefficients.size(); ++k) {
        effective = std::min(effective, std::abs(coefficients[k]) * amplitude_limits[k]);
    }
    const double real_amplitude = effective / std::sqrt(2.0);

    Eigen::VectorXd true_values(blocks);
    std::vector<Eigen::VectorXcd> tx(users);
    for (int l = 0; l < blocks; ++l) {
        double acc = 0.0;
        for (int k = 0; k < users; ++k) {
            acc += fn.pre[k](analog_inputs[k][l]);
        }
        true_values[l] = fn.post(std::clamp(acc, fn.post_domain.first, fn.post_domain.second));
    }
    for (int k = 0; k < users; ++k) {
        Eigen::VectorXd scaled(blocks);
        for (int l = 0; l < blocks; ++l) {
            scaled[l] = nomographic_preprocess(fn, k, analog_inputs[k][l]);
        }
        const Eigen::VectorXd real_signal = analog_encode(real_partition, real_amplitude, scaled);
        tx[k] = fading_transmit_transform(real_signal, coefficients[k]);
    }

    const Eigen::VectorXcd y = fading_mac_output(tx, coefficients, noise_power, split, rng);
    const Eigen::VectorXd y_real = complex_to_real_interleaved(y);
    const Eigen::VectorXd raw = analog_decode(real_partition, real_amplitude, y_real);

    FmonRoundResult result;
    result.true_values = true_values;
    result.estimates.resize(blocks);
    for (int l = 0; l < blocks; ++l) {
        result.estimates[l] = nomographic_postprocess(fn, raw[l], users);
    }
    return result;
}

LdpcSoccLink::LdpcSoccLink(Params params) : params_(std::move(params)) {
    if (!params_.code) {
        throw std::invalid_argument("LdpcSoccLink: a code is required");
    }
    const int coded_bits = params_.code->block_length();
    if (coded_bits % qam16::kBitsPerSymbol != 0) {
        throw std::invalid_argument("LdpcSoccLink: coded bits must map onto whole 16QAM symbols");
    }
    const int base_real = coded_bits / qam16::kBitsPerSymbol * 2;
    partition_ = partition_for_base_length(base_real, params_.block_length_per_computation);
    // 16QAM at unit energy carries power 1 per complex symbol = 1/2 per real
    // use; the wrapper preserves total power, so scaling the constellation by
    // sqrt(P) meets an average power budget of P per complex use.
    qam_scale_ = std::sqrt(params_.digital_power);
}

LdpcSoccLink::CodewordSignals LdpcSoccLink::random_codeword(std::uint64_t seed,
                                                            std::uint64_t index) const {
    Rng msg_rng(seed, index, 0);
    std::vector<std::uint8_t> message(params_.code->message_length());
    for (auto& b : message) {
        b = static_cast<std::uint8_t>(msg_rng.next_u64() & 1);
    }
    const std::vector<std::uint8_t> codeword = params_.code->encode(message);
    const Eigen::VectorXcd symbols = qam16::modulate(codeword, qam_scale_);
    CodewordSignals signals;
    signals.base_real = complex_to_real_interleaved(symbols);
    signals.wrapped_real = wrap_signal(partition_, signals.base_real);
    return signals;
}

LdpcSoccLink::FrameResult LdpcSoccLink::run_frame(std::uint64_t seed, std::uint64_t trial) const {
    return run_frame(seed, trial, FrameOptions{});
}

LdpcSoccLink::FrameResult LdpcSoccLink::run_frame(std::uint64_t seed, std::uint64_t trial,
                                                  const FrameOptions& options) const {
    // independent substreams so enabling/disabling one part never shifts the
    // randomness of another
    Rng msg_rng(seed, trial, 0);
    Rng analog_rng(seed, trial, 1);
    Rng noise_rng(seed, trial, 2);

    const LdpcCode& code = *params_.code;
    const int blocks = partition_.block_count();
    const int n = partition_.total();

    std::vector<std::uint8_t> message(code.message_length());
    for (auto& b : message) {
        b = static_cast<std::uint8_t>(msg_rng.next_u64() & 1);
    }

    // block sums uniform in [-K_a, K_a], split equally across users
    Eigen::VectorXd block_sums(blocks);
    for (int l = 0; l < blocks; ++l) {
        block_sums[l] = params_.analog_users * (2.0 * analog_rng.uniform() - 1.0);
    }

    Eigen::VectorXd y = Eigen::VectorXd::Zero(n);
    FrameResult result;

    if (options.digital_enabled) {
        const std::vector<std::uint8_t> codeword = code.encode(message);
        const Eigen::VectorXcd symbols = qam16::modulate(codeword, qam_scale_);
        const Eigen::VectorXd base_real = complex_to_real_interleaved(symbols);
        const Eigen::VectorXd wrapped = wrap_signal(partition_, base_real);
        result.power_ratio = wrapped.squaredNorm() / base_real.squaredNorm();
        result.amplitude_ratio_real =
            wrapped.cwiseAbs().maxCoeff() / base_real.cwiseAbs().maxCoeff();
        const Eigen::VectorXcd wrapped_symbols = real_interleaved_to_complex(wrapped);
        result.amplitude_ratio_complex = wrapped_symbols.cwiseAbs().maxCoeff() /
                                         symbols.cwiseAbs().maxCoeff();
        y += wrapped;
    }
    if (options.analog_enabled) {
        Eigen::VectorXd per_user = block_sums / static_cast<double>(params_.analog_users);
        for (int k = 0; k < params_.analog_users; ++k) {
            y += analog_encode(partition_, params_.analog_amplitude, per_user);
        }
    }

    NoiseModel noise = params_.noise;
    if (options.noise_power) {
        noise = noise.with_power(*options.noise_power);
    }
    // noise power is quoted per complex channel use; the real channel sees
    // half of it in each component
    NoiseModel real_noise = noise.with_power(noise.power() / 2.0);
    Eigen::VectorXd noise_vec(n);
    real_noise.fill(noise_vec, noise_rng);
    y += noise_vec;

    result.analog_estimates = analog_decode(partition_, params_.analog_amplitude, y);
    result.analog_truth = block_sums;

    if (options.digital_enabled) {
        const Eigen::VectorXd base_rx = unwrap_signal(partition_, y);
        const Eigen::VectorXcd rx_symbols = real_interleaved_to_complex(base_rx);
        const Eigen::VectorXd llrs =
            qam16::demodulate_llr(rx_symbols, real_noise.power(), qam_scale_);
        const auto decoded =
            code.decode(std::span<const double>(llrs.data(), static_cast<std::size_t>(llrs.size())));
        result.converged = decoded.converged;
        std::uint64_t hash = 1469598103934665603ull;
        for (std::size_t i = 0; i < message.size(); ++i) {
            result.bit_errors += decoded.message[i] != message[i];
            hash = (hash ^ decoded.message[i]) * 1099511628211ull;
        }
        result.decoded_hash = hash;
        result.frame_error = result.bit_errors > 0;
    }
    return result;
}

}  // namespace socc
