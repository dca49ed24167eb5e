#include "socc/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "socc/qam.hpp"

namespace socc {

namespace {

NoiseModel parse_noise(const nlohmann::json& j) {
    if (j.contains("gaussian")) {
        const auto& g = j.at("gaussian");
        return NoiseModel::gaussian(db_to_linear(g.value("power_db", 0.0)));
    }
    if (j.contains("middleton")) {
        const auto& m = j.at("middleton");
        return NoiseModel::middleton(m.at("impulsive_index").get<double>(),
                                     m.at("gamma").get<double>(),
                                     db_to_linear(m.value("power_db", 0.0)));
    }
    throw std::invalid_argument("noise: expected {\"gaussian\": ...} or {\"middleton\": ...}");
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

/// Runs `total` trials in chunks of fixed size; each chunk is evaluated by
/// `workers` threads and reduced strictly in trial order, so results are
/// independent of the worker count. `consume` returns false to stop early
/// (evaluated only at chunk boundaries).
template <typename Result, typename Work, typename Consume>
void chunked_parallel(long long total, int workers, Work&& work, Consume&& consume) {
    constexpr long long kChunk = 64;
    if (workers <= 0) {
        workers = static_cast<int>(std::thread::hardware_concurrency());
        workers = std::max(workers, 1);
    }
    std::vector<Result> results(kChunk);
    for (long long start = 0; start < total; start += kChunk) {
        const long long count = std::min(kChunk, total - start);
        if (workers == 1) {
            for (long long i = 0; i < count; ++i) {
                results[i] = work(start + i);
            }
        } else {
            std::vector<std::thread> pool;
            pool.reserve(workers);
            for (int w = 0; w < workers; ++w) {
                pool.emplace_back([&, w] {
                    for (long long i = w; i < count; i += workers) {
                        results[i] = work(start + i);
                    }
                });
            }
            for (auto& t : pool) {
                t.join();
            }
        }
        for (long long i = 0; i < count; ++i) {
            if (!consume(results[i])) {
                return;
            }
        }
    }
}

}  // namespace

ExperimentSpec ExperimentSpec::from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open config: " + path);
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    return from_json_text(buffer.str());
}

ExperimentSpec ExperimentSpec::from_json_text(const std::string& text) {
    const nlohmann::json j = nlohmann::json::parse(text);
    ExperimentSpec spec;
    spec.seed = j.value("seed", std::uint64_t{1});
    spec.workers = j.value("workers", 0);

    if (j.contains("scenario")) {
        const auto& s = j.at("scenario");
        spec.analog_users = s.value("analog_users", spec.analog_users);
        if (s.contains("analog_amplitude_db")) {
            spec.analog_amplitude = db_to_linear(s.at("analog_amplitude_db").get<double>());
        } else if (s.contains("analog_power_db")) {
            spec.analog_amplitude = std::sqrt(db_to_linear(s.at("analog_power_db").get<double>()));
        }
        spec.digital_power = db_to_linear(s.value("digital_power_db", 0.0));
        spec.analog_rate = s.value("analog_rate", spec.analog_rate);
        spec.block_length = s.value("block_length", spec.block_length);
        if (s.contains("code")) {
            const auto& c = s.at("code");
            spec.var_degree = c.value("var_degree", spec.var_degree);
            spec.check_degree = c.value("check_degree", spec.check_degree);
            spec.code_seed = c.value("seed", spec.code_seed);
        }
        if (s.contains("noise")) {
            spec.noise = parse_noise(s.at("noise"));
        }
    }
    if (j.contains("ber_sweep")) {
        const auto& b = j.at("ber_sweep");
        spec.noise_power_db_grid = b.value("noise_power_db", spec.noise_power_db_grid);
        spec.max_frames = b.value("max_frames", spec.max_frames);
        spec.target_frame_errors = b.value("target_frame_errors", spec.target_frame_errors);
    }
    if (j.contains("histogram")) {
        const auto& h = j.at("histogram");
        spec.histogram_codewords = h.value("codewords", spec.histogram_codewords);
        spec.histogram_bin_width = h.value("bin_width", spec.histogram_bin_width);
    }
    if (j.contains("bounds")) {
        const auto& b = j.at("bounds");
        const std::string mode = b.value("mode", std::string("beta_sweep"));
        if (mode == "beta_sweep") {
            spec.bounds_mode = BoundsMode::BetaSweep;
        } else if (mode == "digital_users_sweep") {
            spec.bounds_mode = BoundsMode::DigitalUsersSweep;
        } else {
            throw std::invalid_argument("bounds.mode must be beta_sweep or digital_users_sweep");
        }
        spec.bounds_digital_users = b.value("digital_users", spec.bounds_digital_users);
        spec.bounds_beta = b.value("beta", spec.bounds_beta);
        spec.bounds_beta_grid = b.value("beta_grid", spec.bounds_beta_grid);
        spec.bounds_digital_power = db_to_linear(b.value("digital_power_db", 8.0));
        if (b.contains("digital_amplitude")) {
            spec.bounds_digital_amplitude = b.at("digital_amplitude").get<double>();
        }
        spec.bounds_analog_users = b.value("analog_users", spec.bounds_analog_users);
        spec.bounds_analog_amplitude = db_to_linear(b.value("analog_amplitude_db", 2.5));
        spec.bounds_noise_power = db_to_linear(b.value("noise_power_db", 0.0));
        spec.bounds_grid_points = b.value("grid_points", spec.bounds_grid_points);
    }
    return spec;
}

namespace {

LdpcSoccLink build_link(const ExperimentSpec& spec) {
    LdpcSoccLink::Params params;
    params.analog_users = spec.analog_users;
    params.analog_amplitude = spec.analog_amplitude;
    params.digital_power = spec.digital_power;
    params.block_length_per_computation =
        static_cast<int>(std::llround(1.0 / beta_prime(spec.analog_rate)));
    params.code = std::make_shared<LdpcCode>(
        LdpcCode::regular(spec.block_length, spec.var_degree, spec.check_degree, spec.code_seed));
    params.noise = spec.noise;
    return LdpcSoccLink(std::move(params));
}

}  // namespace

std::vector<BerRow> run_ber_sweep(const ExperimentSpec& spec) {
    if (spec.noise_power_db_grid.empty()) {
        throw std::invalid_argument("run_ber_sweep: empty noise grid");
    }
    const LdpcSoccLink link = build_link(spec);
    const int blocks = link.partition().block_count();
    const int k = link.message_bits();

    std::vector<BerRow> rows;
    for (std::size_t g = 0; g < spec.noise_power_db_grid.size(); ++g) {
        const double noise_db = spec.noise_power_db_grid[g];
        LdpcSoccLink::FrameOptions options;
        options.noise_power = db_to_linear(noise_db);

        BerRow row;
        row.noise_power_db = noise_db;
        double mse_sum = 0.0;
        long long mse_count = 0;

        // grid points get disjoint trial ranges so their streams never overlap
        const std::uint64_t trial_base = static_cast<std::uint64_t>(g) << 32;
        auto work = [&](long long trial) {
            return link.run_frame(spec.seed, trial_base + static_cast<std::uint64_t>(trial),
                                  options);
        };

        long long bit_errors = 0;
        chunked_parallel<LdpcSoccLink::FrameResult>(
            spec.max_frames, spec.workers, work,
            [&](const LdpcSoccLink::FrameResult& r) {
                row.frames += 1;
                row.digital_bits += k;
                bit_errors += r.bit_errors;
                row.frame_errors += r.frame_error ? 1 : 0;
                const Eigen::VectorXd err = r.analog_estimates - r.analog_truth;
                mse_sum += err.squaredNorm();
                mse_count += blocks;
                return row.frame_errors < spec.target_frame_errors;
            });

        row.digital_ber = static_cast<double>(bit_errors) / static_cast<double>(row.digital_bits);
        row.digital_fer = static_cast<double>(row.frame_errors) / static_cast<double>(row.frames);
        row.analog_mse = mse_sum / static_cast<double>(mse_count);
        rows.push_back(row);
    }
    return rows;
}

AmplitudeHistogram run_amplitude_histogram(const ExperimentSpec& spec) {
    const LdpcSoccLink link = build_link(spec);
    AmplitudeHistogram histogram;
    histogram.codewords = spec.histogram_codewords;

    std::vector<double> ratios;
    ratios.reserve(static_cast<std::size_t>(spec.histogram_codewords));
    struct Sample {
        double ratio;
        double power_ratio;
    };
    chunked_parallel<Sample>(
        spec.histogram_codewords, spec.workers,
        [&](long long index) {
            const auto signals = link.random_codeword(spec.seed, static_cast<std::uint64_t>(index));
            const Eigen::VectorXcd before = real_interleaved_to_complex(signals.base_real);
            const Eigen::VectorXcd after = real_interleaved_to_complex(signals.wrapped_real);
            return Sample{after.cwiseAbs().maxCoeff() / before.cwiseAbs().maxCoeff(),
                          signals.wrapped_real.squaredNorm() / signals.base_real.squaredNorm()};
        },
        [&](const Sample& s) {
            if (std::abs(s.power_ratio - 1.0) > 1e-9) {
                throw std::runtime_error("amplitude histogram: power identity violated");
            }
            ratios.push_back(s.ratio);
            return true;
        });

    std::vector<double> sorted = ratios;
    std::sort(sorted.begin(), sorted.end());
    histogram.max_ratio = sorted.back();
    histogram.quantile_95 = sorted[static_cast<std::size_t>(0.95 * (sorted.size() - 1))];

    const double width = spec.histogram_bin_width;
    const double lo = std::floor(sorted.front() / width) * width;
    const int bins = static_cast<int>(std::floor((sorted.back() - lo) / width)) + 1;
    std::vector<long long> counts(bins, 0);
    for (double r : ratios) {
        counts[std::min<int>(bins - 1, static_cast<int>((r - lo) / width))] += 1;
    }
    for (int b = 0; b < bins; ++b) {
        histogram.rows.push_back(
            {lo + b * width, static_cast<double>(counts[b]) / static_cast<double>(ratios.size())});
    }
    return histogram;
}

std::vector<BoundsRow> run_bounds_export(const ExperimentSpec& spec) {
    BaOptions options;
    options.grid_points = spec.bounds_grid_points;
    const double power = spec.bounds_digital_power;
    const double amplitude =
        spec.bounds_digital_amplitude.value_or(2.0 * std::sqrt(2.0 * power));
    const double noise = spec.bounds_noise_power;
    const double analog_amp = spec.bounds_analog_amplitude;

    std::vector<BoundsRow> rows;
    if (spec.bounds_mode == ExperimentSpec::BoundsMode::DigitalUsersSweep) {
        const double beta = spec.bounds_beta;
        const double mse = socc_mse(beta, noise, analog_amp);
        // one input distribution serves every user count
        const double shrink = (std::sqrt(2.0) - 1.0) / std::sqrt(2.0);
        const DiscreteDistribution input =
            ba_constrained_capacity(power / (1.0 - beta), amplitude * shrink, noise, options).input;
        for (int users = 1; users <= spec.bounds_digital_users; ++users) {
            BoundsRow row;
            row.x = users;
            std::vector<DiscreteDistribution> inputs(users, input);
            row.achievable_sum_rate_nats =
                (1.0 - beta_prime(beta)) * constrained_sum_rate(inputs, noise);
            const std::vector<double> powers(users, power);
            row.converse_sum_rate_nats = outer_bound_sum_rate(
                powers, spec.bounds_analog_users, analog_amp, noise, beta, mse);
            row.trivial_converse_nats = gaussian_capacity(users * power / noise);
            rows.push_back(row);
        }
        return rows;
    }

    if (spec.bounds_beta_grid.empty()) {
        throw std::invalid_argument("run_bounds_export: beta sweep needs a beta grid");
    }
    const int users = spec.bounds_digital_users;
    const std::vector<double> powers(users, power);
    const double trivial = gaussian_capacity(users * power / noise);
    const double shrink = (std::sqrt(2.0) - 1.0) / std::sqrt(2.0);
    for (double beta : spec.bounds_beta_grid) {
        BoundsRow row;
        row.x = beta;
        const double mse = socc_mse(beta, noise, analog_amp);
        const DiscreteDistribution input =
            ba_constrained_capacity(power / (1.0 - beta), amplitude * shrink, noise, options).input;
        std::vector<DiscreteDistribution> inputs(users, input);
        row.achievable_sum_rate_nats =
            (1.0 - beta_prime(beta)) * constrained_sum_rate(inputs, noise);
        row.converse_sum_rate_nats =
            outer_bound_sum_rate(powers, spec.bounds_analog_users, analog_amp, noise, beta, mse);
        row.trivial_converse_nats = trivial;
        rows.push_back(row);
    }
    return rows;
}

void write_csv(std::ostream& out, const std::vector<BerRow>& rows) {
    out << "noise_power_db,digital_ber,digital_fer,analog_mse,frames,digital_bits,frame_errors\n";
    for (const auto& r : rows) {
        out << format_double(r.noise_power_db) << ',' << format_double(r.digital_ber) << ','
            << format_double(r.digital_fer) << ',' << format_double(r.analog_mse) << ','
            << r.frames << ',' << r.digital_bits << ',' << r.frame_errors << '\n';
    }
}

void write_csv(std::ostream& out, const AmplitudeHistogram& histogram) {
    out << "bin_left,relative_frequency\n";
    for (const auto& r : histogram.rows) {
        out << format_double(r.bin_left) << ',' << format_double(r.relative_frequency) << '\n';
    }
}

void write_csv(std::ostream& out, const std::vector<BoundsRow>& rows,
               ExperimentSpec::BoundsMode mode) {
    out << (mode == ExperimentSpec::BoundsMode::BetaSweep ? "beta" : "k_d")
        << ",achievable_sum_rate_nats,converse_sum_rate_nats,trivial_converse_nats\n";
    for (const auto& r : rows) {
        out << format_double(r.x) << ',' << format_double(r.achievable_sum_rate_nats) << ','
            << format_double(r.converse_sum_rate_nats) << ','
            << format_double(r.trivial_converse_nats) << '\n';
    }
}

}  // namespace socc
