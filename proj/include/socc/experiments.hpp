#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "socc/rate_bounds.hpp"
#include "socc/socc_scheme.hpp"

namespace socc {

/// Scenario plus sweep description, loaded from a JSON config.
struct ExperimentSpec {
    std::uint64_t seed = 1;
    int workers = 0;  // 0 = hardware concurrency

    // link scenario
    int analog_users = 10;
    double analog_amplitude = 0.31622776601683794;
    double digital_power = 1.0;
    double analog_rate = 0.0999;
    int block_length = 2664;
    int var_degree = 3;
    int check_degree = 12;
    std::uint64_t code_seed = 7;
    NoiseModel noise = NoiseModel::gaussian(0.05);

    // ber sweep
    std::vector<double> noise_power_db_grid;
    long long max_frames = 5000;
    long long target_frame_errors = 200;

    // histogram
    long long histogram_codewords = 10000;
    double histogram_bin_width = 0.01;

    // bounds export
    enum class BoundsMode { DigitalUsersSweep, BetaSweep };
    BoundsMode bounds_mode = BoundsMode::BetaSweep;
    int bounds_digital_users = 7;
    double bounds_beta = 0.0999;
    std::vector<double> bounds_beta_grid;
    double bounds_digital_power = db_to_linear(8.0);
    std::optional<double> bounds_digital_amplitude;  // default 2*sqrt(2P)
    int bounds_analog_users = 10;
    double bounds_analog_amplitude = db_to_linear(2.5);
    double bounds_noise_power = 1.0;
    int bounds_grid_points = 201;

    static ExperimentSpec from_json_file(const std::string& path);
    static ExperimentSpec from_json_text(const std::string& text);
};

struct BerRow {
    double noise_power_db = 0.0;
    double digital_ber = 0.0;
    double digital_fer = 0.0;
    double analog_mse = 0.0;
    long long frames = 0;
    long long digital_bits = 0;
    long long frame_errors = 0;
};

/// Monte Carlo BER/MSE sweep over the noise grid. Deterministic for a fixed
/// seed: trials use counter-based substreams and are reduced in trial order,
/// so the worker count never changes any output.
std::vector<BerRow> run_ber_sweep(const ExperimentSpec& spec);

struct HistogramRow {
    double bin_left = 0.0;
    double relative_frequency = 0.0;
};

struct AmplitudeHistogram {
    std::vector<HistogramRow> rows;
    double max_ratio = 0.0;
    double quantile_95 = 0.0;
    long long codewords = 0;
};

/// Peak-amplitude ratios (after / before wrapping) over random codewords of
/// the configured code. Ratios are of complex symbol magnitudes; the real
/// component ratio is bounded by the same operator norm and checked on the
/// fly together with the power identity.
AmplitudeHistogram run_amplitude_histogram(const ExperimentSpec& spec);

struct BoundsRow {
    double x = 0.0;  // K_d or beta
    double achievable_sum_rate_nats = 0.0;
    double converse_sum_rate_nats = 0.0;
    double trivial_converse_nats = 0.0;
};

std::vector<BoundsRow> run_bounds_export(const ExperimentSpec& spec);

void write_csv(std::ostream& out, const std::vector<BerRow>& rows);
void write_csv(std::ostream& out, const AmplitudeHistogram& histogram);
void write_csv(std::ostream& out, const std::vector<BoundsRow>& rows,
               ExperimentSpec::BoundsMode mode);

}  // namespace socc
