// Acceptance suite: one numbered check per release criterion, each printing a
// single PASS/FAIL line. Run all or a single one with --criterion N.

#include <Eigen/Dense>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "socc/channel.hpp"
#include "socc/experiments.hpp"
#include "socc/ldpc.hpp"
#include "socc/mac_code.hpp"
#include "socc/planemap.hpp"
#include "socc/qam.hpp"
#include "socc/rate_bounds.hpp"
#include "socc/rng.hpp"
#include "socc/socc_scheme.hpp"

namespace {

using socc::BlockPartition;
using socc::Rng;

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail << (detail.str().empty() ? "" : "; ") << what;
        }
    }
};

std::string fmt(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

// ---- criterion 1: orthogonal-map algebra over the full size range ----------
Outcome criterion_planemap_algebra() {
    Outcome out;
    double worst_orth = 0.0, worst_sum = 0.0;
    for (int n = 2; n <= 512; ++n) {
        const Eigen::MatrixXd u = socc::PlaneMap::build(n).matrix();
        const Eigen::MatrixXd gram =
            u.transpose() * u - Eigen::MatrixXd::Identity(n - 1, n - 1);
        worst_orth = std::max(worst_orth, gram.cwiseAbs().maxCoeff());
        worst_sum = std::max(worst_sum, u.colwise().sum().cwiseAbs().maxCoeff());
        const double infnorm = socc::PlaneMap::build(n).max_row_abs_sum();
        const double cap = std::min(3.4143, socc::planemap_infnorm_bound(n));
        if (infnorm > cap) {
            out.require(false, "inf-norm bound violated at n=" + std::to_string(n));
        }
    }
    out.require(worst_orth <= 1e-10, "orthonormality residual " + fmt(worst_orth));
    out.require(worst_sum <= 1e-10, "column sum residual " + fmt(worst_sum));
    out.detail << "max residuals: orth " << fmt(worst_orth) << ", colsum " << fmt(worst_sum);
    return out;
}

// ---- criterion 2: reported ten-dimensional operator norm -------------------
Outcome criterion_u10_norm() {
    Outcome out;
    const double v = socc::cached_planemap(10).max_row_abs_sum();
    out.require(std::abs(v - 1.75) <= 0.01, "got " + fmt(v));
    out.detail << "|U_10|_inf = " << fmt(v);
    return out;
}

// ---- criterion 3: biased-channel emulation equivalence ---------------------
Outcome criterion_emulation() {
    Outcome out;
    Rng rng(1001);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<int> lengths;
        const int blocks = 2 + static_cast<int>(rng.uniform_int(5));
        for (int l = 0; l < blocks; ++l) {
            lengths.push_back(2 + static_cast<int>(rng.uniform_int(10)));
        }
        BlockPartition part{lengths};
        const int base_len = part.total() - part.block_count();
        const int users = 1 + static_cast<int>(rng.uniform_int(3));
        auto base = std::make_shared<socc::RandomMacCode>(users, 6, base_len, 1.0, rng.next_u64());
        socc::WrappedCode wrapped(base, part);

        std::vector<int> messages(users);
        for (auto& m : messages) {
            m = static_cast<int>(rng.uniform_int(6));
        }
        Eigen::VectorXd noise(part.total());
        for (int i = 0; i < part.total(); ++i) {
            noise[i] = rng.gaussian();
        }
        Eigen::VectorXd biased = noise;
        int pos = 0;
        for (int len : part.lengths) {
            biased.segment(pos, len).array() += 5.0 * (2.0 * rng.uniform() - 1.0);
            pos += len;
        }
        Eigen::VectorXd base_rx = socc::unwrap_signal(part, noise);
        for (int k = 0; k < users; ++k) {
            biased += wrapped.encode(k, messages[k]);
            base_rx += base->encode(k, messages[k]);
        }
        const Eigen::VectorXd unwrapped = wrapped.receive(biased);
        worst = std::max(worst, (unwrapped - base_rx).cwiseAbs().maxCoeff());
        if (wrapped.decode(biased) != base->decode(base_rx)) {
            out.require(false, "decoded messages diverged at trial " + std::to_string(trial));
        }
    }
    out.require(worst <= 1e-9, "decoder input deviation " + fmt(worst));
    out.detail << "100 tuples, max decoder-input deviation " << fmt(worst);
    return out;
}

// ---- criterion 4: estimator law and digital non-interference ---------------
Outcome criterion_estimator_law() {
    Outcome out;
    const int block = 10, blocks = 10, analog_users = 2;
    BlockPartition part;
    part.lengths.assign(blocks, block);
    const int n = part.total();
    auto base = std::make_shared<socc::RandomMacCode>(1, 16, n - blocks, 1.0, 77);
    socc::WrappedCode code(base, part);
    const socc::NoiseModel noise = socc::NoiseModel::gaussian(1.0);

    const int rounds = 10000;  // 10 estimates each -> 1e5 samples
    double sum_err_on = 0.0, sum_sq_on = 0.0, sum_err_off = 0.0, sum_sq_off = 0.0;
    double max_estimate_diff = 0.0;
    const long long samples = static_cast<long long>(rounds) * blocks;
    for (int r = 0; r < rounds; ++r) {
        Rng value_rng(2002, r, 0);
        Rng msg_rng(2002, r, 1);
        std::vector<Eigen::VectorXd> values(analog_users, Eigen::VectorXd(blocks));
        Eigen::VectorXd truth = Eigen::VectorXd::Zero(blocks);
        for (auto& v : values) {
            for (int l = 0; l < blocks; ++l) {
                v[l] = 2.0 * value_rng.uniform() - 1.0;
            }
            truth += v;
        }
        Eigen::VectorXd tx = Eigen::VectorXd::Zero(n);
        for (const auto& v : values) {
            tx += socc::analog_encode(part, 1.0, v);
        }
        const Eigen::VectorXd digital =
            code.encode(0, static_cast<int>(msg_rng.uniform_int(16)));

        Eigen::VectorXd noise_vec(n);
        Rng noise_rng(2002, r, 2);
        noise.fill(noise_vec, noise_rng);

        const Eigen::VectorXd est_on = socc::analog_decode(part, 1.0, tx + digital + noise_vec);
        const Eigen::VectorXd est_off = socc::analog_decode(part, 1.0, tx + noise_vec);
        max_estimate_diff = std::max(max_estimate_diff,
                                     (est_on - est_off).cwiseAbs().maxCoeff());
        const Eigen::VectorXd err_on = est_on - truth;
        const Eigen::VectorXd err_off = est_off - truth;
        sum_err_on += err_on.sum();
        sum_sq_on += err_on.squaredNorm();
        sum_err_off += err_off.sum();
        sum_sq_off += err_off.squaredNorm();
    }
    const double mean = sum_err_on / samples;
    const double var_on = sum_sq_on / samples - mean * mean;
    const double mean_off = sum_err_off / samples;
    const double var_off = sum_sq_off / samples - mean_off * mean_off;
    const double se_mean = std::sqrt(0.1 / samples);
    out.require(std::abs(mean) <= 3.0 * se_mean, "mean error " + fmt(mean));
    out.require(std::abs(var_on - 0.1) <= 0.005, "variance " + fmt(var_on));
    out.require(std::abs(var_on - var_off) <= 1e-12,
                "variance shifted by digital users: " + fmt(var_on - var_off));
    out.require(max_estimate_diff <= 1e-12,
                "estimates shifted by digital users: " + fmt(max_estimate_diff));
    out.detail << "mean " << fmt(mean) << ", var " << fmt(var_on) << ", on/off deviation "
               << fmt(max_estimate_diff);
    return out;
}

std::shared_ptr<const socc::LdpcCode> standard_code() {
    static auto code = std::make_shared<socc::LdpcCode>(socc::LdpcCode::regular(2664, 3, 12, 7));
    return code;
}

socc::LdpcSoccLink standard_link(double noise_power_db) {
    socc::LdpcSoccLink::Params params;
    params.analog_users = 10;
    params.analog_amplitude = std::sqrt(socc::db_to_linear(-10.0));
    params.digital_power = 1.0;
    params.block_length_per_computation = 10;
    params.code = standard_code();
    params.noise = socc::NoiseModel::gaussian(socc::db_to_linear(noise_power_db));
    return socc::LdpcSoccLink(std::move(params));
}

// ---- criterion 5: analog users leave the digital decisions unchanged -------
Outcome criterion_digital_noninterference() {
    Outcome out;
    const auto link = standard_link(-13.0);
    socc::LdpcSoccLink::FrameOptions with, without;
    without.analog_enabled = false;
    int mismatches = 0;
    long long frame_errors = 0;
    const int frames = 150;
    for (int f = 0; f < frames; ++f) {
        const auto a = link.run_frame(3003, static_cast<std::uint64_t>(f), with);
        const auto b = link.run_frame(3003, static_cast<std::uint64_t>(f), without);
        if (a.bit_errors != b.bit_errors || a.frame_error != b.frame_error ||
            a.decoded_hash != b.decoded_hash) {
            ++mismatches;
        }
        frame_errors += a.frame_error;
    }
    out.require(mismatches == 0, std::to_string(mismatches) + " frames diverged");
    out.detail << frames << " frames, " << frame_errors
               << " frame errors, decoded bits identical with analog on/off";
    return out;
}

// ---- criterion 6: wrapped-codeword amplitude growth ------------------------
Outcome criterion_amplitude_histogram() {
    Outcome out;
    socc::ExperimentSpec spec;
    spec.seed = 4004;
    spec.block_length = 2664;
    spec.analog_rate = 0.0999;
    spec.histogram_codewords = 10000;
    spec.histogram_bin_width = 0.01;
    const auto hist = socc::run_amplitude_histogram(spec);
    out.require(hist.max_ratio <= 1.75, "max ratio " + fmt(hist.max_ratio));
    out.require(hist.quantile_95 <= 1.65, "95% quantile " + fmt(hist.quantile_95));
    out.detail << hist.codewords << " codewords, max ratio " << fmt(hist.max_ratio)
               << ", q95 " << fmt(hist.quantile_95);
    return out;
}

// ---- criterion 7: analog error ignores the noise distribution --------------
Outcome criterion_mse_invariance() {
    Outcome out;
    const int block = 10, blocks = 20;
    BlockPartition part;
    part.lengths.assign(blocks, block);
    const int n = part.total();
    auto base = std::make_shared<socc::RandomMacCode>(1, 8, n - blocks, 1.0, 99);
    socc::WrappedCode code(base, part);
    const double noise_power = 0.5;
    const double expected = noise_power / (block * 1.0);

    const std::vector<socc::NoiseModel> models{
        socc::NoiseModel::gaussian(noise_power),
        socc::NoiseModel::middleton(1.5, 1.5, noise_power),
        socc::NoiseModel::middleton(0.1, 0.1, noise_power),
    };
    std::vector<double> mse;
    for (std::size_t m = 0; m < models.size(); ++m) {
        double acc = 0.0;
        const int rounds = 10000;
        for (int r = 0; r < rounds; ++r) {
            Rng rng(5005 + m, r);
            Eigen::VectorXd values(blocks);
            for (int l = 0; l < blocks; ++l) {
                values[l] = 2.0 * rng.uniform() - 1.0;
            }
            Eigen::VectorXd y = socc::analog_encode(part, 1.0, values) +
                                code.encode(0, static_cast<int>(rng.uniform_int(8)));
            for (int i = 0; i < n; ++i) {
                y[i] += models[m].sample(rng);
            }
            acc += (socc::analog_decode(part, 1.0, y) - values).squaredNorm();
        }
        mse.push_back(acc / (static_cast<double>(rounds) * blocks));
    }
    for (std::size_t m = 0; m < mse.size(); ++m) {
        out.require(std::abs(mse[m] - expected) / expected <= 0.05,
                    "model " + std::to_string(m) + " mse " + fmt(mse[m]));
    }
    out.detail << "gaussian " << fmt(mse[0]) << ", middleton(1.5) " << fmt(mse[1])
               << ", middleton(0.1) " << fmt(mse[2]) << " vs closed form " << fmt(expected);
    return out;
}

// ---- criterion 8: rate-bound numerics ---------------------------------------
Outcome criterion_rate_bounds() {
    Outcome out;
    const double trivial7 = socc::gaussian_capacity(7.0 * std::pow(10.0, 0.8));
    out.require(std::abs(trivial7 - 1.9051835) <= 1e-6, "trivial converse " + fmt(trivial7));

    socc::ExperimentSpec spec;
    spec.bounds_mode = socc::ExperimentSpec::BoundsMode::DigitalUsersSweep;
    spec.bounds_digital_users = 7;
    spec.bounds_beta = 0.0999;
    const auto rows_users = socc::run_bounds_export(spec);
    for (const auto& row : rows_users) {
        out.require(row.achievable_sum_rate_nats <= row.converse_sum_rate_nats + 1e-9,
                    "ordering (achievable/converse) at K_d=" + fmt(row.x));
        out.require(row.converse_sum_rate_nats <= row.trivial_converse_nats + 1e-9,
                    "ordering (converse/trivial) at K_d=" + fmt(row.x));
    }

    spec.bounds_mode = socc::ExperimentSpec::BoundsMode::BetaSweep;
    spec.bounds_beta_grid.clear();
    const double eps = 1e-4;
    for (int m = 2; m <= 5; ++m) {
        spec.bounds_beta_grid.push_back(1.0 / m - eps);
        spec.bounds_beta_grid.push_back(1.0 / m + eps);
        spec.bounds_beta_grid.push_back(1.0 / m + 2 * eps);  // same interval as 1/m + eps
    }
    for (double beta : {0.05, 0.12, 0.28, 0.45}) {
        spec.bounds_beta_grid.push_back(beta);
    }
    const auto rows_beta = socc::run_bounds_export(spec);
    for (const auto& row : rows_beta) {
        out.require(row.achievable_sum_rate_nats <= row.converse_sum_rate_nats + 1e-9,
                    "ordering at beta=" + fmt(row.x));
        out.require(row.converse_sum_rate_nats <= row.trivial_converse_nats + 1e-9,
                    "trivial ordering at beta=" + fmt(row.x));
    }
    for (int m = 2; m <= 5; ++m) {
        const auto& below = rows_beta[3 * (m - 2)];
        const auto& above = rows_beta[3 * (m - 2) + 1];
        const auto& above2 = rows_beta[3 * (m - 2) + 2];
        const double jump = std::abs(above.achievable_sum_rate_nats -
                                     below.achievable_sum_rate_nats);
        const double jump_conv = std::abs(above.converse_sum_rate_nats -
                                          below.converse_sum_rate_nats);
        const double flat = std::abs(above2.achievable_sum_rate_nats -
                                     above.achievable_sum_rate_nats);
        out.require(jump > 1e-3, "no achievable jump at 1/" + std::to_string(m));
        out.require(jump_conv > 1e-4, "no converse jump at 1/" + std::to_string(m));
        out.require(flat <= 1e-6, "achievable not flat inside interval at 1/" + std::to_string(m));
    }
    out.detail << "trivial " << fmt(trivial7) << "; orderings hold on both grids; jumps at 1/m";
    return out;
}

// ---- criterion 9: time-sharing comparison values ----------------------------
Outcome criterion_remark_values() {
    Outcome out;
    const double amp = std::pow(10.0, 0.25);
    const double ts = socc::timeshare_mse(1.0, amp);
    const double hd = socc::socc_mse(0.4999, 1.0, amp);
    out.require(std::abs(ts - 0.316) <= 0.005, "time share " + fmt(ts));
    out.require(std::abs(hd - 0.158) <= 0.005, "scheme at beta just below 1/2: " + fmt(hd));
    out.detail << "time-share " << fmt(ts) << ", scheme " << fmt(hd);
    return out;
}

// ---- criterion 10: constrained-capacity checkpoints -------------------------
Outcome criterion_constrained_capacity() {
    Outcome out;
    const double p1 = std::pow(10.0, 0.1);
    const auto loose = socc::ba_constrained_capacity(p1, 10.0 * std::sqrt(p1), 1.0);
    const double limit = socc::gaussian_capacity(p1);
    out.require(std::abs(loose.capacity - limit) / limit <= 0.01,
                "loose-amplitude value " + fmt(loose.capacity) + " vs " + fmt(limit));

    const auto user1 = socc::ba_constrained_capacity(p1, 2.0 * std::sqrt(p1), 1.0);
    const double p2 = std::pow(10.0, 0.4);
    const auto user2 = socc::ba_constrained_capacity(p2, 2.0 * std::sqrt(p2), 1.0);
    out.require(std::abs(user1.capacity - 0.4040) <= 0.002,
                "corner rate 1: " + fmt(user1.capacity) + " vs published 0.4040");
    out.require(std::abs(user2.capacity - 0.6150) <= 0.002,
                "corner rate 2: " + fmt(user2.capacity) + " vs published 0.6150");
    out.detail << "loose " << fmt(loose.capacity) << " (limit " << fmt(limit) << "), corners "
               << fmt(user1.capacity) << "/" << fmt(user2.capacity);
    return out;
}

// ---- criterion 11: fading-channel tail predictions --------------------------
Outcome criterion_fading_tails() {
    Outcome out;
    const int users = 10;
    BlockPartition part{{10}};  // one computation over 5 complex uses
    const double noise_power = 2.0;
    const int trials = 100000;
    struct Case {
        socc::NomographicFunction fn;
        std::vector<double> eps;
        const char* name;
    };
    std::vector<Case> cases;
    cases.push_back({socc::NomographicFunction::sum(users), {0.6, 0.8, 1.0, 1.3, 1.7}, "sum"});
    cases.push_back(
        {socc::NomographicFunction::p_norm(users, 2.0), {0.55, 0.65, 0.75, 0.9, 1.1}, "2-norm"});
    const std::vector<double> limits(users, 1.0);
    for (std::size_t c = 0; c < cases.size(); ++c) {
        const auto& fn = cases[c].fn;
        std::vector<long long> exceed(cases[c].eps.size(), 0);
        for (int t = 0; t < trials; ++t) {
            Rng rng(6006 + c, t);
            std::vector<std::complex<double>> h;
            for (int k = 0; k < users; ++k) {
                const double phase = 6.283185307179586 * rng.uniform();
                h.push_back({std::cos(phase), std::sin(phase)});
            }
            std::vector<Eigen::VectorXd> inputs;
            for (int k = 0; k < users; ++k) {
                Eigen::VectorXd v(1);
                v << 2.0 * rng.uniform() - 1.0;
                inputs.push_back(v);
            }
            const auto round = socc::fmon_fading_round(
                fn, inputs, h, limits, part, noise_power,
                socc::ComplexNoiseSplit::HalfPerComponent, rng);
            const double err = std::abs(round.estimates[0] - round.true_values[0]);
            for (std::size_t e = 0; e < cases[c].eps.size(); ++e) {
                exceed[e] += err > cases[c].eps[e];
            }
        }
        for (std::size_t e = 0; e < cases[c].eps.size(); ++e) {
            const double predicted =
                socc::nomographic_tail(cases[c].eps[e], fn, 5, 1.0, noise_power);
            const double freq = static_cast<double>(exceed[e]) / trials;
            const double se = std::sqrt(std::max(predicted * (1.0 - predicted), 1e-9) / trials);
            if (freq > predicted + 3.0 * se) {
                out.require(false, std::string(cases[c].name) + " eps=" + fmt(cases[c].eps[e]) +
                                       " freq " + fmt(freq) + " > bound " + fmt(predicted));
            }
        }
    }
    out.detail << "sum and 2-norm exceedances below predictions at 5 epsilons each";
    return out;
}

// ---- criterion 12: qualitative waterfall of the full link -------------------
Outcome criterion_waterfall() {
    Outcome out;
    socc::ExperimentSpec spec;
    spec.seed = 7007;
    spec.block_length = 2664;
    spec.analog_rate = 0.0999;
    spec.noise_power_db_grid = {-8.0, -9.0, -10.0, -11.0, -12.0, -13.0};
    spec.max_frames = 400;
    spec.target_frame_errors = 60;
    const auto rows = socc::run_ber_sweep(spec);
    for (std::size_t i = 1; i < rows.size(); ++i) {
        out.require(rows[i].digital_ber <= rows[i - 1].digital_ber + 1e-12,
                    "BER not monotone at " + fmt(rows[i].noise_power_db) + " dB");
    }
    for (const auto& row : rows) {
        if (row.noise_power_db <= -11.0) {
            out.require(row.digital_ber < 1e-3,
                        "BER " + fmt(row.digital_ber) + " at " + fmt(row.noise_power_db) + " dB");
        }
    }
    out.detail << "BER:";
    for (const auto& row : rows) {
        out.detail << " " << fmt(row.noise_power_db) << "dB=" << fmt(row.digital_ber);
    }
    return out;
}

struct Criterion {
    int id;
    const char* title;
    std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
    int only = 0;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
            only = std::atoi(argv[i + 1]);
        }
    }

    const std::vector<Criterion> criteria{
        {1, "orthogonal map algebra (n = 2..512)", criterion_planemap_algebra},
        {2, "ten-dimensional operator norm = 1.75 +- 0.01", criterion_u10_norm},
        {3, "biased-channel emulation equivalence (100 tuples)", criterion_emulation},
        {4, "analog estimator law and digital non-interference", criterion_estimator_law},
        {5, "analog users leave digital decisions unchanged", criterion_digital_noninterference},
        {6, "wrapped-codeword amplitude histogram", criterion_amplitude_histogram},
        {7, "analog MSE invariant across noise distributions", criterion_mse_invariance},
        {8, "rate-bound numerics, orderings, and jumps", criterion_rate_bounds},
        {9, "time-sharing comparison values", criterion_remark_values},
        {10, "amplitude-constrained capacity checkpoints", criterion_constrained_capacity},
        {11, "fading-channel tail predictions", criterion_fading_tails},
        {12, "link waterfall below the asymptotic threshold", criterion_waterfall},
    };

    int failures = 0;
    for (const auto& c : criteria) {
        if (only != 0 && c.id != only) {
            continue;
        }
        const auto start = std::chrono::steady_clock::now();
        Outcome outcome;
        try {
            outcome = c.run();
        } catch (const std::exception& e) {
            outcome.pass = false;
            outcome.detail << "exception: " << e.what();
        }
        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("[%s] criterion %2d: %s (%.1fs) -- %s\n", outcome.pass ? "PASS" : "FAIL",
                    c.id, c.title, seconds, outcome.detail.str().c_str());
        std::fflush(stdout);
        failures += outcome.pass ? 0 : 1;
    }
    return failures;
}
