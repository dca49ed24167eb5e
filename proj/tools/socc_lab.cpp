// Command-line front end: Monte Carlo sweeps, rate-bound exports, amplitude
// histograms, and orthogonal-map inspection, all driven by JSON configs and
// writing CSV.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "socc/experiments.hpp"
#include "socc/planemap.hpp"

namespace {

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot open output file: " + path);
    }
    return out;
}

void dump_planemap(int n, bool check) {
    const socc::PlaneMap map = socc::PlaneMap::build(n);
    const Eigen::MatrixXd& u = map.matrix();
    for (Eigen::Index r = 0; r < u.rows(); ++r) {
        for (Eigen::Index c = 0; c < u.cols(); ++c) {
            if (c) {
                std::printf(",");
            }
            std::printf("%.17g", u(r, c));
        }
        std::printf("\n");
    }
    if (check) {
        const Eigen::MatrixXd gram = u.transpose() * u -
                                     Eigen::MatrixXd::Identity(u.cols(), u.cols());
        const double orth = u.cols() ? gram.cwiseAbs().maxCoeff() : 0.0;
        const double colsum = u.cols() ? u.colwise().sum().cwiseAbs().maxCoeff() : 0.0;
        std::fprintf(stderr, "n=%d orthogonality_residual=%.3e max_column_sum=%.3e", n, orth,
                     colsum);
        std::fprintf(stderr, " max_row_abs_sum=%.10f bound=%.10f\n", map.max_row_abs_sum(),
                     socc::planemap_infnorm_bound(n));
        if (orth > 1e-10 || colsum > 1e-10) {
            throw std::runtime_error("planemap invariants violated");
        }
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"SOCC simulation laboratory"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_path;

    auto* simulate = app.add_subcommand("simulate", "run the BER/MSE noise sweep");
    simulate->add_option("--config", config_path, "JSON experiment config")->required();
    simulate->add_option("--out", out_path, "output CSV path")->required();

    auto* bounds = app.add_subcommand("bounds", "export achievable/converse sum-rate bounds");
    bounds->add_option("--config", config_path, "JSON experiment config")->required();
    bounds->add_option("--out", out_path, "output CSV path")->required();

    auto* histogram = app.add_subcommand("histogram", "wrapped-codeword amplitude ratios");
    histogram->add_option("--config", config_path, "JSON experiment config")->required();
    histogram->add_option("--out", out_path, "output CSV path")->required();

    int planemap_n = 0;
    bool planemap_check = false;
    auto* planemap = app.add_subcommand("planemap", "dump the n-dimensional zero-sum map as CSV");
    planemap->add_option("--n", planemap_n, "output dimension")->required();
    planemap->add_flag("--check", planemap_check, "print the invariant report to stderr");

    CLI11_PARSE(app, argc, argv);

    try {
        if (simulate->parsed()) {
            const auto spec = socc::ExperimentSpec::from_json_file(config_path);
            const auto rows = socc::run_ber_sweep(spec);
            auto out = open_output(out_path);
            socc::write_csv(out, rows);
        } else if (bounds->parsed()) {
            const auto spec = socc::ExperimentSpec::from_json_file(config_path);
            const auto rows = socc::run_bounds_export(spec);
            auto out = open_output(out_path);
            socc::write_csv(out, rows, spec.bounds_mode);
        } else if (histogram->parsed()) {
            const auto spec = socc::ExperimentSpec::from_json_file(config_path);
            const auto hist = socc::run_amplitude_histogram(spec);
            auto out = open_output(out_path);
            socc::write_csv(out, hist);
            std::fprintf(stderr, "codewords=%lld max_ratio=%.6f q95=%.6f\n",
                         hist.codewords, hist.max_ratio, hist.quantile_95);
        } else if (planemap->parsed()) {
            dump_planemap(planemap_n, planemap_check);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
