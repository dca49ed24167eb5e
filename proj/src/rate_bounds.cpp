#include "socc/rate_bounds.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace socc {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kE = 2.71828182845904523536;
}  // namespace

double gaussian_capacity(double snr) {
    if (snr < 0.0) {
        throw std::invalid_argument("gaussian_capacity: negative argument");
    }
    return 0.5 * std::log1p(snr);
}

double socc_mse(double beta, double noise_power, double analog_amplitude) {
    return beta_prime(beta) * noise_power / (analog_amplitude * analog_amplitude);
}

double timeshare_mse(double noise_power, double analog_amplitude) {
    return noise_power / (analog_amplitude * analog_amplitude);
}

double outer_bound_sum_rate(std::span<const double> digital_powers, int analog_users,
                            double analog_amplitude, double noise_power, double beta, double mse) {
    double sum_power = 0.0;
    for (double p : digital_powers) {
        sum_power += p;
    }
    double bound = gaussian_capacity(sum_power / noise_power);  // k = 0 term
    for (int k = 1; k <= analog_users; ++k) {
        const double kk = static_cast<double>(k);
        const double cap = gaussian_capacity(
            (sum_power + kk * kk * analog_amplitude * analog_amplitude) / noise_power);
        const double penalty =
            std::max(0.0, 0.5 * beta * std::log(2.0 * kk * kk / (kPi * kE * mse)));
        bound = std::min(bound, cap - penalty);
    }
    return bound;
}

double gaussian_to_tail(double variance, double epsilon) {
    if (!(variance > 0.0) || !(epsilon > 0.0)) {
        throw std::invalid_argument("gaussian_to_tail: positive variance and epsilon required");
    }
    const double e = epsilon / std::sqrt(variance);
    return std::min(1.0, (1.0 / e) * std::sqrt(2.0 / kPi) * std::exp(-0.5 * e * e));
}

double mse_to_tail(double variance, double epsilon) {
    if (!(epsilon > 0.0)) {
        throw std::invalid_argument("mse_to_tail: positive epsilon required");
    }
    return std::min(1.0, variance / (epsilon * epsilon));
}

namespace {

double simpson(const std::function<double(double)>& f, double a, double b, int intervals) {
    const double h = (b - a) / intervals;
    double acc = f(a) + f(b);
    for (int i = 1; i < intervals; ++i) {
        acc += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
    }
    return acc * h / 3.0;
}

}  // namespace

TailIntegral tail_to_mse(const std::function<double(double)>& delta, double epsilon_cutoff) {
    if (!(epsilon_cutoff > 0.0)) {
        throw std::invalid_argument("tail_to_mse: positive cutoff required");
    }
    // substitute t = u^2: int delta(sqrt t) dt = int 2 u delta(u) du, which is
    // smooth at the origin and quadrature-friendly
    auto integrand = [&](double u) { return 2.0 * u * std::clamp(delta(u), 0.0, 1.0); };

    TailIntegral result;
    const double coarse = simpson(integrand, 0.0, epsilon_cutoff, 1 << 12);
    const double fine = simpson(integrand, 0.0, epsilon_cutoff, 1 << 13);
    result.mse = fine;
    result.quadrature_error = std::abs(fine - coarse);

    // Chebyshev-type tails put constant mass in every octave; a non-vanishing
    // top-octave contribution means the layer-cake integral cannot converge
    const double top_octave =
        simpson(integrand, 0.5 * epsilon_cutoff, epsilon_cutoff, 1 << 10);
    result.truncation_bound = top_octave;
    result.divergent = top_octave > std::max(0.01 * result.mse, 1e-12);
    return result;
}

double nomographic_tail(double epsilon, const NomographicFunction& fn, int complex_block_length,
                        double analog_amplitude, double noise_power) {
    if (!(epsilon > 0.0)) {
        throw std::invalid_argument("nomographic_tail: positive epsilon required");
    }
    const double w = fn.increment_inverse(epsilon);
    const double d = fn.delta_max();
    const double x = 2.0 * w * w / (d * d) * analog_amplitude * analog_amplitude / noise_power *
                     static_cast<double>(complex_block_length);
    return std::min(1.0, std::exp(-x) / std::sqrt(kPi * x));
}

double DiscreteDistribution::second_moment() const {
    double acc = 0.0;
    for (std::size_t i = 0; i < prob.size(); ++i) {
        const double x = atom(static_cast<int>(i));
        acc += prob[i] * x * x;
    }
    return acc;
}

DiscreteDistribution convolve(const DiscreteDistribution& a, const DiscreteDistribution& b) {
    if (std::abs(a.spacing - b.spacing) > 1e-12 * std::max(a.spacing, b.spacing)) {
        throw std::invalid_argument("convolve: grids must share their spacing");
    }
    DiscreteDistribution out;
    out.origin = a.origin + b.origin;
    out.spacing = a.spacing;
    out.prob.assign(a.prob.size() + b.prob.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.prob.size(); ++i) {
        if (a.prob[i] == 0.0) {
            continue;
        }
        for (std::size_t j = 0; j < b.prob.size(); ++j) {
            out.prob[i + j] += a.prob[i] * b.prob[j];
        }
    }
    return out;
}

double mixture_entropy(const DiscreteDistribution& x, double noise_power) {
    const double sigma = std::sqrt(noise_power);
    const double lo = x.origin - 8.0 * sigma;
    const double hi = x.atom(static_cast<int>(x.prob.size()) - 1) + 8.0 * sigma;
    const double dy = sigma / 20.0;
    const int ny = static_cast<int>(std::ceil((hi - lo) / dy)) + 1;
    const double inv_two_var = 1.0 / (2.0 * noise_power);
    const double norm = 1.0 / std::sqrt(2.0 * kPi * noise_power);
    double h = 0.0;
    for (int iy = 0; iy < ny; ++iy) {
        const double y = lo + iy * dy;
        double density = 0.0;
        for (std::size_t i = 0; i < x.prob.size(); ++i) {
            if (x.prob[i] == 0.0) {
                continue;
            }
            const double d = y - x.atom(static_cast<int>(i));
            density += x.prob[i] * std::exp(-d * d * inv_two_var);
        }
        density *= norm;
        if (density > 1e-300) {
            h -= density * std::log(density) * dy;
        }
    }
    return h;
}

namespace {

struct BaWorkspace {
    Eigen::MatrixXd w;      // ny x G transition densities
    Eigen::VectorXd atoms;  // G grid points
    double dy = 0.0;
    double neg_noise_entropy = 0.0;

    Eigen::VectorXd divergence(const Eigen::VectorXd& p) const {
        Eigen::VectorXd py = w * p;
        for (Eigen::Index i = 0; i < py.size(); ++i) {
            py[i] = std::log(std::max(py[i], 1e-300));
        }
        return Eigen::VectorXd::Constant(atoms.size(), neg_noise_entropy) -
               (w.transpose() * py) * dy;
    }
};

struct BaFixedPoint {
    double capacity = 0.0;
    double gap = 0.0;
    double second_moment = 0.0;
    int iterations = 0;
};

BaFixedPoint ba_solve(const BaWorkspace& ws, double multiplier, const BaOptions& options,
                      Eigen::VectorXd& p) {
    const Eigen::VectorXd xsq = ws.atoms.array().square();
    BaFixedPoint fp;
    for (int it = 1; it <= options.max_iterations; ++it) {
        const Eigen::VectorXd d = ws.divergence(p);
        const Eigen::VectorXd t = d - multiplier * xsq;
        const double lower = p.dot(t);
        const double upper = t.maxCoeff();
        Eigen::VectorXd expd = (t.array() - upper).exp();
        p = p.cwiseProduct(expd);
        // keep a representable floor under every atom; fully underflowed mass
        // could never regrow and the duality gap would stop being meaningful
        p = p.cwiseMax(1e-20);
        p /= p.sum();
        fp.iterations = it;
        fp.gap = upper - lower;
        if (fp.gap < options.gap_tolerance) {
            break;
        }
    }
    const Eigen::VectorXd d = ws.divergence(p);
    fp.capacity = p.dot(d);
    fp.second_moment = p.dot(xsq);
    return fp;
}

}  // namespace

BaResult ba_constrained_capacity(double power, double amplitude, double noise_power,
                                 const BaOptions& options) {
    if (!(power > 0.0) || !(amplitude > 0.0) || !(noise_power > 0.0)) {
        throw std::invalid_argument("ba_constrained_capacity: positive parameters required");
    }
    int grid = options.grid_points;
    if (grid < 3 || grid % 2 == 0) {
        throw std::invalid_argument("ba_constrained_capacity: odd grid of >= 3 points required");
    }
    double spacing = 2.0 * amplitude / (grid - 1);
    if (options.spacing > 0.0) {
        const int half = static_cast<int>(std::floor(amplitude / options.spacing + 1e-12));
        if (half < 1) {
            throw std::invalid_argument("ba_constrained_capacity: spacing exceeds the amplitude");
        }
        spacing = options.spacing;
        grid = 2 * half + 1;
    }
    const double sigma = std::sqrt(noise_power);

    BaWorkspace ws;
    ws.atoms.resize(grid);
    const double edge = spacing * ((grid - 1) / 2);
    for (int i = 0; i < grid; ++i) {
        ws.atoms[i] = -edge + spacing * i;
    }
    const double ylim = amplitude + 8.0 * sigma;
    ws.dy = sigma / 20.0;
    const int ny = static_cast<int>(std::ceil(2.0 * ylim / ws.dy)) + 1;
    ws.w.resize(ny, grid);
    const double norm = 1.0 / std::sqrt(2.0 * kPi * noise_power);
    for (int iy = 0; iy < ny; ++iy) {
        const double y = -ylim + iy * ws.dy;
        for (int i = 0; i < grid; ++i) {
            const double d = y - ws.atoms[i];
            ws.w(iy, i) = norm * std::exp(-d * d / (2.0 * noise_power));
        }
    }
    ws.neg_noise_entropy = -0.5 * std::log(2.0 * kPi * kE * noise_power);

    Eigen::VectorXd p = Eigen::VectorXd::Constant(grid, 1.0 / grid);
    BaFixedPoint fp = ba_solve(ws, 0.0, options, p);

    double multiplier = 0.0;
    if (fp.second_moment > power * (1.0 + 1e-10)) {
        // bisect the power multiplier; E X^2 is nonincreasing in it
        double lo = 0.0;
        double hi = 0.5;
        fp = ba_solve(ws, hi, options, p);
        while (fp.second_moment > power) {
            lo = hi;
            hi *= 2.0;
            fp = ba_solve(ws, hi, options, p);
        }
        for (int step = 0; step < 50; ++step) {
            const double mid = 0.5 * (lo + hi);
            fp = ba_solve(ws, mid, options, p);
            if (fp.second_moment > power) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        fp = ba_solve(ws, hi, options, p);
        multiplier = hi;
    }

    BaResult result;
    result.capacity = fp.capacity;
    result.residual = fp.gap;
    result.multiplier = multiplier;
    result.second_moment = fp.second_moment;
    result.converged = fp.gap < 1e-5;
    result.input.origin = -edge;
    result.input.spacing = spacing;
    result.input.prob.assign(p.data(), p.data() + grid);
    return result;
}

double constrained_sum_rate(std::span<const DiscreteDistribution> users, double noise_power) {
    if (users.empty()) {
        return 0.0;
    }
    DiscreteDistribution sum = users[0];
    for (std::size_t k = 1; k < users.size(); ++k) {
        sum = convolve(sum, users[k]);
    }
    const double noise_entropy = 0.5 * std::log(2.0 * kPi * kE * noise_power);
    return mixture_entropy(sum, noise_power) - noise_entropy;
}

ConstrainedRegionOuter constrained_region_outer(std::span<const double> powers,
                                                std::span<const double> amplitudes,
                                                double noise_power, const BaOptions& options) {
    if (powers.size() != amplitudes.size()) {
        throw std::invalid_argument("constrained_region_outer: one amplitude per power required");
    }
    ConstrainedRegionOuter region;
    double total = 0.0;
    for (std::size_t k = 0; k < powers.size(); ++k) {
        region.per_user_caps.push_back(
            ba_constrained_capacity(powers[k], amplitudes[k], noise_power, options).capacity);
        total += powers[k];
    }
    region.unconstrained_sum_rate = gaussian_capacity(total / noise_power);
    return region;
}

bool inner_bound_membership(std::span<const double> rates, double beta,
                            std::span<const double> powers, std::span<const double> amplitudes,
                            double noise_power, const BaOptions& options) {
    if (rates.size() != powers.size() || rates.size() != amplitudes.size()) {
        throw std::invalid_argument("inner_bound_membership: inconsistent sizes");
    }
    const double bp = beta_prime(beta);
    const double amplitude_shrink = (std::sqrt(2.0) - 1.0) / std::sqrt(2.0);
    const int users = static_cast<int>(rates.size());

    // shared atom lattice so subset sums convolve exactly
    BaOptions per_user = options;
    double max_amp = 0.0;
    for (double a : amplitudes) {
        max_amp = std::max(max_amp, a * amplitude_shrink);
    }
    per_user.spacing = 2.0 * max_amp / (options.grid_points - 1);

    std::vector<DiscreteDistribution> inputs;
    inputs.reserve(users);
    for (int k = 0; k < users; ++k) {
        inputs.push_back(ba_constrained_capacity(powers[k] / (1.0 - beta),
                                                 amplitudes[k] * amplitude_shrink, noise_power,
                                                 per_user)
                             .input);
    }

    // all 2^K - 1 nonempty subset constraints
    for (unsigned mask = 1; mask < (1u << users); ++mask) {
        double rate_sum = 0.0;
        std::vector<DiscreteDistribution> subset;
        for (int k = 0; k < users; ++k) {
            if (mask >> k & 1) {
                rate_sum += rates[k] / (1.0 - bp);
                subset.push_back(inputs[k]);
            }
        }
        if (rate_sum > constrained_sum_rate(subset, noise_power) + 1e-12) {
            return false;
        }
    }
    return true;
}

double achievable_sum_rate(int digital_users, double beta, double power, double amplitude,
                           double noise_power, const BaOptions& options) {
    const double bp = beta_prime(beta);
    const double amplitude_shrink = (std::sqrt(2.0) - 1.0) / std::sqrt(2.0);
    const BaResult single = ba_constrained_capacity(power / (1.0 - beta),
                                                    amplitude * amplitude_shrink, noise_power,
                                                    options);
    std::vector<DiscreteDistribution> inputs(digital_users, single.input);
    return (1.0 - bp) * constrained_sum_rate(inputs, noise_power);
}

}  // namespace socc
