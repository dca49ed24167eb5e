// pybind11 bindings exposing the core operations for quick experimentation
// from python.

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "socc/channel.hpp"
#include "socc/ldpc.hpp"
#include "socc/mac_code.hpp"
#include "socc/partition.hpp"
#include "socc/planemap.hpp"
#include "socc/rate_bounds.hpp"
#include "socc/rng.hpp"
#include "socc/socc_scheme.hpp"

namespace py = pybind11;
using namespace socc;

namespace {

NomographicFunction make_function(const std::string& name, int users, double p) {
    if (name == "sum") {
        return NomographicFunction::sum(users);
    }
    if (name == "p_norm") {
        return NomographicFunction::p_norm(users, p);
    }
    throw std::invalid_argument("unknown function: " + name);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "SOCC numerical toolkit (C++ core)";

    m.def("build_planemap", [](int n) { return PlaneMap::build(n).matrix(); }, py::arg("n"),
          "Dense n x (n-1) column-orthonormal basis of the zero-sum hyperplane");
    m.def("planemap_forward",
          [](int n, const Eigen::VectorXd& x) { return cached_planemap(n).forward(x); });
    m.def("planemap_adjoint",
          [](int n, const Eigen::VectorXd& y) { return cached_planemap(n).adjoint(y); });
    m.def("max_row_abs_sum", [](int n) { return cached_planemap(n).max_row_abs_sum(); });
    m.def("planemap_infnorm_bound", &planemap_infnorm_bound);

    m.def("beta_prime", &beta_prime);
    m.def("make_partition", [](int n, double beta) { return make_partition(n, beta).lengths; });
    m.def("wrap_signal", [](const std::vector<int>& lengths, const Eigen::VectorXd& base) {
        return wrap_signal(BlockPartition{lengths}, base);
    });
    m.def("unwrap_signal", [](const std::vector<int>& lengths, const Eigen::VectorXd& y) {
        return unwrap_signal(BlockPartition{lengths}, y);
    });

    m.def("gaussian_capacity", &gaussian_capacity);
    m.def("socc_mse", &socc_mse);
    m.def("timeshare_mse", &timeshare_mse);
    m.def("outer_bound_sum_rate",
          [](const std::vector<double>& powers, int analog_users, double analog_amplitude,
             double noise_power, double beta, double mse) {
              return outer_bound_sum_rate(powers, analog_users, analog_amplitude, noise_power,
                                          beta, mse);
          });
    m.def("achievable_sum_rate",
          [](int users, double beta, double power, double amplitude, double noise_power,
             int grid_points) {
              BaOptions options;
              options.grid_points = grid_points;
              return achievable_sum_rate(users, beta, power, amplitude, noise_power, options);
          },
          py::arg("users"), py::arg("beta"), py::arg("power"), py::arg("amplitude"),
          py::arg("noise_power"), py::arg("grid_points") = 201);
    m.def("ba_constrained_capacity",
          [](double power, double amplitude, double noise_power, int grid_points) {
              BaOptions options;
              options.grid_points = grid_points;
              const BaResult r = ba_constrained_capacity(power, amplitude, noise_power, options);
              py::dict d;
              d["capacity"] = r.capacity;
              d["second_moment"] = r.second_moment;
              d["multiplier"] = r.multiplier;
              d["converged"] = r.converged;
              std::vector<double> atoms(r.input.prob.size());
              for (std::size_t i = 0; i < atoms.size(); ++i) {
                  atoms[i] = r.input.atom(static_cast<int>(i));
              }
              d["atoms"] = atoms;
              d["probabilities"] = r.input.prob;
              return d;
          },
          py::arg("power"), py::arg("amplitude"), py::arg("noise_power"),
          py::arg("grid_points") = 201);

    m.def("gaussian_to_tail", &gaussian_to_tail);
    m.def("mse_to_tail", &mse_to_tail);
    m.def("nomographic_tail",
          [](double eps, const std::string& fn, int users, double p, int complex_block_length,
             double analog_amplitude, double noise_power) {
              return nomographic_tail(eps, make_function(fn, users, p), complex_block_length,
                                      analog_amplitude, noise_power);
          },
          py::arg("epsilon"), py::arg("function"), py::arg("users"), py::arg("p"),
          py::arg("complex_block_length"), py::arg("analog_amplitude"), py::arg("noise_power"));

    m.def("middleton_samples",
          [](double impulsive_index, double gamma, double power, std::size_t count,
             std::uint64_t seed) {
              const NoiseModel model = NoiseModel::middleton(impulsive_index, gamma, power);
              Rng rng(seed);
              std::vector<double> out(count);
              for (auto& v : out) {
                  v = model.sample(rng);
              }
              return out;
          });
    m.def("middleton_pdf", [](double impulsive_index, double gamma, double power, double x) {
        return NoiseModel::middleton(impulsive_index, gamma, power).pdf(x);
    });

    py::class_<LdpcCode>(m, "LdpcCode")
        .def_static("regular", &LdpcCode::regular, py::arg("block_length"), py::arg("var_degree"),
                    py::arg("check_degree"), py::arg("seed"))
        .def_static("from_alist", &LdpcCode::from_alist)
        .def("to_alist", &LdpcCode::to_alist)
        .def_property_readonly("block_length", &LdpcCode::block_length)
        .def_property_readonly("message_length", &LdpcCode::message_length)
        .def_property_readonly("rate", &LdpcCode::rate)
        .def("encode",
             [](const LdpcCode& code, const std::vector<std::uint8_t>& message) {
                 return code.encode(message);
             })
        .def("decode", [](const LdpcCode& code, const std::vector<double>& llrs, int iterations) {
            const auto r = code.decode(llrs, iterations);
            return py::make_tuple(r.message, r.converged, r.iterations);
        }, py::arg("llrs"), py::arg("iterations") = 50);
}
