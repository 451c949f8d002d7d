#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <array>
#include <string>
#include <vector>

#include "ptloc/analysis.hpp"
#include "ptloc/checks.hpp"
#include "ptloc/kinematics.hpp"
#include "ptloc/operators.hpp"
#include "ptloc/povm.hpp"
#include "ptloc/specfun.hpp"
#include "ptloc/states.hpp"

namespace py = pybind11;
using namespace ptloc;

namespace {

Sign parse_sign(const std::string& s) {
    if (s == "plus") return Sign::plus;
    if (s == "minus") return Sign::minus;
    throw ConfigError("sign must be 'plus' or 'minus'");
}

struct PacketSpec {
    double mass = 1.0;
    std::string packet = "gaussian";
    std::array<double, 3> center{0.0, 0.0, 2.0};
    double sigma = 0.6;
    std::array<double, 3> shift{0.0, 0.0, 0.0};
    std::string sign = "plus";
    int n1 = 64, n2 = 48, n3 = 16;
    double bound = 9.0;
};

kinematics::QuadratureGrid grid_for(const PacketSpec& ps) {
    return kinematics::QuadratureGrid::build({Chart::hyperbolic, ps.n1, ps.n2, ps.n3, ps.bound},
                                             Mass(ps.mass));
}

states::PhysState build_packet(const PacketSpec& ps, const kinematics::QuadratureGrid& grid,
                               double tau) {
    const Mass mass(ps.mass);
    const Sign sg = parse_sign(ps.sign);
    if (ps.packet == "gaussian")
        return states::gaussian_packet(mass, sg, ps.center, ps.sigma, grid, ps.shift);
    if (ps.packet == "cosnu") return states::cosnu_packet(mass, sg, 1.2, grid);
    if (ps.packet == "box")
        return states::state_from_position_amplitude(
            mass, sg, tau, states::box_amplitude(4.0 / mass.m, 1.5, 161, 36), grid);
    if (ps.packet == "extension") return states::boundary_flat_packet(mass, sg, 1.2, grid);
    throw ConfigError("packet must be gaussian, cosnu, box or extension");
}

py::dict density_dict(const povm::DensityProfile& d) {
    py::dict out;
    out[d.axis == 't' ? "t" : "z"] = d.x;
    out["p"] = d.p;
    out["total_mass"] = d.total_mass;
    out["mean"] = d.mean();
    out["variance"] = d.variance();
    out["clipped_mass"] = d.clipped_mass;
    out["warnings"] = d.warnings;
    return out;
}

}  // namespace

PYBIND11_MODULE(_ptloc, m) {
    m.doc() = "proper-time localization toolkit for a free relativistic particle";

    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const ConfigError& e) {
            PyErr_SetString(PyExc_ValueError, e.what());
        } catch (const EvaluationError& e) {
            PyErr_SetString(PyExc_RuntimeError, e.what());
        }
    });

    m.def(
        "z0",
        [](double phi, double mass) { return operators::extension_spectrum(phi, Mass(mass)).z0; },
        py::arg("phi"), py::arg("mass") = 1.0,
        "spectrum offset z0(phi) of the self-adjoint extension labeled by phi");

    m.def(
        "extension_eigenvalues",
        [](double phi, double mass, int n_lo, int n_hi) {
            const auto sp = operators::extension_spectrum(phi, Mass(mass));
            if (n_lo > n_hi) throw ConfigError("n_lo must not exceed n_hi");
            std::vector<double> out;
            for (int n = n_lo; n <= n_hi; ++n) out.push_back(sp.eigenvalue(n));
            return out;
        },
        py::arg("phi"), py::arg("mass") = 1.0, py::arg("n_lo") = -3, py::arg("n_hi") = 3,
        "eigenvalue ladder z_n = z0(phi) + 2n/m");

    m.def(
        "position_overlap",
        [](double dz, double mass, double tau, const std::string& sign) {
            return povm::position_overlap(Mass(mass), tau, dz, 0.0, parse_sign(sign));
        },
        py::arg("dz"), py::arg("mass") = 1.0, py::arg("tau") = 0.0, py::arg("sign") = "plus",
        "pairing of two longitudinal position elements separated by dz");

    m.def(
        "time_overlap",
        [](double center_a, double width_a, double center_b, double width_b, double mass,
           double tau, const std::string& sign) {
            const auto r = povm::time_overlap_smeared(Mass(mass), tau, {center_a, width_a},
                                                      {center_b, width_b}, parse_sign(sign));
            py::dict out;
            out["direct"] = r.direct;
            out["analytic"] = r.analytic;
            return out;
        },
        py::arg("center_a"), py::arg("width_a"), py::arg("center_b"), py::arg("width_b"),
        py::arg("mass") = 1.0, py::arg("tau") = 0.0, py::arg("sign") = "plus",
        "smeared time-element pairing, direct quadrature and analytic form");

    m.def("conical_p", &specfun::conical_p, py::arg("mu"), py::arg("lam"), py::arg("x"),
          "conical function P^{-mu}_{-1/2 + i lam}(x) for x >= 1");
    m.def("gamma_abs_half", &specfun::gamma_abs_half, py::arg("mu"), py::arg("lam"),
          "|Gamma(1/2 + mu + i lam)|");
    m.def("sinc", &specfun::sinc, py::arg("x"));

    m.def(
        "time_density",
        [](double mass, double tau, const std::string& packet,
           const std::array<double, 3>& center, double sigma,
           const std::array<double, 3>& shift, const std::string& sign, double lo, double hi,
           int n, int l_max, int n1, int n2, int n3, double bound) {
            PacketSpec ps{mass, packet, center, sigma, shift, sign, n1, n2, n3, bound};
            const auto grid = grid_for(ps);
            const auto s = build_packet(ps, grid, tau);
            return density_dict(povm::time_density(s, tau, {lo, hi, n}, l_max));
        },
        py::arg("mass") = 1.0, py::arg("tau") = 0.0, py::arg("packet") = "gaussian",
        py::arg("center") = std::array<double, 3>{0.0, 0.0, 2.0}, py::arg("sigma") = 0.6,
        py::arg("shift") = std::array<double, 3>{0.0, 0.0, 0.0}, py::arg("sign") = "plus",
        py::arg("lo") = -40.0, py::arg("hi") = 40.0, py::arg("n") = 801, py::arg("l_max") = 8,
        py::arg("grid_n1") = 64, py::arg("grid_n2") = 48, py::arg("grid_n3") = 16,
        py::arg("grid_bound") = 9.0,
        "time-of-arrival density p(t) of a packet");

    m.def(
        "position_density",
        [](double mass, double tau, const std::string& packet,
           const std::array<double, 3>& center, double sigma,
           const std::array<double, 3>& shift, const std::string& sign, double lo, double hi,
           int n, double lambda_max, int m_z_max, int threads, int n1, int n2, int n3,
           double bound) {
            PacketSpec ps{mass, packet, center, sigma, shift, sign, n1, n2, n3, bound};
            const auto grid = grid_for(ps);
            const auto s = build_packet(ps, grid, tau);
            return density_dict(
                povm::position_density(s, tau, {lo, hi, n}, lambda_max, m_z_max, grid,
                                       {48, threads}));
        },
        py::arg("mass") = 1.0, py::arg("tau") = 0.0, py::arg("packet") = "gaussian",
        py::arg("center") = std::array<double, 3>{0.0, 0.0, 2.0}, py::arg("sigma") = 0.6,
        py::arg("shift") = std::array<double, 3>{0.0, 0.0, 0.0}, py::arg("sign") = "plus",
        py::arg("lo") = -40.0, py::arg("hi") = 40.0, py::arg("n") = 801,
        py::arg("lambda_max") = 8.0, py::arg("m_z_max") = 4, py::arg("threads") = 1,
        py::arg("grid_n1") = 64, py::arg("grid_n2") = 48, py::arg("grid_n3") = 16,
        py::arg("grid_bound") = 9.0,
        "longitudinal localization density p(z) of a packet");

    m.def(
        "admissibility",
        [](double mass, const std::string& packet, const std::array<double, 3>& center,
           double sigma, const std::array<double, 3>& shift, const std::string& sign, int n1,
           int n2, int n3, double bound) {
            PacketSpec ps{mass, packet, center, sigma, shift, sign, n1, n2, n3, bound};
            const auto grid = grid_for(ps);
            const auto s = build_packet(ps, grid, 0.0);
            const auto rep = analysis::admissibility_check(s, grid);
            py::dict out;
            out["admissible"] = rep.admissible;
            out["band_limit"] = rep.band_limit;
            out["endpoint_zero"] = rep.endpoint_zero;
            out["boundary_decay"] = rep.boundary_decay;
            out["square_integrable"] = rep.square_integrable;
            out["smooth"] = rep.smooth;
            out["band_residual"] = rep.band_residual;
            out["endpoint_ratio"] = rep.endpoint_ratio;
            out["decay_exponent"] = rep.decay_exponent;
            out["notes"] = rep.notes;
            return out;
        },
        py::arg("mass") = 1.0, py::arg("packet") = "gaussian",
        py::arg("center") = std::array<double, 3>{0.0, 0.0, 2.0}, py::arg("sigma") = 0.6,
        py::arg("shift") = std::array<double, 3>{0.0, 0.0, 0.0}, py::arg("sign") = "plus",
        py::arg("grid_n1") = 64, py::arg("grid_n2") = 48, py::arg("grid_n3") = 16,
        py::arg("grid_bound") = 9.0,
        "localizability diagnosis for a packet");

    m.def(
        "verify",
        [](bool quick, int threads) {
            checks::CheckOptions opt;
            opt.quick = quick;
            opt.threads = threads;
            const auto results = checks::run_verification(opt);
            py::list out;
            for (const auto& r : results) {
                py::dict row;
                row["name"] = r.name;
                row["passed"] = r.passed;
                row["value"] = r.value;
                row["bound"] = r.bound;
                row["detail"] = r.detail;
                out.append(row);
            }
            return out;
        },
        py::arg("quick") = true, py::arg("threads") = 1,
        "run the numerical invariant battery; returns one record per check");
}
