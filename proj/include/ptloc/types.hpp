#pragma once

#include <array>
#include <complex>
#include <stdexcept>
#include <string>

namespace ptloc {

using cplx = std::complex<double>;

/// thrown for invalid arguments / malformed configuration (CLI exit code 2)
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// thrown when an iterative evaluation fails to converge (CLI exit code 3);
/// carries the best available residual estimate
struct EvaluationError : std::runtime_error {
    double residual;
    EvaluationError(const std::string& what, double res)
        : std::runtime_error(what), residual(res) {}
};

/// particle mass, the only dimensionful scale; lengths and times are reported in 1/m
struct Mass {
    double m;
    explicit Mass(double value) : m(value) {
        if (!(value > 0.0)) throw ConfigError("mass must be positive");
    }
};

/// energy sign label for the two direct summands of the physical Hilbert space
enum class Sign { plus, minus };

inline double sign_factor(Sign s) { return s == Sign::plus ? 1.0 : -1.0; }
inline int sign_index(Sign s) { return s == Sign::plus ? 0 : 1; }

/// momentum-space coordinate charts
enum class Chart { cartesian, spherical, hyperbolic };

std::string chart_name(Chart c);
Chart chart_from_name(const std::string& name);

/// a point of momentum space in one of the three charts;
/// cartesian: (p1, p2, p3); spherical: (r, theta, phi); hyperbolic: (omega, nu, phi)
struct MomentumPoint {
    Chart chart;
    std::array<double, 3> c;

    static MomentumPoint cartesian(double p1, double p2, double p3) {
        return {Chart::cartesian, {p1, p2, p3}};
    }
    static MomentumPoint spherical(double r, double theta, double phi) {
        return {Chart::spherical, {r, theta, phi}};
    }
    static MomentumPoint hyperbolic(double omega, double nu, double phi) {
        return {Chart::hyperbolic, {omega, nu, phi}};
    }
};

}  // namespace ptloc
