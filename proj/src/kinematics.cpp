#include "ptloc/kinematics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ptloc/numerics.hpp"

namespace ptloc {

std::string chart_name(Chart c) {
    switch (c) {
        case Chart::cartesian: return "cartesian";
        case Chart::spherical: return "spherical";
        case Chart::hyperbolic: return "hyperbolic";
    }
    throw ConfigError("chart_name: unknown chart");
}

Chart chart_from_name(const std::string& name) {
    if (name == "cartesian") return Chart::cartesian;
    if (name == "spherical") return Chart::spherical;
    if (name == "hyperbolic") return Chart::hyperbolic;
    throw ConfigError("unknown chart name: " + name);
}

}  // namespace ptloc

namespace ptloc::kinematics {

namespace {
constexpr double kPi = 3.14159265358979323846;

std::array<double, 3> to_cartesian(const MomentumPoint& p, double m) {
    switch (p.chart) {
        case Chart::cartesian:
            return p.c;
        case Chart::spherical: {
            const double r = p.c[0], th = p.c[1], ph = p.c[2];
            const double st = std::sin(th);
            return {r * st * std::cos(ph), r * st * std::sin(ph), r * std::cos(th)};
        }
        case Chart::hyperbolic: {
            const double om = p.c[0], nu = p.c[1], ph = p.c[2];
            const double pperp = m * std::sinh(om) / std::cos(nu);
            return {pperp * std::cos(ph), pperp * std::sin(ph), m * std::tan(nu)};
        }
    }
    throw ConfigError("to_cartesian: unknown chart");
}

}  // namespace

MomentumPoint convert(const MomentumPoint& p, Chart target, Mass mass) {
    if (p.chart == target) return p;
    const auto v = to_cartesian(p, mass.m);
    switch (target) {
        case Chart::cartesian:
            return MomentumPoint::cartesian(v[0], v[1], v[2]);
        case Chart::spherical: {
            const double r = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
            const double th = (r > 0.0) ? std::acos(std::clamp(v[2] / r, -1.0, 1.0)) : 0.0;
            const double ph = std::atan2(v[1], v[0]);
            return MomentumPoint::spherical(r, th, ph);
        }
        case Chart::hyperbolic: {
            // nu = arctan(p3/m), omega = arcsinh(p_perp / sqrt(m^2 + p3^2))
            const double m = mass.m;
            const double pperp = std::hypot(v[0], v[1]);
            const double nu = std::atan(v[2] / m);
            const double om = std::asinh(pperp / std::sqrt(m * m + v[2] * v[2]));
            const double ph = std::atan2(v[1], v[0]);
            return MomentumPoint::hyperbolic(om, nu, ph);
        }
    }
    throw ConfigError("convert: unknown target chart");
}

double energy(const MomentumPoint& p, Mass mass) {
    const double m = mass.m;
    switch (p.chart) {
        case Chart::cartesian:
            return std::sqrt(p.c[0] * p.c[0] + p.c[1] * p.c[1] + p.c[2] * p.c[2] + m * m);
        case Chart::spherical:
            return std::sqrt(p.c[0] * p.c[0] + m * m);
        case Chart::hyperbolic:
            return m * std::cosh(p.c[0]) / std::cos(p.c[1]);
    }
    throw ConfigError("energy: unknown chart");
}

double measure_weight(const MomentumPoint& p, Mass mass) {
    const double m = mass.m;
    switch (p.chart) {
        case Chart::cartesian:
            return m / energy(p, mass);
        case Chart::spherical:
            return m * p.c[0] * p.c[0] * std::sin(p.c[1]) / energy(p, mass);
        case Chart::hyperbolic: {
            const double c = std::cos(p.c[1]);
            return m * m * m * std::sinh(p.c[0]) / (c * c * c);
        }
    }
    throw ConfigError("measure_weight: unknown chart");
}

QuadratureGrid QuadratureGrid::build(const GridSpec& spec, Mass mass) {
    if (spec.n1 < 2 || spec.n2 < 2 || spec.n3 < 1)
        throw ConfigError("grid: node counts must be >= 2 (azimuthal >= 1)");
    if (!(spec.bound > 0.0)) throw ConfigError("grid: bound must be positive");

    QuadratureGrid g(spec, mass);
    g.pts_.reserve(static_cast<std::size_t>(spec.n1) * spec.n2 * spec.n3);
    g.w_.reserve(g.pts_.capacity());

    const auto& r1 = numerics::gauss_legendre(spec.n1);
    const auto& r2 = numerics::gauss_legendre(spec.n2);
    const double dphi = 2.0 * kPi / spec.n3;

    auto push = [&](const MomentumPoint& p, double w_coord) {
        g.pts_.push_back(p);
        g.w_.push_back(w_coord * measure_weight(p, mass));
    };

    switch (spec.chart) {
        case Chart::cartesian: {
            // product GL box [-L, L]^2 x [-L, L]; n3 is the 3rd cartesian axis
            const auto& r3 = numerics::gauss_legendre(std::max(spec.n3, 2));
            const double L = spec.bound;
            for (int i = 0; i < spec.n1; ++i)
                for (int j = 0; j < spec.n2; ++j)
                    for (int k = 0; k < static_cast<int>(r3.x.size()); ++k)
                        push(MomentumPoint::cartesian(L * r1.x[i], L * r2.x[j], L * r3.x[k]),
                             L * r1.w[i] * L * r2.w[j] * L * r3.w[k]);
            break;
        }
        case Chart::spherical: {
            // GL in r on (0, r_max], Gauss in cos(theta), trapezoid in phi
            const double rmax = spec.bound;
            for (int i = 0; i < spec.n1; ++i) {
                const double r = 0.5 * rmax * (r1.x[i] + 1.0);
                const double wr = 0.5 * rmax * r1.w[i];
                for (int j = 0; j < spec.n2; ++j) {
                    const double ct = r2.x[j];
                    const double th = std::acos(ct);
                    // Gauss in cos(theta): the sin(theta) of the measure is
                    // divided back out of the combined weight
                    const double wt = r2.w[j] / std::max(std::sin(th), 1e-300);
                    for (int k = 0; k < spec.n3; ++k)
                        push(MomentumPoint::spherical(r, th, k * dphi), wr * wt * dphi);
                }
            }
            break;
        }
        case Chart::hyperbolic: {
            // GL in omega on (0, omega_max], GL in nu on (-pi/2, pi/2),
            // trapezoid in phi
            const double ommax = spec.bound;
            for (int i = 0; i < spec.n1; ++i) {
                const double om = 0.5 * ommax * (r1.x[i] + 1.0);
                const double wo = 0.5 * ommax * r1.w[i];
                for (int j = 0; j < spec.n2; ++j) {
                    const double nu = 0.5 * kPi * r2.x[j];
                    const double wn = 0.5 * kPi * r2.w[j];
                    for (int k = 0; k < spec.n3; ++k)
                        push(MomentumPoint::hyperbolic(om, nu, k * dphi), wo * wn * dphi);
                }
            }
            break;
        }
    }

    // calibration: unit-normalized reference Gaussian exp(-|p|^2/(2 m^2)),
    // norm^2 = integral dmu |f|^2 computed both on this grid and by the exact
    // 1D radial quadrature
    {
        const double m = mass.m;
        numerics::KahanSum s;
        for (std::size_t i = 0; i < g.pts_.size(); ++i) {
            const auto pc = convert(g.pts_[i], Chart::cartesian, mass);
            const double p2 = pc.c[0] * pc.c[0] + pc.c[1] * pc.c[1] + pc.c[2] * pc.c[2];
            s.add(g.w_[i] * std::exp(-p2 / (m * m)));
        }
        const double exact = numerics::integrate_adaptive(
            [m](double r) {
                return 4.0 * kPi * m * r * r / std::sqrt(r * r + m * m) *
                       std::exp(-r * r / (m * m));
            },
            0.0, 12.0 * m, 1e-12);
        g.calib_ = std::abs(1.0 - s.value() / exact);
    }
    return g;
}

std::string QuadratureGrid::serialize() const {
    std::ostringstream os;
    os << "chart=" << chart_name(spec_.chart) << " n1=" << spec_.n1 << " n2=" << spec_.n2
       << " n3=" << spec_.n3 << " bound=" << spec_.bound;
    return os.str();
}

GridSpec QuadratureGrid::parse_spec(const std::string& text) {
    GridSpec s;
    std::istringstream is(text);
    std::string tok;
    bool saw_chart = false;
    while (is >> tok) {
        const auto eq = tok.find('=');
        if (eq == std::string::npos) throw ConfigError("grid spec: bad token '" + tok + "'");
        const std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
        try {
            if (key == "chart") {
                s.chart = chart_from_name(val);
                saw_chart = true;
            } else if (key == "n1")
                s.n1 = std::stoi(val);
            else if (key == "n2")
                s.n2 = std::stoi(val);
            else if (key == "n3")
                s.n3 = std::stoi(val);
            else if (key == "bound")
                s.bound = std::stod(val);
            else
                throw ConfigError("grid spec: unknown key '" + key + "'");
        } catch (const std::invalid_argument&) {
            throw ConfigError("grid spec: bad value for '" + key + "'");
        }
    }
    if (!saw_chart) throw ConfigError("grid spec: missing chart");
    return s;
}

cplx inner_product(const states::PhysState& a, const states::PhysState& b,
                   const QuadratureGrid& grid) {
    if (a.mass.m != b.mass.m) throw ConfigError("inner_product: mass mismatch");
    numerics::KahanSumC acc;
    for (Sign s : {Sign::plus, Sign::minus}) {
        if (!a.has(s) || !b.has(s)) continue;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const auto& p = grid.point(i);
            acc.add(grid.weight(i) * std::conj(a.eval(s, p)) * b.eval(s, p));
        }
    }
    return acc.value();
}

double norm(const states::PhysState& a, const QuadratureGrid& grid) {
    numerics::KahanSum acc;
    for (Sign s : {Sign::plus, Sign::minus}) {
        if (!a.has(s)) continue;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const double v = std::abs(a.eval(s, grid.point(i)));
            acc.add(grid.weight(i) * v * v);
        }
    }
    return std::sqrt(acc.value());
}

states::PhysState boost_z(const states::PhysState& s, double chi) {
    states::PhysState out = s;
    out.normalized = s.normalized;  // measure is boost invariant
    out.symmetry = (s.symmetry == states::Symmetry::none) ? states::Symmetry::none
                                                          : states::Symmetry::axial;
    const double ch = std::cosh(chi), sh = std::sinh(chi);
    const Mass mass = s.mass;
    for (Sign sg : {Sign::plus, Sign::minus}) {
        if (!s.has(sg)) {
            out.comp[sign_index(sg)] = nullptr;
            continue;
        }
        const auto inner = s.comp[sign_index(sg)];
        const double xi = sign_factor(sg);
        out.comp[sign_index(sg)] = [inner, ch, sh, xi, mass](const MomentumPoint& q) {
            const auto v = convert(q, Chart::cartesian, mass);
            const double E = std::sqrt(v.c[0] * v.c[0] + v.c[1] * v.c[1] + v.c[2] * v.c[2] +
                                       mass.m * mass.m);
            return inner(
                MomentumPoint::cartesian(v.c[0], v.c[1], ch * v.c[2] - xi * sh * E));
        };
    }
    return out;
}

}  // namespace ptloc::kinematics
