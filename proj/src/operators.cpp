#include "ptloc/operators.hpp"

#include <cmath>

#include "ptloc/numerics.hpp"
#include "ptloc/specfun.hpp"

namespace ptloc::operators {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kHalfPi = 1.57079632679489661923;

// 4th-order first derivative of g at 0 with step h; g is evaluated at k*h for
// integer k.  side: 0 central, +1 forward one-sided, -1 backward one-sided.
cplx stencil_d1(const std::function<cplx(int)>& g, double h, int side) {
    if (side == 0)
        return (-g(2) + 8.0 * g(1) - 8.0 * g(-1) + g(-2)) / (12.0 * h);
    if (side > 0)
        return (-25.0 * g(0) + 48.0 * g(1) - 36.0 * g(2) + 16.0 * g(3) - 3.0 * g(4)) /
               (12.0 * h);
    return (25.0 * g(0) - 48.0 * g(-1) + 36.0 * g(-2) - 16.0 * g(-3) + 3.0 * g(-4)) /
           (12.0 * h);
}

cplx derivative(const std::function<cplx(int, double)>& eval_at, double h, bool richardson,
                int side) {
    auto d = [&](double step) {
        return stencil_d1([&](int k) { return eval_at(k, step); }, step, side);
    };
    if (!richardson) return d(h);
    return (16.0 * d(0.5 * h) - d(h)) / 15.0;
}

// log-radial derivative (d/d ln r) of one sign component at a point
cplx dlog_r(const states::PhysState& s, Sign sg, const MomentumPoint& q, double h,
            bool richardson) {
    const auto sp = kinematics::convert(q, Chart::spherical, s.mass);
    auto eval_at = [&](int k, double step) {
        return s.eval(sg, MomentumPoint::spherical(sp.c[0] * std::exp(k * step), sp.c[1],
                                                   sp.c[2]));
    };
    return derivative(eval_at, h, richardson, 0);
}

// d/d nu of one sign component at a point, one-sided near |nu| = pi/2
cplx d_nu(const states::PhysState& s, Sign sg, const MomentumPoint& q, double h,
          bool richardson) {
    const auto hp = kinematics::convert(q, Chart::hyperbolic, s.mass);
    const double nu = hp.c[1];
    int side = 0;
    if (nu + 2.0 * h >= kHalfPi) side = -1;
    if (nu - 2.0 * h <= -kHalfPi) side = +1;
    auto eval_at = [&](int k, double step) {
        return s.eval(sg, MomentumPoint::hyperbolic(hp.c[0], nu + k * step, hp.c[2]));
    };
    return derivative(eval_at, h, richardson, side);
}

states::Symmetry after_q3(states::Symmetry in) {
    return in == states::Symmetry::none ? states::Symmetry::none : states::Symmetry::axial;
}

// relative L2 distance over the grid between applications at steps h and h/2
double stencil_residual(const states::PhysState& s, const states::PhysState& applied_h,
                        const states::PhysState& applied_h2,
                        const kinematics::QuadratureGrid& grid) {
    numerics::KahanSum num, den;
    for (Sign sg : {Sign::plus, Sign::minus}) {
        if (!s.has(sg)) continue;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const auto& p = grid.point(i);
            const cplx a = applied_h.eval(sg, p);
            const cplx b = applied_h2.eval(sg, p);
            num.add(grid.weight(i) * std::norm(a - b));
            den.add(grid.weight(i) * std::norm(b));
        }
    }
    if (den.value() <= 0.0) return 0.0;
    return std::sqrt(num.value() / den.value());
}

states::PhysState q0_applied(const states::PhysState& s, double tau, const StencilSpec& st) {
    states::PhysState out{s.mass, {}, s.symmetry, false};
    const Mass mass = s.mass;
    for (Sign sg : {Sign::plus, Sign::minus}) {
        if (!s.has(sg)) continue;
        const double xi = sign_factor(sg);
        const states::PhysState sc = s;  // capture by value keeps the evaluator alive
        out.comp[sign_index(sg)] = [sc, sg, xi, tau, st, mass](const MomentumPoint& q) {
            const double E = kinematics::energy(q, mass);
            const cplx f = sc.eval(sg, q);
            const cplx df = dlog_r(sc, sg, q, st.h, st.richardson);
            return xi * (E / mass.m) *
                   (cplx(0.0, 1.0 / mass.m) * (df + 1.5 * f) + tau * f);
        };
    }
    return out;
}

states::PhysState q3_applied(const states::PhysState& s, double tau, const StencilSpec& st) {
    states::PhysState out{s.mass, {}, after_q3(s.symmetry), false};
    const Mass mass = s.mass;
    for (Sign sg : {Sign::plus, Sign::minus}) {
        if (!s.has(sg)) continue;
        const double xi = sign_factor(sg);
        const states::PhysState sc = s;
        out.comp[sign_index(sg)] = [sc, sg, xi, tau, st, mass](const MomentumPoint& q) {
            const auto hp = kinematics::convert(q, Chart::hyperbolic, mass);
            const double tn = std::tan(hp.c[1]);
            const cplx f = sc.eval(sg, q);
            const cplx df = d_nu(sc, sg, q, st.h, st.richardson);
            return xi * (cplx(0.0, 1.0 / mass.m) * (df + 1.5 * tn * f) + tn * tau * f);
        };
    }
    return out;
}

}  // namespace

OperatorApplication apply_q0(const states::PhysState& s, double tau,
                             const kinematics::QuadratureGrid& grid, const StencilSpec& st) {
    OperatorApplication app{q0_applied(s, tau, st), 0.0};
    StencilSpec fine = st;
    fine.h = 0.5 * st.h;
    app.residual_estimate = stencil_residual(s, app.result, q0_applied(s, tau, fine), grid);
    return app;
}

OperatorApplication apply_q3(const states::PhysState& s, double tau,
                             const kinematics::QuadratureGrid& grid, const StencilSpec& st) {
    OperatorApplication app{q3_applied(s, tau, st), 0.0};
    StencilSpec fine = st;
    fine.h = 0.5 * st.h;
    app.residual_estimate = stencil_residual(s, app.result, q3_applied(s, tau, fine), grid);
    return app;
}

OperatorApplication apply_momentum(const states::PhysState& s, int mu) {
    if (mu < 0 || mu > 3) throw ConfigError("apply_momentum: mu must be in {0,1,2,3}");
    states::Symmetry sym = s.symmetry;
    if (mu == 1 || mu == 2)
        sym = states::Symmetry::none;
    else if (mu == 3)
        sym = after_q3(s.symmetry);
    states::PhysState out{s.mass, {}, sym, false};
    const Mass mass = s.mass;
    for (Sign sg : {Sign::plus, Sign::minus}) {
        if (!s.has(sg)) continue;
        const double xi = sign_factor(sg);
        const states::PhysState sc = s;
        out.comp[sign_index(sg)] = [sc, sg, xi, mu, mass](const MomentumPoint& q) {
            double factor;
            if (mu == 0) {
                factor = kinematics::energy(q, mass);
            } else {
                const auto v = kinematics::convert(q, Chart::cartesian, mass);
                factor = v.c[mu - 1];
            }
            return xi * factor * sc.eval(sg, q);
        };
    }
    return {out, 0.0};
}

std::vector<DeficiencySolution> deficiency_solutions(Op op, double tau, Mass mass) {
    const double m = mass.m;
    std::vector<DeficiencySolution> out;
    if (op == Op::q0) {
        // radial profile sqrt(2) e^{i m tau ln(r/m)} / (sqrt(r) (E + m));
        // solves the +i/m equation on the plus slot, -i/m on the minus slot
        auto profile = [m, tau](double r) -> cplx {
            const double E = std::sqrt(r * r + m * m);
            return std::sqrt(2.0) * std::exp(cplx(0.0, m * tau * std::log(r / m))) /
                   (std::sqrt(r) * (E + m));
        };
        for (Sign slot : {Sign::plus, Sign::minus}) {
            DeficiencySolution d;
            d.op = op;
            d.slot = slot;
            d.eigenvalue = cplx(0.0, sign_factor(slot) / m);
            d.profile = profile;
            // marginal measure m r^2 / E dr; mapped through r = m tan(alpha)
            d.numeric_norm = numerics::integrate_panels(
                [&](double a) {
                    const double r = m * std::tan(a);
                    const double E = m / std::cos(a);
                    const double dr = m / (std::cos(a) * std::cos(a));
                    const double w = m * r * r / E * dr;
                    return std::norm(profile(r)) * w;
                },
                1e-12, kHalfPi - 1e-12, 8, 32);
            out.push_back(std::move(d));
        }
    } else {
        // profile (1/sqrt(sinh pi)) (sec nu)^{i m tau - 3/2} e^{kappa nu} with
        // kappa = (eigenvalue sign) * (slot sign)
        for (Sign slot : {Sign::plus, Sign::minus}) {
            for (double es : {1.0, -1.0}) {
                const double kappa = es * sign_factor(slot);
                auto profile = [m, tau, kappa](double nu) -> cplx {
                    const double sec = 1.0 / std::cos(nu);
                    return std::exp(cplx(-1.5 * std::log(sec) + kappa * nu,
                                         m * tau * std::log(sec))) /
                           std::sqrt(std::sinh(kPi));
                };
                DeficiencySolution d;
                d.op = op;
                d.slot = slot;
                d.eigenvalue = cplx(0.0, es / m);
                d.profile = profile;
                // marginal measure sec^3(nu) dnu
                d.numeric_norm = numerics::integrate_panels(
                    [&](double nu) {
                        const double sec = 1.0 / std::cos(nu);
                        return std::norm(profile(nu)) * sec * sec * sec;
                    },
                    -kHalfPi + 1e-12, kHalfPi - 1e-12, 8, 32);
                out.push_back(std::move(d));
            }
        }
    }
    return out;
}

ExtensionSpectrum extension_spectrum(double phi, Mass mass) {
    if (!(phi > -kPi && phi <= kPi))
        throw ConfigError("extension_spectrum: phi must lie in (-pi, pi]");
    ExtensionSpectrum sp{phi, mass, 0.0};
    if (phi == kPi) {
        sp.z0 = 1.0 / mass.m;
    } else {
        sp.z0 = (2.0 / (mass.m * kPi)) *
                std::atan(std::tan(0.5 * phi) * std::tanh(0.5 * kPi));
    }
    return sp;
}

povm::PovmElementSpec q0_eigenfunction(Mass mass, Sign sign, double tau, double t, int l,
                                       int m_z) {
    if (l < 0 || std::abs(m_z) > l) throw ConfigError("q0_eigenfunction: need |m_z| <= l");
    const double m = mass.m;
    const double xi = sign_factor(sign);
    povm::PovmElementSpec e{povm::PovmElementSpec::Kind::time, mass, sign, tau,
                            t,  0.0,  l,    m_z,  {}};
    e.amplitude = [mass, m, xi, tau, t, l, m_z](const MomentumPoint& q) -> cplx {
        const auto sp = kinematics::convert(q, Chart::spherical, mass);
        const double r = sp.c[0];
        const double E = std::sqrt(r * r + m * m);
        const cplx ang = specfun::spherical_harmonic(l, m_z, sp.c[1], sp.c[2]);
        // r^{-3/2} (r/m)^{i m tau} (r/(E+m))^{-i xi m t}
        const double lr = std::log(r);
        const cplx rad = std::exp(cplx(-1.5 * lr, m * tau * (lr - std::log(m)) -
                                                      xi * m * t * (lr - std::log(E + m))));
        return std::sqrt(m / (2.0 * kPi)) * ang * rad;
    };
    return e;
}

povm::PovmElementSpec q3_eigenfunction(Mass mass, Sign sign, double tau, double z,
                                       double lambda_deg, int m_z) {
    if (lambda_deg < 0.0) throw ConfigError("q3_eigenfunction: Lambda must be >= 0");
    const double m = mass.m;
    const double xi = sign_factor(sign);
    const int mu = std::abs(m_z);
    povm::PovmElementSpec e{povm::PovmElementSpec::Kind::position, mass, sign, tau,
                            z,  lambda_deg,  0,    m_z,  {}};
    const double pref = std::sqrt(std::max(std::sinh(kPi * lambda_deg), 0.0)) / 2.0 *
                        specfun::gamma_abs_half(mu, lambda_deg) / std::pow(m * kPi, 1.5);
    e.amplitude = [mass, m, xi, tau, z, lambda_deg, m_z, mu, pref](const MomentumPoint& q) -> cplx {
        const auto hp = kinematics::convert(q, Chart::hyperbolic, mass);
        const double om = hp.c[0], nu = hp.c[1], ph = hp.c[2];
        const double lsec = -std::log(std::cos(nu));
        const cplx phase =
            std::exp(cplx(-1.5 * lsec, m * tau * lsec - m * xi * z * nu + m_z * ph));
        return pref * phase * specfun::conical_p(mu, lambda_deg, std::cosh(om));
    };
    return e;
}

EigenResidual eigen_residual(Op op, const states::PhysState& s, cplx eigenvalue, double tau,
                             const kinematics::QuadratureGrid& grid, const StencilSpec& st,
                             double trim) {
    const states::PhysState applied =
        (op == Op::q0) ? q0_applied(s, tau, st) : q3_applied(s, tau, st);
    numerics::KahanSum num, den;
    const double bound = grid.spec().bound;
    for (Sign sg : {Sign::plus, Sign::minus}) {
        if (!s.has(sg)) continue;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const auto& p = grid.point(i);
            // interior window in the operator's stencil coordinate
            if (op == Op::q0) {
                const auto sp = kinematics::convert(p, Chart::spherical, s.mass);
                if (sp.c[0] < trim * bound || sp.c[0] > (1.0 - trim) * bound) continue;
            } else {
                const auto hp = kinematics::convert(p, Chart::hyperbolic, s.mass);
                if (std::abs(hp.c[1]) > (1.0 - trim) * kHalfPi) continue;
                if (hp.c[0] > (1.0 - trim) * bound) continue;
            }
            const cplx f = s.eval(sg, p);
            const cplx av = applied.eval(sg, p);
            num.add(grid.weight(i) * std::norm(av - eigenvalue * f));
            den.add(grid.weight(i) * std::norm(f));
        }
    }
    if (den.value() <= 0.0) throw EvaluationError("eigen_residual: empty interior window", 0.0);
    return {std::sqrt(num.value() / den.value()), trim};
}

}  // namespace ptloc::operators
