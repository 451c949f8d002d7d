#include "ptloc/checks.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <optional>
#include <random>
#include <sstream>

#include "ptloc/analysis.hpp"
#include "ptloc/kinematics.hpp"
#include "ptloc/numerics.hpp"
#include "ptloc/operators.hpp"
#include "ptloc/povm.hpp"
#include "ptloc/specfun.hpp"
#include "ptloc/states.hpp"

namespace ptloc::checks {

namespace {

constexpr double kPi = 3.14159265358979323846;

/// lazily built shared fixtures; quick mode trades grid resolution for speed
struct Ctx {
    CheckOptions opt;
    Mass mass{1.0};
    std::optional<analysis::CovarianceReport> cov;

    int n(int full, int quick) const { return opt.quick ? quick : full; }
    double lam_max() const { return opt.quick ? 6.0 : 8.0; }

    const kinematics::QuadratureGrid& sph() {
        if (!sph_)
            sph_ = kinematics::QuadratureGrid::build(
                {Chart::spherical, n(96, 80), n(40, 32), n(16, 12), 14.0}, mass);
        return *sph_;
    }
    const kinematics::QuadratureGrid& hyp() {
        if (!hyp_)
            hyp_ = kinematics::QuadratureGrid::build(
                {Chart::hyperbolic, n(64, 56), n(48, 48), n(16, 12), 9.0}, mass);
        return *hyp_;
    }
    const kinematics::QuadratureGrid& cart() {
        if (!cart_)
            cart_ = kinematics::QuadratureGrid::build(
                {Chart::cartesian, n(48, 44), n(48, 44), n(48, 44), 6.0}, mass);
        return *cart_;
    }

    const states::PhysState& g_sph() {
        if (!g_sph_) g_sph_ = states::gaussian_packet(mass, Sign::plus, {0, 0, 0}, 0.6, sph());
        return *g_sph_;
    }
    const states::PhysState& g_axial() {
        if (!g_axial_)
            g_axial_ = states::gaussian_packet(mass, Sign::plus, {0, 0, 0.8}, 0.5, hyp());
        return *g_axial_;
    }
    const states::PhysState& g_shift() {
        if (!g_shift_)
            g_shift_ = states::gaussian_packet(mass, Sign::plus, {0, 0, 0}, 0.6, sph(),
                                               {0, 0, 1.5});
        return *g_shift_;
    }
    const states::PhysState& cosnu() {
        if (!cosnu_) cosnu_ = states::cosnu_packet(mass, Sign::plus, 1.2, hyp());
        return *cosnu_;
    }
    const states::PhysState& flat() {
        if (!flat_) flat_ = states::boundary_flat_packet(mass, Sign::plus, 1.2, hyp());
        return *flat_;
    }
    const states::PhysState& box_state() {
        if (!box_state_)
            box_state_ = states::state_from_position_amplitude(
                mass, Sign::plus, 0.0, states::box_amplitude(4.0, 1.5, 161, 36), hyp());
        return *box_state_;
    }

    const povm::DensityProfile& time_density_sph() {
        if (!time_sph_)
            time_sph_ = povm::time_density(g_sph(), 0.3, {-40.0, 40.0, n(801, 401)}, 0);
        return *time_sph_;
    }
    const povm::DensityProfile& pos_density_axial() {
        if (!pos_axial_)
            pos_axial_ = povm::position_density(g_axial(), 0.0, {-40.0, 40.0, n(801, 401)},
                                                lam_max(), 0, hyp(), {n(48, 32), opt.threads});
        return *pos_axial_;
    }
    const povm::DensityProfile& pos_density_cosnu() {
        if (!pos_cos_)
            pos_cos_ = povm::position_density(cosnu(), 0.0, {-40.0, 40.0, n(801, 401)},
                                              lam_max(), 0, hyp(), {n(48, 32), opt.threads});
        return *pos_cos_;
    }
    const analysis::SweepResult& sweep() {
        if (!sweep_) {
            const std::vector<double> taus = opt.quick
                                                 ? std::vector<double>{0.0, 5.0, 10.0}
                                                 : std::vector<double>{0.0, 2.5, 5.0, 7.5, 10.0};
            sweep_ = analysis::propertime_sweep(g_axial(), taus, {-40.0, 40.0, n(801, 401)},
                                                lam_max(), 0, hyp());
        }
        return *sweep_;
    }

  private:
    std::optional<kinematics::QuadratureGrid> sph_, hyp_, cart_;
    std::optional<states::PhysState> g_sph_, g_axial_, g_shift_, cosnu_, flat_, box_state_;
    std::optional<povm::DensityProfile> time_sph_, pos_axial_, pos_cos_;
    std::optional<analysis::SweepResult> sweep_;
};

void add(std::vector<CheckResult>& out, const std::string& name,
         const std::function<void(CheckResult&)>& body) {
    CheckResult r;
    r.name = name;
    try {
        body(r);
    } catch (const std::exception& e) {
        r.passed = false;
        r.detail = std::string("exception: ") + e.what();
    }
    out.push_back(std::move(r));
}

double expect(const states::PhysState& s, const kinematics::QuadratureGrid& g,
              const std::function<double(const MomentumPoint&, Sign)>& f) {
    numerics::KahanSum num, den;
    for (Sign sg : {Sign::plus, Sign::minus}) {
        if (!s.has(sg)) continue;
        for (std::size_t i = 0; i < g.size(); ++i) {
            const double v = std::norm(s.eval(sg, g.point(i))) * g.weight(i);
            num.add(f(g.point(i), sg) * v);
            den.add(v);
        }
    }
    return num.value() / den.value();
}

double det3(const std::array<std::array<double, 3>, 3>& J) {
    return J[0][0] * (J[1][1] * J[2][2] - J[1][2] * J[2][1]) -
           J[0][1] * (J[1][0] * J[2][2] - J[1][2] * J[2][0]) +
           J[0][2] * (J[1][0] * J[2][1] - J[1][1] * J[2][0]);
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

// ---- specfun ----------------------------------------------------------------

void checks_specfun(Ctx& ctx, std::vector<CheckResult>& out) {
    (void)ctx;
    add(out, "specfun.gamma_product", [](CheckResult& r) {
        double worst = 0.0;
        for (double L : {0.0, 0.5, 1.0, 2.0}) {
            const double g = specfun::gamma_abs_half(0, L);
            worst = std::max(worst, std::abs(g * g * std::cosh(kPi * L) / kPi - 1.0));
        }
        r.value = worst;
        r.bound = 1e-10;
        r.passed = r.value < r.bound;
    });

    add(out, "specfun.conical_continuity", [](CheckResult& r) {
        double worst = 0.0;
        // integral/asymptotic seam at w = 14
        for (auto [mu, L] : std::array<std::pair<int, double>, 3>{{{0, 0.6}, {1, 2.0}, {3, 8.0}}}) {
            const double lo = specfun::conical_p(mu, L, std::cosh(14.0 - 1e-9));
            const double hi = specfun::conical_p(mu, L, std::cosh(14.0 + 1e-9));
            worst = std::max(worst, std::abs(hi - lo) / std::max(std::abs(lo), 1e-300));
        }
        // series/integral seam at w = 1e-4 and the x = 1 limit
        for (int mu : {0, 2}) {
            const double lo = specfun::conical_p(mu, 0.5, std::cosh(1e-4 - 1e-12));
            const double hi = specfun::conical_p(mu, 0.5, std::cosh(1e-4 + 1e-12));
            worst = std::max(worst, std::abs(hi - lo) / std::max(std::abs(lo) + 1e-30, 1e-300));
        }
        worst = std::max(worst, std::abs(specfun::conical_p(0, 0.7, 1.0 + 1e-12) - 1.0));
        r.value = worst;
        r.bound = 1e-7;
        r.passed = r.value < r.bound;
    });

    add(out, "specfun.sph_orthonormality", [](CheckResult& r) {
        const int lmax = 4, nth = 32, nph = 64;
        const auto& rule = numerics::gauss_legendre(nth);
        struct Fn {
            int l, m;
        };
        std::vector<Fn> fns;
        for (int l = 0; l <= lmax; ++l)
            for (int m = -l; m <= l; ++m) fns.push_back({l, m});
        // tabulate on the product rule (Gauss in cos theta, trapezoid in phi)
        std::vector<std::vector<cplx>> tab(fns.size());
        std::vector<double> wt(nth * nph);
        for (std::size_t f = 0; f < fns.size(); ++f) {
            tab[f].resize(nth * nph);
            for (int i = 0; i < nth; ++i) {
                const double th = std::acos(rule.x[i]);
                for (int j = 0; j < nph; ++j) {
                    const double ph = 2.0 * kPi * j / nph;
                    tab[f][i * nph + j] = specfun::spherical_harmonic(fns[f].l, fns[f].m, th, ph);
                    wt[i * nph + j] = rule.w[i] * (2.0 * kPi / nph);
                }
            }
        }
        double worst = 0.0;
        for (std::size_t a = 0; a < fns.size(); ++a)
            for (std::size_t b = a; b < fns.size(); ++b) {
                numerics::KahanSumC acc;
                for (std::size_t k = 0; k < wt.size(); ++k)
                    acc.add(std::conj(tab[a][k]) * tab[b][k] * wt[k]);
                const double target = (a == b) ? 1.0 : 0.0;
                worst = std::max(worst, std::abs(acc.value() - target));
            }
        r.value = worst;
        r.bound = 1e-8;
        r.passed = r.value < r.bound;
    });
}

// ---- kinematics -------------------------------------------------------------

void checks_kinematics(Ctx& ctx, std::vector<CheckResult>& out) {
    add(out, "kinematics.chart_roundtrip", [&](CheckResult& r) {
        std::mt19937 gen(7);
        std::uniform_real_distribution<double> u(-5.0, 5.0);
        const int N = ctx.n(10000, 2000);
        double worst = 0.0;
        for (int k = 0; k < N; ++k) {
            const auto a = MomentumPoint::cartesian(u(gen), u(gen), u(gen));
            const auto s = kinematics::convert(a, Chart::spherical, ctx.mass);
            const auto h = kinematics::convert(s, Chart::hyperbolic, ctx.mass);
            const auto b = kinematics::convert(h, Chart::cartesian, ctx.mass);
            for (int i = 0; i < 3; ++i)
                worst = std::max(worst, std::abs(a.c[i] - b.c[i]) / (1.0 + std::abs(a.c[i])));
        }
        r.value = worst;
        r.bound = 1e-12;
        r.passed = r.value < r.bound;
        r.detail = std::to_string(N) + " random points";
    });

    add(out, "kinematics.energy_identity", [&](CheckResult& r) {
        std::mt19937 gen(9);
        std::uniform_real_distribution<double> u(-5.0, 5.0);
        double worst = 0.0;
        for (int k = 0; k < 2000; ++k) {
            const auto a = MomentumPoint::cartesian(u(gen), u(gen), u(gen));
            const double ref = std::sqrt(a.c[0] * a.c[0] + a.c[1] * a.c[1] + a.c[2] * a.c[2] +
                                         ctx.mass.m * ctx.mass.m);
            for (Chart c : {Chart::cartesian, Chart::spherical, Chart::hyperbolic}) {
                const double e = kinematics::energy(kinematics::convert(a, c, ctx.mass), ctx.mass);
                worst = std::max(worst, std::abs(e - ref) / ref);
            }
        }
        r.value = worst;
        r.bound = 1e-12;
        r.passed = r.value < r.bound;
    });

    add(out, "kinematics.jacobian_fd", [&](CheckResult& r) {
        const double h = 1e-5;
        double worst = 0.0;
        for (auto [om, nu] : std::array<std::pair<double, double>, 3>{
                 {{0.8, 0.4}, {1.5, -0.9}, {0.3, 1.1}}}) {
            const double ph = 0.6;
            auto pc = [&](double a, double b, double c, int k) {
                return kinematics::convert(MomentumPoint::hyperbolic(a, b, c), Chart::cartesian,
                                           ctx.mass)
                    .c[k];
            };
            std::array<std::array<double, 3>, 3> J{};
            for (int k = 0; k < 3; ++k) {
                J[k][0] = (pc(om + h, nu, ph, k) - pc(om - h, nu, ph, k)) / (2 * h);
                J[k][1] = (pc(om, nu + h, ph, k) - pc(om, nu - h, ph, k)) / (2 * h);
                J[k][2] = (pc(om, nu, ph + h, k) - pc(om, nu, ph - h, k)) / (2 * h);
            }
            const auto p = MomentumPoint::hyperbolic(om, nu, ph);
            const double fd =
                std::abs(det3(J)) * ctx.mass.m / kinematics::energy(p, ctx.mass);
            const double an = kinematics::measure_weight(p, ctx.mass);
            worst = std::max(worst, std::abs(fd - an) / an);
        }
        r.value = worst;
        r.bound = 1e-8;
        r.passed = r.value < r.bound;
    });

    add(out, "kinematics.grid_calibration", [&](CheckResult& r) {
        r.value = std::max({ctx.sph().calibration_defect(), ctx.hyp().calibration_defect(),
                            ctx.cart().calibration_defect()});
        r.bound = 1e-6;
        r.passed = r.value < r.bound;
    });

    add(out, "kinematics.norm_chart_agreement", [&](CheckResult& r) {
        const double n_cart = kinematics::norm(ctx.g_axial(), ctx.cart());
        const double n_sph = kinematics::norm(ctx.g_axial(), ctx.sph());
        r.value = std::max(std::abs(n_cart - 1.0), std::abs(n_sph - 1.0));
        r.bound = 1e-6;
        r.passed = r.value < r.bound;
        r.detail = "cartesian " + fmt(n_cart) + ", spherical " + fmt(n_sph);
    });

    add(out, "kinematics.boost_unitarity", [&](CheckResult& r) {
        const auto b = kinematics::boost_z(ctx.g_axial(), 0.3);
        r.value = std::abs(kinematics::norm(b, ctx.hyp()) - 1.0);
        r.bound = 1e-6;
        r.passed = r.value < r.bound;
    });

    add(out, "kinematics.boost_momentum", [&](CheckResult& r) {
        const double chi = 0.3;
        const auto b = kinematics::boost_z(ctx.g_sph(), chi);
        const double p3b = expect(b, ctx.hyp(), [&](const MomentumPoint& q, Sign) {
            return ctx.mass.m * std::tan(kinematics::convert(q, Chart::hyperbolic, ctx.mass).c[1]);
        });
        const double erest = expect(ctx.g_sph(), ctx.sph(), [&](const MomentumPoint& q, Sign) {
            return kinematics::energy(q, ctx.mass);
        });
        r.value = std::abs(p3b - std::sinh(chi) * erest) / ctx.mass.m;
        r.bound = 1e-6;
        r.passed = r.value < r.bound;
        r.detail = "<p3> = " + fmt(p3b) + " vs sinh(chi) <E> = " + fmt(std::sinh(chi) * erest);
    });
}

// ---- states -----------------------------------------------------------------

void checks_states(Ctx& ctx, std::vector<CheckResult>& out) {
    add(out, "states.normalization", [&](CheckResult& r) {
        r.value = std::max({std::abs(kinematics::norm(ctx.g_axial(), ctx.hyp()) - 1.0),
                            std::abs(kinematics::norm(ctx.g_sph(), ctx.sph()) - 1.0),
                            std::abs(kinematics::norm(ctx.cosnu(), ctx.hyp()) - 1.0)});
        r.bound = 1e-12;
        r.passed = r.value < r.bound;
    });

    add(out, "states.position_amplitude_density", [&](CheckResult& r) {
        const povm::AxisSpec axis{-12.0, 12.0, ctx.n(481, 241)};
        const auto d = povm::position_density(ctx.box_state(), 0.0, axis, 6.0, 0, ctx.hyp(),
                                              {ctx.n(48, 32), ctx.opt.threads});
        // oracle: half-band sinc kernel convolved with the top-hat profile
        const double m = ctx.mass.m;
        std::vector<double> oracle(d.x.size());
        for (std::size_t i = 0; i < d.x.size(); ++i) {
            const double z = d.x[i];
            const double conv = numerics::integrate_panels(
                [&](double zp) { return 0.5 * m * specfun::sinc(0.5 * kPi * m * (z - zp)); },
                -2.0, 2.0, 8, 16);
            oracle[i] = conv * conv;
        }
        numerics::KahanSum md, mo;
        for (std::size_t i = 0; i < d.x.size(); ++i) {
            md.add(d.w[i] * d.p[i]);
            mo.add(d.w[i] * oracle[i]);
        }
        numerics::KahanSum l1;
        for (std::size_t i = 0; i < d.x.size(); ++i)
            l1.add(d.w[i] * std::abs(d.p[i] / md.value() - oracle[i] / mo.value()));
        r.value = l1.value();
        r.bound = 0.02;
        r.passed = r.value < r.bound;
        r.detail = "L1 distance of normalized densities";
    });
}

// ---- operators ----------------------------------------------------------------

void checks_operators(Ctx& ctx, std::vector<CheckResult>& out) {
    add(out, "operators.deficiency_norms", [&](CheckResult& r) {
        double worst = 0.0;
        int count = 0;
        for (auto op : {operators::Op::q0, operators::Op::q3})
            for (const auto& sol : operators::deficiency_solutions(op, 0.4, ctx.mass)) {
                worst = std::max(worst, std::abs(sol.numeric_norm - sol.analytic_norm));
                ++count;
            }
        r.value = worst;
        r.bound = 1e-6;
        r.passed = r.value < r.bound;
        r.detail = std::to_string(count) + " solutions";
    });

    add(out, "operators.spectrum_spacing", [&](CheckResult& r) {
        double worst = 0.0;
        for (double phi : {-3.0, -1.5, 0.0, 0.7, 2.2, kPi}) {
            const auto sp = operators::extension_spectrum(phi, ctx.mass);
            for (int n = -3; n < 3; ++n)
                worst = std::max(worst, std::abs(sp.eigenvalue(n + 1) - sp.eigenvalue(n) -
                                                 2.0 / ctx.mass.m));
        }
        r.value = worst;
        r.bound = 1e-14;
        r.passed = r.value < r.bound;
    });

    add(out, "operators.spectrum_phi_pi", [&](CheckResult& r) {
        const auto sp = operators::extension_spectrum(kPi, ctx.mass);
        double worst = 0.0;
        for (int n = -3; n <= 3; ++n)
            worst = std::max(worst, std::abs(sp.eigenvalue(n) - (2.0 * n + 1.0) / ctx.mass.m));
        r.value = worst;
        r.bound = 1e-15;
        r.passed = r.value <= r.bound;
    });

    add(out, "operators.spectrum_seam", [&](CheckResult& r) {
        const double z1 = operators::extension_spectrum(-kPi + 1e-6, ctx.mass).z0;
        const double z2 = operators::extension_spectrum(-kPi + 2e-6, ctx.mass).z0;
        const double z_lim = 2.0 * z1 - z2;  // linear extrapolation to phi = -pi
        r.value = std::abs(z_lim - (-1.0 / ctx.mass.m));
        r.bound = 1e-9;
        r.passed = r.value < r.bound;
        r.detail = "extrapolated " + fmt(z_lim);
    });

    add(out, "operators.spectrum_branch_join", [&](CheckResult& r) {
        const auto top = operators::extension_spectrum(kPi, ctx.mass);
        const auto near = operators::extension_spectrum(-kPi + 1e-6, ctx.mass);
        double worst = 0.0;
        for (int n = -3; n <= 2; ++n)
            worst = std::max(worst, std::abs(top.eigenvalue(n) - near.eigenvalue(n + 1)));
        r.value = worst;
        r.bound = 1e-5;
        r.passed = r.value < r.bound;
    });

    add(out, "operators.eigen_residual_q0", [&](CheckResult& r) {
        const auto spec = operators::q0_eigenfunction(ctx.mass, Sign::plus, 0.3, 1.2, 0, 0);
        const auto res = operators::eigen_residual(operators::Op::q0, spec.as_state(),
                                                   cplx(1.2, 0.0), 0.3, ctx.sph());
        r.value = res.residual;
        r.bound = 1e-5;
        r.passed = r.value < r.bound;
    });

    add(out, "operators.eigen_residual_q3", [&](CheckResult& r) {
        const auto spec = operators::q3_eigenfunction(ctx.mass, Sign::plus, 0.3, 1.5, 0.8, 1);
        const auto res = operators::eigen_residual(operators::Op::q3, spec.as_state(),
                                                   cplx(1.5, 0.0), 0.3, ctx.hyp());
        r.value = res.residual;
        r.bound = 1e-5;
        r.passed = r.value < r.bound;
    });

    add(out, "operators.symmetry_q0", [&](CheckResult& r) {
        const auto a = states::gaussian_packet(ctx.mass, Sign::plus, {0, 0, 0}, 0.5, ctx.sph());
        const auto b = states::gaussian_packet(ctx.mass, Sign::plus, {0, 0, 0}, 0.75, ctx.sph());
        const auto Qb = operators::apply_q0(b, 0.7, ctx.sph()).result;
        const auto Qa = operators::apply_q0(a, 0.7, ctx.sph()).result;
        const cplx lhs = kinematics::inner_product(a, Qb, ctx.sph());
        const cplx rhs = kinematics::inner_product(Qa, b, ctx.sph());
        r.value = std::abs(lhs - rhs) / std::max(std::abs(lhs), 1e-300);
        r.bound = 1e-6;
        r.passed = r.value < r.bound;
    });

    add(out, "operators.symmetry_q3", [&](CheckResult& r) {
        const auto a =
            states::gaussian_packet(ctx.mass, Sign::plus, {0, 0, 0.5}, 0.5, ctx.hyp());
        const auto b =
            states::gaussian_packet(ctx.mass, Sign::plus, {0, 0, 1.0}, 0.7, ctx.hyp());
        const auto Qb = operators::apply_q3(b, 0.7, ctx.hyp()).result;
        const auto Qa = operators::apply_q3(a, 0.7, ctx.hyp()).result;
        const cplx lhs = kinematics::inner_product(a, Qb, ctx.hyp());
        const cplx rhs = kinematics::inner_product(Qa, b, ctx.hyp());
        r.value = std::abs(lhs - rhs) / std::max(std::abs(lhs), 1e-300);
        r.bound = 1e-6;
        r.passed = r.value < r.bound;
    });

    add(out, "operators.commutator", [&](CheckResult& r) {
        const auto& s = ctx.g_axial();
        const double tau = 0.5;
        const auto Ps = operators::apply_momentum(s, 3).result;
        const auto QPs = operators::apply_q3(Ps, tau, ctx.hyp()).result;
        const auto Qs = operators::apply_q3(s, tau, ctx.hyp()).result;
        const auto PQs = operators::apply_momentum(Qs, 3).result;
        const cplx comm = kinematics::inner_product(s, QPs, ctx.hyp()) -
                          kinematics::inner_product(s, PQs, ctx.hyp());
        const double rhs = expect(s, ctx.hyp(), [&](const MomentumPoint& q, Sign) {
            const double t = std::tan(kinematics::convert(q, Chart::hyperbolic, ctx.mass).c[1]);
            return 1.0 + t * t;
        });
        r.value = std::abs(comm - cplx(0.0, rhs)) / rhs;
        r.bound = 0.02;
        r.passed = r.value < r.bound;
        r.detail = "<[Q3,P3]> = " + fmt(comm.real()) + " + " + fmt(comm.imag()) + "i vs i " +
                   fmt(rhs);
    });

    add(out, "operators.block_diagonal", [&](CheckResult& r) {
        const auto A3 = operators::apply_q3(ctx.g_axial(), 0.5, ctx.hyp()).result;
        const auto A0 = operators::apply_q0(ctx.g_sph(), 0.5, ctx.sph()).result;
        const bool ok = !A3.has(Sign::minus) && A3.has(Sign::plus) && !A0.has(Sign::minus) &&
                        A0.has(Sign::plus);
        r.value = ok ? 0.0 : 1.0;
        r.bound = 0.5;
        r.passed = ok;
        r.detail = "acting rules preserve the energy-sign splitting";
    });
}

// ---- povm ---------------------------------------------------------------------

void checks_povm(Ctx& ctx, std::vector<CheckResult>& out) {
    add(out, "povm.sinc_kernel", [&](CheckResult& r) {
        double worst = 0.0;
        for (int k = 0; k <= 200; ++k) {
            const double dz = 0.05 * k;
            const cplx ov = povm::position_overlap(ctx.mass, 0.4, 1.0, 1.0 - dz, Sign::plus);
            worst = std::max(worst,
                             std::abs(ov - cplx(specfun::sinc(0.5 * kPi * ctx.mass.m * dz), 0)));
        }
        const cplx ovm = povm::position_overlap(ctx.mass, 0.4, 0.0, -1.3, Sign::minus);
        worst = std::max(worst, std::abs(ovm - cplx(specfun::sinc(0.5 * kPi * 1.3), 0)));
        r.value = worst;
        r.bound = 1e-6;
        r.passed = r.value < r.bound;
        r.detail = "dz in [0, 10]";
    });

    add(out, "povm.time_kernel", [&](CheckResult& r) {
        double worst = 0.0;
        struct Case {
            double sep, wa, wb;
        };
        for (const auto& c : {Case{0.0, 0.7, 0.7}, Case{1.0, 0.6, 0.9}, Case{2.5, 0.8, 0.8}}) {
            for (Sign sg : {Sign::plus, Sign::minus}) {
                const auto res = povm::time_overlap_smeared(ctx.mass, 0.3, {0.0, c.wa},
                                                            {c.sep, c.wb}, sg);
                worst = std::max(worst, std::abs(res.direct - res.analytic) /
                                            std::max(std::abs(res.analytic), 1e-3));
            }
        }
        r.value = worst;
        r.bound = 1e-4;
        r.passed = r.value < r.bound;
        r.detail = "two evaluation routes, both signs";
    });

    add(out, "povm.completeness_time", [&](CheckResult& r) {
        r.value = std::abs(1.0 - ctx.time_density_sph().total_mass);
        r.bound = 1e-2;
        r.passed = r.value < r.bound;
        r.detail = "spherical packet, l = 0";
    });

    add(out, "povm.completeness_monotone", [&](CheckResult& r) {
        const std::array<int, 3> ls = ctx.opt.quick ? std::array<int, 3>{0, 2, 4}
                                                    : std::array<int, 3>{0, 3, 6};
        std::array<double, 3> res{};
        for (int i = 0; i < 3; ++i) {
            const auto d = povm::time_density(ctx.g_shift(), 0.3,
                                              {-40.0, 40.0, ctx.n(801, 401)}, ls[i]);
            res[i] = std::abs(1.0 - d.total_mass);
        }
        r.passed = res[1] < res[0] && res[2] < res[1] + 1e-12 && res[2] < 1e-2;
        r.value = res[2];
        r.bound = 1e-2;
        r.detail = "residuals " + fmt(res[0]) + " -> " + fmt(res[1]) + " -> " + fmt(res[2]);
    });

    add(out, "povm.completeness_position", [&](CheckResult& r) {
        r.value = std::abs(1.0 - ctx.pos_density_axial().total_mass);
        r.bound = 1e-2;
        r.passed = r.value < r.bound;
        r.detail = "axial packet";
    });

    add(out, "povm.completeness_band_edge", [&](CheckResult& r) {
        r.value = std::abs(1.0 - ctx.pos_density_cosnu().total_mass);
        r.bound = 1e-2;
        r.passed = r.value < r.bound;
        r.detail = "band-edge cos(nu) packet";
    });

    add(out, "povm.positivity", [&](CheckResult& r) {
        r.value = std::max({ctx.time_density_sph().clipped_mass,
                            ctx.pos_density_axial().clipped_mass,
                            ctx.pos_density_cosnu().clipped_mass});
        r.bound = 1e-12;
        r.passed = r.value < r.bound;
        r.detail = "negative mass removed by clipping";
    });

    add(out, "povm.mass_window", [&](CheckResult& r) {
        r.value = std::max({ctx.time_density_sph().total_mass,
                            ctx.pos_density_axial().total_mass,
                            ctx.pos_density_cosnu().total_mass}) -
                  1.0;
        r.bound = 1e-6;
        r.passed = r.value < r.bound;
        r.detail = "total mass never exceeds 1";
    });

    add(out, "povm.time_reversal", [&](CheckResult& r) {
        const auto sm = states::gaussian_packet(ctx.mass, Sign::minus, {0, 0, 0}, 0.6, ctx.sph());
        const povm::AxisSpec axis{-20.0, 20.0, 401};
        const auto dp = povm::time_density(ctx.g_sph(), 0.0, axis, 0);
        const auto dm = povm::time_density(sm, 0.0, axis, 0);
        double worst = 0.0;
        for (std::size_t i = 0; i < dp.p.size(); ++i)
            worst = std::max(worst, std::abs(dm.p[i] - dp.p[dp.p.size() - 1 - i]));
        r.value = worst;
        r.bound = 1e-10;
        r.passed = r.value < r.bound;
        r.detail = "p_minus(t) = p_plus(-t)";
    });

    add(out, "povm.tail_law", [&](CheckResult& r) {
        const double slope = analysis::density_tail_exponent(ctx.pos_density_cosnu(), 8.0, 28.0);
        r.value = std::abs(slope + 2.0);
        r.bound = 0.2;
        r.passed = r.value < r.bound;
        r.detail = "envelope exponent " + fmt(slope);
    });

    add(out, "povm.drift", [&](CheckResult& r) {
        const auto& sw = ctx.sweep();
        r.value = std::abs(sw.drift_slope - sw.momentum_mean) /
                  std::max(std::abs(sw.momentum_mean), 1e-300);
        r.bound = 0.01;
        r.passed = r.value < r.bound;
        r.detail = "slope " + fmt(sw.drift_slope) + " vs <P3>/m " + fmt(sw.momentum_mean);
    });
}

// ---- analysis -------------------------------------------------------------------

void checks_analysis(Ctx& ctx, std::vector<CheckResult>& out) {
    add(out, "analysis.sweep_affine", [&](CheckResult& r) {
        const auto& sw = ctx.sweep();
        const double span = sw.rows.back().tau - sw.rows.front().tau;
        double worst = 0.0;
        for (const auto& row : sw.rows)
            worst = std::max(worst, std::abs(row.mean - (sw.drift_intercept +
                                                         sw.drift_slope * row.tau)));
        r.value = worst / std::max(std::abs(sw.drift_slope) * span, 1e-300);
        r.bound = 0.01;
        r.passed = r.value < r.bound;
        r.detail = "peak deviation from the affine fit";
    });

    add(out, "analysis.admissible_gaussian", [&](CheckResult& r) {
        const auto rep = analysis::admissibility_check(ctx.g_axial(), ctx.hyp());
        r.passed = rep.admissible;
        r.value = rep.endpoint_ratio;
        r.bound = 1e-6;
        r.detail = rep.notes.empty() ? "all five conditions hold" : rep.notes.front();
    });

    add(out, "analysis.exclusion_box", [&](CheckResult& r) {
        const auto rep =
            analysis::admissibility_check(states::box_amplitude(4.0, 1.5, 161, 36), ctx.mass);
        r.passed = !rep.admissible && !rep.band_limit;
        r.value = rep.band_residual;
        r.bound = 1e-6;
        r.detail = "compact support leaks " + fmt(rep.band_residual) + " outside the band";
    });

    add(out, "analysis.exclusion_extension", [&](CheckResult& r) {
        const auto rep = analysis::admissibility_check(ctx.flat(), ctx.hyp());
        r.passed = !rep.admissible && !rep.endpoint_zero && !rep.boundary_decay;
        r.value = rep.endpoint_ratio;
        r.bound = 1e-6;
        r.detail = "constant boundary profile is rejected";
    });

    add(out, "analysis.exclusion_random", [&](CheckResult& r) {
        std::mt19937 gen(11);
        std::uniform_real_distribution<double> uc(-1.5, 1.5), us(0.4, 1.0);
        int failures = 0;
        std::string det;
        for (int k = 0; k < 10; ++k) {
            const std::array<double, 3> c{uc(gen), uc(gen), uc(gen)};
            const double sig = us(gen);
            const auto s = states::gaussian_packet(ctx.mass, Sign::plus, c, sig, ctx.hyp());
            const auto rep = analysis::admissibility_check(s, ctx.hyp());
            if (!rep.admissible) {
                ++failures;
                det += (det.empty() ? "" : ";") + std::to_string(k) + ":";
                if (!rep.band_limit) det += " band";
                if (!rep.endpoint_zero) det += " endpoint";
                if (!rep.boundary_decay) det += " decay";
                if (!rep.square_integrable) det += " norm";
                if (!rep.smooth) det += " smooth";
            }
        }
        r.value = failures;
        r.bound = 0.5;
        r.passed = failures == 0;
        r.detail = failures == 0 ? "10 random Gaussian packets all admissible"
                                 : "failing flags " + det;
    });

    add(out, "analysis.truncation_flip", [&](CheckResult& r) {
        auto gaussian_amp = [](double lo, double hi, int n) {
            states::PositionAmplitude pa;
            for (int i = 0; i < n; ++i) {
                const double z = lo + (hi - lo) * i / (n - 1);
                pa.z.push_back(z);
                pa.omega.push_back(std::exp(-z * z / 36.0));
            }
            pa.lambda = {1.5};
            pa.alpha = {1.0};
            return pa;
        };
        const auto full = analysis::admissibility_check(gaussian_amp(-24.0, 24.0, 301), ctx.mass);
        const auto cut = analysis::admissibility_check(gaussian_amp(-4.0, 4.0, 151), ctx.mass);
        r.passed = full.admissible && !cut.admissible && !cut.band_limit;
        r.value = cut.band_residual;
        r.bound = 1e-6;
        r.detail = "support truncation flips the verdict";
    });

    add(out, "analysis.exp_tail_violation", [&](CheckResult& r) {
        const auto& d = ctx.pos_density_cosnu();
        std::vector<double> amp(d.p.size());
        for (std::size_t i = 0; i < d.p.size(); ++i) amp[i] = std::sqrt(d.p[i]);
        int failures = 0;
        std::string rates;
        for (double A : {0.25, 0.5, 1.0}) {
            const auto res = analysis::exponential_tail_test(d.x, amp, A * ctx.mass.m);
            if (res.verdict != analysis::TailVerdict::not_exponentially_bounded) ++failures;
            rates += (rates.empty() ? "" : ", ") + fmt(res.fitted_rate);
        }
        r.value = failures;
        r.bound = 0.5;
        r.passed = failures == 0;
        r.detail = "fitted rates " + rates + " all beat the exponential bounds";
    });

    add(out, "analysis.exp_tail_control", [&](CheckResult& r) {
        std::vector<double> z, amp;
        for (int i = -300; i <= 300; ++i) {
            const double zz = 0.1 * i;
            z.push_back(zz);
            amp.push_back(std::exp(-0.5 * std::abs(zz)) * (1.1 + std::cos(3.0 * zz)));
        }
        const auto res = analysis::exponential_tail_test(z, amp, 0.5);
        r.passed = res.verdict == analysis::TailVerdict::exponentially_bounded;
        r.value = res.fitted_rate;
        r.bound = -0.5;
        r.detail = "synthetic e^{-z/2} envelope accepted";
    });

    // a position-shifted packet keeps the derivative term in the real part of
    // <Q3>, so both the identity and the stencil order are nontrivial
    auto cov_packet = [&]() {
        return states::gaussian_packet(ctx.mass, Sign::plus, {0, 0, 0.8}, 0.5, ctx.hyp(),
                                       {0, 0, 1.2});
    };

    add(out, "analysis.covariance_identity", [&](CheckResult& r) {
        ctx.cov = analysis::covariance_check(cov_packet(), 0.3, 0.7, ctx.sph(), ctx.hyp());
        r.value = ctx.cov->rel_discrepancy;
        r.bound = 1e-3;
        r.passed = r.value < r.bound;
        r.detail = "lhs " + fmt(ctx.cov->lhs) + " vs rhs " + fmt(ctx.cov->rhs);
    });

    add(out, "analysis.covariance_order", [&](CheckResult& r) {
        if (!ctx.cov)
            ctx.cov = analysis::covariance_check(cov_packet(), 0.3, 0.7, ctx.sph(), ctx.hyp());
        r.value = ctx.cov->convergence_order;
        r.bound = 2.0;
        r.passed = r.value >= r.bound;
        r.detail = "boosted <Q3> under plain stencil refinement h, h/2, h/4";
    });
}

}  // namespace

std::vector<CheckResult> run_verification(const CheckOptions& opt) {
    Ctx ctx;
    ctx.opt = opt;
    std::vector<CheckResult> out;
    checks_specfun(ctx, out);
    checks_kinematics(ctx, out);
    checks_states(ctx, out);
    checks_operators(ctx, out);
    checks_povm(ctx, out);
    checks_analysis(ctx, out);
    return out;
}

std::string format_check_line(const CheckResult& r) {
    std::ostringstream os;
    os << (r.passed ? "[PASS] " : "[FAIL] ") << r.name;
    for (std::size_t i = r.name.size(); i < 36; ++i) os << ' ';
    char buf[80];
    std::snprintf(buf, sizeof buf, " value=%-12.4g bound=%-10.4g", r.value, r.bound);
    os << buf;
    if (!r.detail.empty()) os << " | " << r.detail;
    return os.str();
}

}  // namespace ptloc::checks
