#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "ptloc/kinematics.hpp"
#include "ptloc/numerics.hpp"
#include "ptloc/states.hpp"
#include "test_helpers.hpp"

using namespace ptloc;
using testutil::cart_grid;
using testutil::hyp_grid;
using testutil::sph_grid;

namespace {

std::array<double, 3> to_cart(const MomentumPoint& p, Mass m) {
    return kinematics::convert(p, Chart::cartesian, m).c;
}

// cartesian components of the hyperbolic chart map, used by the FD Jacobian
std::array<double, 3> hyp_map(double om, double nu, double ph, double m) {
    const double pperp = m * std::sinh(om) / std::cos(nu);
    return {pperp * std::cos(ph), pperp * std::sin(ph), m * std::tan(nu)};
}

}  // namespace

TEST_SUITE("kinematics") {

TEST_CASE("chart conversions round trip on random momenta") {
    const Mass m{1.0};
    std::mt19937 gen(7);
    std::uniform_real_distribution<double> u(-6.0, 6.0);
    double worst = 0.0;
    for (int k = 0; k < 10000; ++k) {
        const MomentumPoint p = MomentumPoint::cartesian(u(gen), u(gen), u(gen));
        for (Chart via : {Chart::spherical, Chart::hyperbolic}) {
            const auto back = to_cart(kinematics::convert(p, via, m), m);
            for (int i = 0; i < 3; ++i)
                worst = std::max(worst, std::abs(back[i] - p.c[i]));
        }
    }
    // points near the 3-axis and near the origin
    for (const auto& c : std::vector<std::array<double, 3>>{
             {0, 0, 4.0}, {0, 0, -2.5}, {1e-9, 0, 1e-9}, {0, 1e-12, -3.0}}) {
        const MomentumPoint p = MomentumPoint::cartesian(c[0], c[1], c[2]);
        for (Chart via : {Chart::spherical, Chart::hyperbolic}) {
            const auto back = to_cart(kinematics::convert(p, via, m), m);
            for (int i = 0; i < 3; ++i)
                worst = std::max(worst, std::abs(back[i] - p.c[i]));
        }
    }
    CHECK(worst <= 1e-12);
}

TEST_CASE("energy closed form in the hyperbolic chart") {
    const Mass m{1.3};
    std::mt19937 gen(13);
    std::uniform_real_distribution<double> uo(0.0, 5.0), un(-1.4, 1.4), up(0.0, 6.28);
    for (int k = 0; k < 200; ++k) {
        const double om = uo(gen), nu = un(gen), ph = up(gen);
        const auto p = MomentumPoint::hyperbolic(om, nu, ph);
        const double direct = m.m * std::cosh(om) / std::cos(nu);
        const auto c = to_cart(p, m);
        const double pythagoras =
            std::sqrt(c[0] * c[0] + c[1] * c[1] + c[2] * c[2] + m.m * m.m);
        CHECK(std::abs(kinematics::energy(p, m) - direct) <= 1e-12 * direct);
        CHECK(std::abs(direct - pythagoras) <= 1e-12 * direct);
    }
}

TEST_CASE("hyperbolic measure density matches a finite-difference Jacobian") {
    const Mass m{1.0};
    std::mt19937 gen(29);
    std::uniform_real_distribution<double> uo(0.1, 4.0), un(-1.3, 1.3), up(0.3, 6.0);
    const double h = 1e-5;
    for (int k = 0; k < 50; ++k) {
        const double om = uo(gen), nu = un(gen), ph = up(gen);
        // columns of the Jacobian by central differences
        std::array<std::array<double, 3>, 3> J{};
        for (int d = 0; d < 3; ++d) {
            std::array<double, 3> lo{om, nu, ph}, hi{om, nu, ph};
            lo[d] -= h;
            hi[d] += h;
            const auto a = hyp_map(lo[0], lo[1], lo[2], m.m);
            const auto b = hyp_map(hi[0], hi[1], hi[2], m.m);
            for (int i = 0; i < 3; ++i) J[i][d] = (b[i] - a[i]) / (2.0 * h);
        }
        const double det = J[0][0] * (J[1][1] * J[2][2] - J[1][2] * J[2][1]) -
                           J[0][1] * (J[1][0] * J[2][2] - J[1][2] * J[2][0]) +
                           J[0][2] * (J[1][0] * J[2][1] - J[1][1] * J[2][0]);
        const auto p = MomentumPoint::hyperbolic(om, nu, ph);
        const double expect = std::abs(det) * m.m / kinematics::energy(p, m);
        const double got = kinematics::measure_weight(p, m);
        CAPTURE(om);
        CAPTURE(nu);
        CHECK(std::abs(got - expect) <= 1e-6 * expect);
    }
}

TEST_CASE("grids are calibrated and chart norms agree") {
    CHECK(sph_grid().calibration_defect() < 1e-6);
    CHECK(hyp_grid().calibration_defect() < 1e-6);
    CHECK(cart_grid().calibration_defect() < 1e-6);

    // a state normalized on the hyperbolic grid has unit norm in every chart
    const auto& s = testutil::axial_packet();
    CHECK(std::abs(kinematics::norm(s, hyp_grid()) - 1.0) <= 1e-12);
    CHECK(std::abs(kinematics::norm(s, sph_grid()) - 1.0) <= 1e-6);
    CHECK(std::abs(kinematics::norm(s, cart_grid()) - 1.0) <= 1e-6);
}

TEST_CASE("boost is unitary and shifts the momentum mean by sinh(chi) <E>") {
    const Mass m{1.0};
    const double chi = 0.4;
    const auto& s = testutil::rest_packet();
    const auto b = kinematics::boost_z(s, chi);

    CHECK(std::abs(kinematics::norm(b, hyp_grid()) - 1.0) <= 1e-6);

    auto expectation = [&](const states::PhysState& st,
                           const std::function<double(const MomentumPoint&)>& f) {
        numerics::KahanSum num, den;
        const auto& g = hyp_grid();
        for (std::size_t i = 0; i < g.size(); ++i) {
            const double v = std::norm(st.eval(Sign::plus, g.point(i))) * g.weight(i);
            num.add(f(g.point(i)) * v);
            den.add(v);
        }
        return num.value() / den.value();
    };
    const double p3_boosted = expectation(b, [&](const MomentumPoint& q) {
        return kinematics::convert(q, Chart::cartesian, m).c[2];
    });
    const double e_rest =
        expectation(s, [&](const MomentumPoint& q) { return kinematics::energy(q, m); });
    // rest packet: <p3> = 0, so the boosted mean is sinh(chi) <E>
    CHECK(std::abs(p3_boosted - std::sinh(chi) * e_rest) <= 1e-6 * e_rest);
}

TEST_CASE("grid spec serialization round trips and rejects corrupted text") {
    const auto& g = hyp_grid();
    const std::string text = g.serialize();
    const auto spec = kinematics::QuadratureGrid::parse_spec(text);
    CHECK(spec.chart == Chart::hyperbolic);
    CHECK(spec.n1 == g.spec().n1);
    CHECK(spec.n2 == g.spec().n2);
    CHECK(spec.n3 == g.spec().n3);
    CHECK(spec.bound == doctest::Approx(g.spec().bound).epsilon(1e-15));

    const auto rebuilt = kinematics::QuadratureGrid::build(spec, g.mass());
    REQUIRE(rebuilt.size() == g.size());
    for (std::size_t i : {std::size_t(0), g.size() / 2, g.size() - 1}) {
        CHECK(rebuilt.point(i).c == g.point(i).c);
        CHECK(rebuilt.weight(i) == g.weight(i));
    }

    CHECK_THROWS_AS(kinematics::QuadratureGrid::parse_spec("not a grid spec"), ConfigError);
    CHECK_THROWS_AS(kinematics::QuadratureGrid::parse_spec(""), ConfigError);
}

}  // TEST_SUITE
