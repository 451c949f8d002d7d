#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "ptloc/kinematics.hpp"
#include "ptloc/numerics.hpp"
#include "ptloc/operators.hpp"
#include "ptloc/povm.hpp"
#include "ptloc/specfun.hpp"
#include "ptloc/states.hpp"
#include "test_helpers.hpp"

using namespace ptloc;
using testutil::hyp_grid;
using testutil::sph_grid;

namespace {

constexpr double kPi = 3.14159265358979323846;
const povm::PositionQuad kPosQuad{48, 4};

}  // namespace

TEST_SUITE("povm") {

TEST_CASE("longitudinal pairing of position elements follows the sinc law") {
    const Mass m{1.0};
    double worst = 0.0;
    for (int k = 0; k <= 100; ++k) {
        const double dz = 10.0 * k / 100.0;
        const cplx got = povm::position_overlap(m, 0.0, dz, 0.0, Sign::plus);
        const double expect = specfun::sinc(0.5 * kPi * m.m * dz);
        worst = std::max(worst, std::abs(got - expect));
    }
    CHECK(worst <= 1e-10);

    // exact zero of the kernel at the first node dz = 2/m
    CHECK(std::abs(povm::position_overlap(m, 0.0, 2.0, 0.0, Sign::plus)) <= 1e-12);

    // independent of proper time and of the energy sign
    const cplx a = povm::position_overlap(m, 0.0, 1.3, 0.2, Sign::plus);
    const cplx b = povm::position_overlap(m, 3.0, 1.3, 0.2, Sign::plus);
    const cplx c = povm::position_overlap(m, 0.0, 1.3, 0.2, Sign::minus);
    CHECK(std::abs(a - b) <= 1e-12);
    CHECK(std::abs(a - c) <= 1e-12);

    // mass sets the node scale
    const Mass m2{2.0};
    CHECK(std::abs(povm::position_overlap(m2, 0.0, 1.0, 0.0, Sign::plus)) <= 1e-12);
}

TEST_CASE("smeared time kernel: direct pairing matches the half-line formula") {
    const Mass m{1.0};
    const povm::GaussianWindow wa{0.0, 0.7}, wb{1.1, 0.5};
    for (Sign sg : {Sign::plus, Sign::minus}) {
        const auto res = povm::time_overlap_smeared(m, 0.4, wa, wb, sg);
        CAPTURE(sign_factor(sg));
        CHECK(std::abs(res.direct - res.analytic) <= 1e-8);
    }

    // swapping the windows conjugates the pairing (both routes)
    const auto fwd = povm::time_overlap_smeared(m, 0.4, wa, wb, Sign::plus);
    const auto rev = povm::time_overlap_smeared(m, 0.4, wb, wa, Sign::plus);
    CHECK(std::abs(fwd.analytic - std::conj(rev.analytic)) <= 1e-12);
    CHECK(std::abs(fwd.direct - std::conj(rev.direct)) <= 1e-8);

    // flipping the energy sign conjugates the kernel
    const auto minus = povm::time_overlap_smeared(m, 0.4, wa, wb, Sign::minus);
    CHECK(std::abs(fwd.analytic - std::conj(minus.analytic)) <= 1e-12);

    CHECK_THROWS_AS(povm::time_overlap_smeared(m, 0.0, {0.0, -1.0}, wb, Sign::plus),
                    ConfigError);
}

TEST_CASE("time-of-arrival density is complete on a spherical packet") {
    const auto& s = testutil::rest_packet();
    const auto d = povm::time_density(s, 0.3, {-40.0, 40.0, 801}, 0);
    CHECK(std::abs(d.total_mass - 1.0) <= 1e-6);
    CHECK(d.axis == 't');
    // density is nonnegative and integrates consistently with its weights
    double mn = 0.0;
    for (double v : d.p) mn = std::min(mn, v);
    CHECK(mn >= 0.0);
}

TEST_CASE("angular refinement drives the time completeness residual down") {
    // a displaced packet has content in every l; truncating l leaves mass out
    const Mass m{1.0};
    const auto s = states::gaussian_packet(m, Sign::plus, {0, 0, 0}, 0.6, sph_grid(),
                                           {0, 0, 1.5});
    std::vector<double> residuals;
    for (int l_max : {0, 4, 12}) {
        const auto d = povm::time_density(s, 0.0, {-40.0, 40.0, 801}, l_max);
        residuals.push_back(std::abs(1.0 - d.total_mass));
    }
    CHECK(residuals[1] < 0.1 * residuals[0]);
    CHECK(residuals[2] < 0.1 * residuals[1]);
    CHECK(residuals[2] <= 1e-2);
}

TEST_CASE("time reversal: the minus component arrives mirrored") {
    const Mass m{1.0};
    const auto plus = states::gaussian_packet(m, Sign::plus, {0, 0, 0}, 0.6, sph_grid());
    auto minus = plus;
    std::swap(minus.comp[sign_index(Sign::plus)], minus.comp[sign_index(Sign::minus)]);

    const povm::AxisSpec axis{-20.0, 20.0, 401};
    const auto dp = povm::time_density(plus, 0.2, axis, 0);
    const auto dm = povm::time_density(minus, 0.2, axis, 0);
    double worst = 0.0;
    const std::size_t n = dp.x.size();
    for (std::size_t i = 0; i < n; ++i)
        worst = std::max(worst, std::abs(dp.p[i] - dm.p[n - 1 - i]));
    CHECK(worst <= 1e-10);
}

TEST_CASE("position density is complete and never exceeds unit mass") {
    const auto& s = testutil::axial_packet();
    const auto d = povm::position_density(s, 0.0, {-40.0, 40.0, 801}, 8.0, 0, hyp_grid(),
                                          kPosQuad);
    CHECK(std::abs(d.total_mass - 1.0) <= 1e-3);
    CHECK(d.total_mass <= 1.0 + 1e-6);
    CHECK(d.clipped_mass <= 1e-12);

    const auto cos_packet = states::cosnu_packet(Mass{1.0}, Sign::plus, 1.2, hyp_grid());
    const auto dc = povm::position_density(cos_packet, 0.0, {-40.0, 40.0, 801}, 8.0, 0,
                                           hyp_grid(), kPosQuad);
    CHECK(std::abs(dc.total_mass - 1.0) <= 1e-3);
    CHECK(dc.total_mass <= 1.0 + 1e-6);
}

TEST_CASE("density first moment reproduces the acting-rule expectation") {
    // the localization density's mean must agree with <Q3> from the stencil
    const Mass m{1.0};
    const auto s = states::gaussian_packet(m, Sign::plus, {0, 0, 0.6}, 0.5, hyp_grid(),
                                           {0, 0, 1.2});
    const double tau = 0.8;
    const auto d = povm::position_density(s, tau, {-40.0, 40.0, 801}, 8.0, 0, hyp_grid(),
                                          kPosQuad);
    const auto app = operators::apply_q3(s, tau, hyp_grid());
    const double q3 = kinematics::inner_product(s, app.result, hyp_grid()).real();
    CAPTURE(d.mean());
    CAPTURE(q3);
    CHECK(std::abs(d.mean() - q3) <= 5e-3);
}

TEST_CASE("symmetric packets localize symmetrically at tau = 0") {
    const auto& s = testutil::axial_packet();
    const auto d = povm::position_density(s, 0.0, {-30.0, 30.0, 601}, 8.0, 0, hyp_grid(),
                                          kPosQuad);
    CHECK(std::abs(d.mean()) <= 1e-8);
}

TEST_CASE("interval probabilities are additive and clipped to the axis") {
    const auto& s = testutil::axial_packet();
    const auto d = povm::position_density(s, 0.0, {-30.0, 30.0, 601}, 8.0, 0, hyp_grid(),
                                          kPosQuad);
    const double pab = povm::interval_probability(d, -5.0, 1.0);
    const double pbc = povm::interval_probability(d, 1.0, 8.0);
    const double pac = povm::interval_probability(d, -5.0, 8.0);
    CHECK(pab + pbc == doctest::Approx(pac).epsilon(1e-12));
    CHECK(povm::interval_probability(d, 40.0, 50.0) == 0.0);
    CHECK(povm::interval_probability(d, -100.0, 100.0) <= 1.0);
    CHECK(povm::interval_probability(d, -100.0, 100.0) ==
          doctest::Approx(std::min(d.total_mass, 1.0)).epsilon(1e-12));
}

TEST_CASE("completeness residual helper matches the density mass defect") {
    const auto& s = testutil::rest_packet();
    povm::CompletenessSpec cs;
    cs.axis = 't';
    cs.range = {-40.0, 40.0, 801};
    cs.l_max = 0;
    const double res = povm::completeness_residual(s, 0.3, cs, hyp_grid());
    const auto d = povm::time_density(s, 0.3, cs.range, 0);
    CHECK(res == doctest::Approx(std::abs(1.0 - d.total_mass)).epsilon(1e-14));
}

}  // TEST_SUITE
