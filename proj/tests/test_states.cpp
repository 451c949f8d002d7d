#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>

#include "ptloc/kinematics.hpp"
#include "ptloc/numerics.hpp"
#include "ptloc/states.hpp"
#include "test_helpers.hpp"

using namespace ptloc;
using testutil::hyp_grid;
using testutil::sph_grid;

namespace {

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& name) : path("/tmp/ptloc_test_" + name) {}
    ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_SUITE("states") {

TEST_CASE("gaussian packets normalize and infer their symmetry") {
    const Mass m{1.0};
    const auto sph = states::gaussian_packet(m, Sign::plus, {0, 0, 0}, 0.6, sph_grid());
    CHECK(sph.symmetry == states::Symmetry::spherical);
    CHECK(std::abs(kinematics::norm(sph, sph_grid()) - 1.0) <= 1e-12);

    const auto ax = states::gaussian_packet(m, Sign::plus, {0, 0, 1.2}, 0.5, hyp_grid());
    CHECK(ax.symmetry == states::Symmetry::axial);
    CHECK(std::abs(kinematics::norm(ax, hyp_grid()) - 1.0) <= 1e-12);

    const auto off = states::gaussian_packet(m, Sign::plus, {0.7, -0.4, 0.2}, 0.5, hyp_grid());
    CHECK(off.symmetry == states::Symmetry::none);

    // a position shift is a pure phase: the momentum density is unchanged
    const auto shifted =
        states::gaussian_packet(m, Sign::plus, {0, 0, 1.2}, 0.5, hyp_grid(), {0, 0, 2.0});
    const auto q = MomentumPoint::hyperbolic(0.6, 0.4, 1.0);
    CHECK(std::abs(std::abs(shifted.eval(Sign::plus, q)) - std::abs(ax.eval(Sign::plus, q))) <=
          1e-14);
    CHECK(std::abs(kinematics::norm(shifted, hyp_grid()) - 1.0) <= 1e-12);
}

TEST_CASE("band-edge reference packets have the advertised boundary behavior") {
    const Mass m{1.0};
    const auto cosnu = states::cosnu_packet(m, Sign::plus, 1.2, hyp_grid());
    const auto flat = states::boundary_flat_packet(m, Sign::plus, 1.2, hyp_grid());
    CHECK(std::abs(kinematics::norm(cosnu, hyp_grid()) - 1.0) <= 1e-12);
    CHECK(std::abs(kinematics::norm(flat, hyp_grid()) - 1.0) <= 1e-12);

    // (sec nu)^{3/2}-scaled boundary profile: the cosnu packet falls linearly
    // in cos(nu), the flat one tends to a constant
    auto profile = [&](const states::PhysState& s, double nu) {
        return std::pow(1.0 / std::cos(nu), 1.5) *
               std::abs(s.eval(Sign::plus, MomentumPoint::hyperbolic(0.5, nu, 0.0)));
    };
    const double nu_in = 1.2, nu_edge = 1.5706;
    CHECK(profile(cosnu, nu_edge) / profile(cosnu, nu_in) < 1e-3);
    CHECK(profile(flat, nu_edge) / profile(flat, nu_in) ==
          doctest::Approx(1.0).epsilon(1e-2));
}

TEST_CASE("box amplitude samples a top hat with a gaussian transverse spectrum") {
    const auto pa = states::box_amplitude(4.0, 1.5, 161, 36);
    REQUIRE(pa.z.size() == 161);
    REQUIRE(pa.omega.size() == 161);
    REQUIRE(pa.lambda.size() == 36);
    CHECK(pa.z.front() == doctest::Approx(-2.0));
    CHECK(pa.z.back() == doctest::Approx(2.0));
    for (const auto& w : pa.omega) CHECK(w == cplx(1.0, 0.0));
    CHECK(std::abs(pa.alpha.front()) > std::abs(pa.alpha.back()));
    CHECK_THROWS_AS(states::box_amplitude(-1.0, 1.5, 10, 4), ConfigError);
    CHECK_THROWS_AS(states::box_amplitude(4.0, 1.5, 1, 4), ConfigError);
}

TEST_CASE("state built from a position amplitude is normalized and axial") {
    const Mass m{1.0};
    const auto s = states::state_from_position_amplitude(
        m, Sign::plus, 0.0, states::box_amplitude(4.0, 1.5, 161, 36), hyp_grid());
    CHECK(s.symmetry == states::Symmetry::axial);
    CHECK(std::abs(kinematics::norm(s, hyp_grid()) - 1.0) <= 1e-12);
    // no dependence on the azimuth
    const auto a = s.eval(Sign::plus, MomentumPoint::hyperbolic(0.8, 0.3, 0.0));
    const auto b = s.eval(Sign::plus, MomentumPoint::hyperbolic(0.8, 0.3, 2.1));
    CHECK(std::abs(a - b) <= 1e-14 * std::abs(a));
}

TEST_CASE("save/load round trips grid samples") {
    TempFile tf("state_roundtrip.txt");
    const auto& s = testutil::axial_packet();
    states::save_state(s, hyp_grid(), tf.path);
    const auto loaded = states::load_state(tf.path);

    CHECK(loaded.mass.m == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(loaded.symmetry == states::Symmetry::axial);
    CHECK(loaded.normalized);
    double worst = 0.0;
    const auto& g = hyp_grid();
    for (std::size_t i = 0; i < g.size(); i += 37)
        worst = std::max(worst,
                         std::abs(loaded.eval(Sign::plus, g.point(i)) -
                                  s.eval(Sign::plus, g.point(i))));
    CHECK(worst <= 1e-15);
    CHECK(std::abs(kinematics::norm(loaded, g) - 1.0) <= 1e-12);
}

TEST_CASE("loader rejects corrupted state files") {
    SUBCASE("missing file") {
        CHECK_THROWS_AS(states::load_state("/tmp/ptloc_does_not_exist.txt"), ConfigError);
    }
    SUBCASE("bad magic") {
        TempFile tf("state_badmagic.txt");
        std::ofstream(tf.path) << "something else\n";
        CHECK_THROWS_AS(states::load_state(tf.path), ConfigError);
    }
    SUBCASE("truncated sample table") {
        TempFile tf("state_truncated.txt");
        {
            const auto& s = testutil::axial_packet();
            states::save_state(s, hyp_grid(), tf.path);
            std::ifstream is(tf.path);
            std::string text((std::istreambuf_iterator<char>(is)),
                             std::istreambuf_iterator<char>());
            text.resize(text.size() / 2);
            std::ofstream(tf.path) << text;
        }
        CHECK_THROWS_AS(states::load_state(tf.path), ConfigError);
    }
    SUBCASE("unnormalized payload") {
        TempFile tf("state_unnormalized.txt");
        // save a deliberately non-normalized state: twice a unit Gaussian
        auto s = testutil::axial_packet();
        auto inner = s.comp[sign_index(Sign::plus)];
        s.comp[sign_index(Sign::plus)] = [inner](const MomentumPoint& p) {
            return 2.0 * inner(p);
        };
        states::save_state(s, hyp_grid(), tf.path);
        CHECK_THROWS_AS(states::load_state(tf.path), ConfigError);
    }
}

}  // TEST_SUITE
