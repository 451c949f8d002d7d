#pragma once

#include <string>
#include <vector>

#include "ptloc/physstate.hpp"
#include "ptloc/types.hpp"

namespace ptloc::kinematics {

/// convert a momentum point between charts; the hyperbolic chart depends on
/// the mass scale. Chart maps:
///   spherical  (r, theta, phi):  p = r (sin th cos ph, sin th sin ph, cos th)
///   hyperbolic (omega, nu, phi): p_perp = m sinh(omega) sec(nu), p3 = m tan(nu)
MomentumPoint convert(const MomentumPoint& p, Chart target, Mass mass);

/// on-shell energy sqrt(|p|^2 + m^2); hyperbolic closed form m sec(nu) cosh(omega)
double energy(const MomentumPoint& p, Mass mass);

/// density of the invariant measure m d^3p / E with respect to the chart
/// coordinate volume element:
///   cartesian:  m/E                      (per d^3p)
///   spherical:  m r^2 sin(theta) / E     (per dr dtheta dphi)
///   hyperbolic: m^3 sinh(omega) sec^3(nu)  (per domega dnu dphi)
double measure_weight(const MomentumPoint& p, Mass mass);

/// grid request: node counts per chart dimension and the radial-type
/// truncation bound (r_max, omega_max, or the cartesian half-width L)
struct GridSpec {
    Chart chart = Chart::spherical;
    int n1 = 64, n2 = 32, n3 = 16;
    double bound = 12.0;
};

/// immutable product quadrature grid. Gauss-Legendre nodes per dimension
/// (the spherical polar dimension is Gauss in cos(theta)), equally spaced
/// trapezoid nodes on the azimuthal circle. Combined weights include the
/// invariant measure. Truncation bounds are carried as metadata.
class QuadratureGrid {
  public:
    static QuadratureGrid build(const GridSpec& spec, Mass mass);

    std::size_t size() const { return pts_.size(); }
    const MomentumPoint& point(std::size_t i) const { return pts_[i]; }
    double weight(std::size_t i) const { return w_[i]; }

    Chart chart() const { return spec_.chart; }
    const GridSpec& spec() const { return spec_; }
    Mass mass() const { return mass_; }

    /// |1 - integral of a reference normalized density|, recorded at build time
    double calibration_defect() const { return calib_; }

    std::string serialize() const;
    static GridSpec parse_spec(const std::string& text);

  private:
    QuadratureGrid(GridSpec s, Mass m) : spec_(s), mass_(m) {}
    GridSpec spec_;
    Mass mass_;
    std::vector<MomentumPoint> pts_;
    std::vector<double> w_;
    double calib_ = 0.0;
};

/// <a|b> = sum_xi integral dmu conj(a_xi) b_xi, antilinear in the first slot;
/// compensated summation in grid order keeps the reduction deterministic
cplx inner_product(const states::PhysState& a, const states::PhysState& b,
                   const QuadratureGrid& grid);

double norm(const states::PhysState& a, const QuadratureGrid& grid);

/// active boost of rapidity chi along the 3-axis: amplitudes are pulled back
/// along the inverse boost of the on-shell momentum,
///   p3 -> cosh(chi) p3 - xi sinh(chi) E(p),
/// unitary because the measure is invariant. A rest packet acquires
/// <p3> = m sinh(chi).
states::PhysState boost_z(const states::PhysState& s, double chi);

}  // namespace ptloc::kinematics
