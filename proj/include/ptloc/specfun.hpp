#pragma once

#include <complex>

namespace ptloc::specfun {

/// |Gamma(1/2 + mu + i Lambda)| for integer mu >= 0.
/// Exact ladder on top of |Gamma(1/2 + i L)|^2 = pi / cosh(pi L).
double gamma_abs_half(int mu, double lambda);

/// Conical (Mehler) function P^{-mu}_{-1/2 + i Lambda}(x) for x >= 1,
/// integer order mu >= 0, Lambda >= 0.
///
/// Evaluation: Mehler-Dirichlet integral
///   P^{-mu}(cosh w) = sqrt(2/pi) (sinh w)^{-mu} / Gamma(mu + 1/2)
///                     * int_0^w (cosh w - cosh t)^{mu - 1/2} cos(Lambda t) dt
/// with the substitution t = w - u^2 (removes the endpoint singularity) and
/// panelled Gauss-Legendre quadrature sized by the oscillation count.
/// For w > 14 and Lambda >= 0.5 the two-term large-x form
///   (2/sqrt(pi)) Re[ Gamma(i L) (2x)^{-1/2 + i L} / Gamma(1/2 + mu + i L) ]
/// takes over (relative agreement at the seam is a few 1e-11; target 1e-8).
/// Near Lambda = 0 the asymptotic degenerates, so the integral branch is kept.
double conical_p(int mu, double lambda, double x);

/// orthonormal spherical harmonic Y_l^m(theta, phi), Condon-Shortley phase
std::complex<double> spherical_harmonic(int l, int m, double theta, double phi);

/// sin(x)/x with the removable singularity filled in
double sinc(double x);

}  // namespace ptloc::specfun
