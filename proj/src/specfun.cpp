#include "ptloc/specfun.hpp"

#include <cmath>

#include "ptloc/numerics.hpp"
#include "ptloc/types.hpp"

namespace ptloc::specfun {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

double gamma_abs_half(int mu, double lambda) {
    if (mu < 0) throw ConfigError("gamma_abs_half: mu must be >= 0");
    // |Gamma(1/2 + iL)|^2 = pi / cosh(pi L); each unit step multiplies the
    // modulus by |1/2 + j + iL|
    double v = std::sqrt(kPi / std::cosh(kPi * lambda));
    for (int j = 0; j < mu; ++j) v *= std::sqrt((j + 0.5) * (j + 0.5) + lambda * lambda);
    return v;
}

namespace {

// Mehler-Dirichlet integral with t = w - u^2.  The factor
// (cosh w - cosh t) = 2 sinh(u^2/2) sinh(w - u^2/2) is evaluated in that
// product form and scaled by cosh(w) to keep it in range; the pulled-out
// cosh(w)^(mu-1/2) recombines in the log prefactor.
double conical_md(int mu, double lambda, double w) {
    const double su = std::sqrt(w);
    const double cw = std::cosh(w);
    const int panels = std::max(8, static_cast<int>(lambda * w / 2.0) + 8);
    const auto& rule = numerics::gauss_legendre(16);
    numerics::KahanSum acc;
    for (int p = 0; p < panels; ++p) {
        const double a = su * p / panels, b = su * (p + 1) / panels;
        const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
        for (int i = 0; i < 16; ++i) {
            const double u = mid + half * rule.x[i];
            const double q = 2.0 * std::sinh(u * u / 2.0) * std::sinh(w - u * u / 2.0) / cw;
            acc.add(half * rule.w[i] * 2.0 * u * std::pow(q, mu - 0.5) *
                    std::cos(lambda * (w - u * u)));
        }
    }
    const double lpre = 0.5 * std::log(2.0 / kPi) - mu * std::log(std::sinh(w)) -
                        std::lgamma(mu + 0.5) + (mu - 0.5) * std::log(cw);
    return std::exp(lpre) * acc.value();
}

// leading large-x form, valid off Lambda ~ 0:
//   (2/sqrt(pi)) Re[ Gamma(iL) / Gamma(1/2 + mu + iL) * (2x)^(-1/2 + iL) ]
double conical_asy(int mu, double lambda, double w) {
    // log(2x) with x = cosh(w), overflow safe: log(e^w (1 + e^{-2w})) = w + log1p(e^{-2w})
    const double l2x = w + std::log1p(std::exp(-2.0 * w));
    const cplx lg = numerics::log_gamma(cplx(0.0, lambda)) -
                    numerics::log_gamma(cplx(0.5 + mu, lambda));
    const cplx val = std::exp(lg + cplx(-0.5, lambda) * l2x);
    return (2.0 / std::sqrt(kPi)) * val.real();
}

// hypergeometric series in y = (x-1)/2 for x -> 1+:
//   P^{-mu} = ((x-1)/(x+1))^{mu/2} / Gamma(mu+1) * F(1/2-iL, 1/2+iL; mu+1; -y)
// truncated at three terms; used only for w < 1e-4 where y <= 2.5e-9
double conical_series(int mu, double lambda, double x) {
    const double y = 0.5 * (x - 1.0);
    const double a = lambda * lambda + 0.25;  // (1/2-iL)(1/2+iL)
    const double term1 = -a / (mu + 1.0) * y;
    const double term2 = a * (a + 2.0) / (2.0 * (mu + 1.0) * (mu + 2.0)) * y * y;
    const double head = std::pow((x - 1.0) / (x + 1.0), 0.5 * mu) / std::tgamma(mu + 1.0);
    return head * (1.0 + term1 + term2);
}

}  // namespace

double conical_p(int mu, double lambda, double x) {
    if (mu < 0) throw ConfigError("conical_p: mu must be >= 0");
    if (lambda < 0.0) throw ConfigError("conical_p: lambda must be >= 0");
    if (x < 1.0) throw ConfigError("conical_p: x must be >= 1");
    if (x == 1.0) return mu == 0 ? 1.0 : 0.0;
    const double w = std::acosh(x);
    if (w < 1e-4) return conical_series(mu, lambda, x);
    if (w > 14.0 && lambda >= 0.5) return conical_asy(mu, lambda, w);
    return conical_md(mu, lambda, w);
}

namespace {

// orthonormalized associated Legendre P-bar_l^m(x), m >= 0, upward recurrence
// on l; carries sqrt((2l+1)(l-m)!/(4pi (l+m)!)) and the Condon-Shortley phase
double legendre_norm(int l, int m, double x) {
    double pmm = 1.0 / std::sqrt(4.0 * kPi);
    if (m > 0) {
        const double s = std::sqrt((1.0 - x) * (1.0 + x));
        for (int k = 1; k <= m; ++k) pmm *= -std::sqrt((2.0 * k + 1.0) / (2.0 * k)) * s;
    }
    if (l == m) return pmm;
    double pmmp1 = x * std::sqrt(2.0 * m + 3.0) * pmm;
    if (l == m + 1) return pmmp1;
    double pll = 0.0;
    for (int ll = m + 2; ll <= l; ++ll) {
        const double ll2 = static_cast<double>(ll) * ll;
        const double lm2 = static_cast<double>(ll - 1) * (ll - 1);
        const double a = std::sqrt((4.0 * ll2 - 1.0) / (ll2 - static_cast<double>(m) * m));
        const double b = std::sqrt((lm2 - static_cast<double>(m) * m) / (4.0 * lm2 - 1.0));
        pll = a * (x * pmmp1 - b * pmm);
        pmm = pmmp1;
        pmmp1 = pll;
    }
    return pll;
}

}  // namespace

std::complex<double> spherical_harmonic(int l, int m, double theta, double phi) {
    if (l < 0 || std::abs(m) > l) throw ConfigError("spherical_harmonic: need |m| <= l");
    const int am = std::abs(m);
    const double p = legendre_norm(l, am, std::cos(theta));
    std::complex<double> y = p * std::exp(cplx(0.0, am * phi));
    if (m < 0) {
        // Y_l^{-m} = (-1)^m conj(Y_l^m)
        y = std::conj(y);
        if (am % 2 == 1) y = -y;
    }
    return y;
}

double sinc(double x) {
    if (std::abs(x) < 1e-8) return 1.0 - x * x / 6.0;
    return std::sin(x) / x;
}

}  // namespace ptloc::specfun
