#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace ptloc::numerics {

/// Gauss-Legendre nodes and weights on [-1, 1]; cached per n, thread safe
struct GaussRule {
    std::vector<double> x, w;
};
const GaussRule& gauss_legendre(int n);

/// integrate f over [a, b] with an n-point Gauss-Legendre rule
double integrate_gl(const std::function<double(double)>& f, double a, double b, int n);

/// integrate f over [a, b] split into `panels` equal Gauss-Legendre panels
double integrate_panels(const std::function<double(double)>& f, double a, double b,
                        int panels, int nodes_per_panel);

/// adaptive bisection quadrature; throws EvaluationError when the tolerance
/// cannot be met within max_depth
double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double rel_tol, int max_depth = 24);

/// compensated (Kahan) accumulator; keeps grid reductions deterministic
class KahanSum {
  public:
    void add(double v) {
        double y = v - comp_;
        double t = sum_ + y;
        comp_ = (t - sum_) - y;
        sum_ = t;
    }
    double value() const { return sum_; }

  private:
    double sum_ = 0.0, comp_ = 0.0;
};

class KahanSumC {
  public:
    void add(std::complex<double> v) {
        re_.add(v.real());
        im_.add(v.imag());
    }
    std::complex<double> value() const { return {re_.value(), im_.value()}; }

  private:
    KahanSum re_, im_;
};

/// least-squares line y = a + b x; returns {a, b}
struct LineFit {
    double intercept, slope;
};
LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

/// log Gamma(z) for complex z, Re z handled by reflection; Lanczos approximation
std::complex<double> log_gamma(std::complex<double> z);

/// indices of strict local maxima of |v|
std::vector<std::size_t> local_maxima(const std::vector<double>& v);

/// run fn(i) for i in [0, n) on `threads` threads; each index is processed
/// exactly once and writes only to its own slot, so results are identical
/// for any thread count
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& fn);

}  // namespace ptloc::numerics
