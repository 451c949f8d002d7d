#include "ptloc/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <thread>

#include "ptloc/types.hpp"

namespace ptloc::numerics {

namespace {

GaussRule compute_gauss(int n) {
    // Newton iteration on Legendre P_n from the Chebyshev-like initial guess;
    // symmetric, so only half the roots are solved for
    GaussRule r;
    r.x.resize(n);
    r.w.resize(n);
    const double pi = 3.14159265358979323846;
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(pi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            pp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        r.x[i] = -x;
        r.x[n - 1 - i] = x;
        double w = 2.0 / ((1.0 - x * x) * pp * pp);
        r.w[i] = w;
        r.w[n - 1 - i] = w;
    }
    if (n % 2 == 1) r.x[n / 2] = 0.0;
    return r;
}

}  // namespace

const GaussRule& gauss_legendre(int n) {
    if (n < 1) throw ConfigError("gauss_legendre: n must be >= 1");
    static std::map<int, GaussRule> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, compute_gauss(n)).first;
    return it->second;
}

double integrate_gl(const std::function<double(double)>& f, double a, double b, int n) {
    const auto& r = gauss_legendre(n);
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    KahanSum s;
    for (int i = 0; i < n; ++i) s.add(r.w[i] * f(mid + half * r.x[i]));
    return half * s.value();
}

double integrate_panels(const std::function<double(double)>& f, double a, double b,
                        int panels, int nodes_per_panel) {
    if (panels < 1) throw ConfigError("integrate_panels: panels must be >= 1");
    const double h = (b - a) / panels;
    KahanSum s;
    for (int p = 0; p < panels; ++p)
        s.add(integrate_gl(f, a + p * h, a + (p + 1) * h, nodes_per_panel));
    return s.value();
}

namespace {

double adapt_rec(const std::function<double(double)>& f, double a, double b, double whole,
                 double rel_tol, double scale, int depth, int max_depth) {
    const double m = 0.5 * (a + b);
    const double left = integrate_gl(f, a, m, 15);
    const double right = integrate_gl(f, m, b, 15);
    const double err = std::abs(left + right - whole);
    if (err <= rel_tol * std::max(scale, std::abs(left + right))) return left + right;
    if (depth >= max_depth)
        throw EvaluationError("integrate_adaptive: tolerance not met", err);
    return adapt_rec(f, a, m, left, rel_tol, scale, depth + 1, max_depth) +
           adapt_rec(f, m, b, right, rel_tol, scale, depth + 1, max_depth);
}

}  // namespace

double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double rel_tol, int max_depth) {
    const double whole = integrate_gl(f, a, b, 15);
    const double scale = std::max(std::abs(whole), 1e-300);
    return adapt_rec(f, a, b, whole, rel_tol, scale, 0, max_depth);
}

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2)
        throw ConfigError("fit_line: need matching vectors of size >= 2");
    KahanSum sx, sy, sxx, sxy;
    const double n = static_cast<double>(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx.add(x[i]);
        sy.add(y[i]);
        sxx.add(x[i] * x[i]);
        sxy.add(x[i] * y[i]);
    }
    const double det = n * sxx.value() - sx.value() * sx.value();
    if (std::abs(det) < 1e-300) throw ConfigError("fit_line: degenerate abscissae");
    LineFit fit;
    fit.slope = (n * sxy.value() - sx.value() * sy.value()) / det;
    fit.intercept = (sy.value() - fit.slope * sx.value()) / n;
    return fit;
}

std::complex<double> log_gamma(std::complex<double> z) {
    // Lanczos, g = 7, 9 coefficients; reflection for Re z < 0.5
    static const double c[9] = {0.99999999999980993,  676.5203681218851,   -1259.1392167224028,
                                771.32342877765313,   -176.61502916214059, 12.507343278686905,
                                -0.13857109526572012, 9.9843695780195716e-6,
                                1.5056327351493116e-7};
    const double pi = 3.14159265358979323846;
    if (z.real() < 0.5) {
        // log Gamma(z) = log(pi / sin(pi z)) - log Gamma(1 - z)
        return std::log(pi) - std::log(std::sin(pi * z)) - log_gamma(1.0 - z);
    }
    z -= 1.0;
    std::complex<double> a = c[0];
    std::complex<double> t = z + 7.5;
    for (int i = 1; i < 9; ++i) a += c[i] / (z + static_cast<double>(i));
    return 0.5 * std::log(2.0 * pi) + (z + 0.5) * std::log(t) - t + std::log(a);
}

std::vector<std::size_t> local_maxima(const std::vector<double>& v) {
    std::vector<std::size_t> out;
    for (std::size_t i = 1; i + 1 < v.size(); ++i) {
        const double a = std::abs(v[i]);
        if (a > std::abs(v[i - 1]) && a > std::abs(v[i + 1])) out.push_back(i);
    }
    return out;
}

void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& fn) {
    if (threads <= 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    const int nt = std::min<int>(threads, static_cast<int>(n));
    std::vector<std::thread> pool;
    pool.reserve(nt);
    for (int t = 0; t < nt; ++t) {
        pool.emplace_back([&, t]() {
            for (std::size_t i = static_cast<std::size_t>(t); i < n; i += nt) fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace ptloc::numerics
