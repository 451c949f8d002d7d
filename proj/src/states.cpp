#include "ptloc/states.hpp"

#include <cmath>
#include <cstring>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <unordered_map>

#include "ptloc/numerics.hpp"
#include "ptloc/specfun.hpp"

namespace ptloc::states {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

PhysState make_state(Mass mass, Sign s, Amplitude amp, Symmetry sym) {
    PhysState st{mass, {}, sym, false};
    st.comp[sign_index(s)] = std::move(amp);
    return st;
}

PhysState gaussian_packet(Mass mass, Sign sign, const std::array<double, 3>& center,
                          double sigma, const kinematics::QuadratureGrid& grid,
                          const std::array<double, 3>& shift) {
    if (!(sigma > 0.0)) throw ConfigError("gaussian_packet: sigma must be positive");
    const bool at_origin = center[0] == 0.0 && center[1] == 0.0 && center[2] == 0.0;
    const bool on_axis = center[0] == 0.0 && center[1] == 0.0;
    const bool shifted_trans = shift[0] != 0.0 || shift[1] != 0.0;
    const bool shifted_long = shift[2] != 0.0;
    Symmetry sym = Symmetry::none;
    if (at_origin && !shifted_trans && !shifted_long)
        sym = Symmetry::spherical;
    else if (on_axis && !shifted_trans)
        sym = Symmetry::axial;

    Amplitude amp = [mass, center, sigma, shift](const MomentumPoint& q) {
        const auto v = kinematics::convert(q, Chart::cartesian, mass);
        const double d0 = v.c[0] - center[0], d1 = v.c[1] - center[1], d2 = v.c[2] - center[2];
        const double r2 = d0 * d0 + d1 * d1 + d2 * d2;
        const double phase = -(v.c[0] * shift[0] + v.c[1] * shift[1] + v.c[2] * shift[2]);
        return std::exp(cplx(-r2 / (4.0 * sigma * sigma), phase));
    };
    return normalize(make_state(mass, sign, std::move(amp), sym), grid);
}

namespace {

// transverse conical superposition T(omega) = sum_L 2 L wL alpha(L) N(L) P_L(cosh omega),
// memoized per omega: grid evaluations repeat each omega across the (nu, phi) sheet
struct TransverseProfile {
    std::vector<double> lambda, wl, NL;
    std::vector<cplx> alpha;
    mutable std::map<double, cplx> memo;
    mutable std::mutex mu;

    cplx operator()(double om) const {
        {
            std::lock_guard<std::mutex> lk(mu);
            auto it = memo.find(om);
            if (it != memo.end()) return it->second;
        }
        const double x = std::cosh(om);
        numerics::KahanSumC acc;
        for (std::size_t i = 0; i < lambda.size(); ++i)
            acc.add(2.0 * lambda[i] * wl[i] * alpha[i] * NL[i] *
                    specfun::conical_p(0, lambda[i], x));
        const cplx v = acc.value();
        std::lock_guard<std::mutex> lk(mu);
        memo.emplace(om, v);
        return v;
    }
};

}  // namespace

PhysState state_from_position_amplitude(Mass mass, Sign sign, double tau,
                                        const PositionAmplitude& pa,
                                        const kinematics::QuadratureGrid& grid) {
    if (pa.z.size() != pa.omega.size() || pa.z.size() < 2)
        throw ConfigError("position amplitude: z/omega size mismatch or too short");
    if (pa.lambda.size() != pa.alpha.size() || pa.lambda.empty())
        throw ConfigError("position amplitude: lambda/alpha size mismatch or empty");

    const double m = mass.m;
    const double xi = sign_factor(sign);

    auto trans = std::make_shared<TransverseProfile>();
    trans->lambda = pa.lambda;
    trans->alpha = pa.alpha;
    trans->wl.assign(pa.lambda.size(), 0.0);
    if (pa.lambda.size() == 1) {
        trans->wl[0] = 1.0;
    } else {
        for (std::size_t i = 0; i + 1 < pa.lambda.size(); ++i) {
            const double h = pa.lambda[i + 1] - pa.lambda[i];
            trans->wl[i] += 0.5 * h;
            trans->wl[i + 1] += 0.5 * h;
        }
    }
    trans->NL.resize(pa.lambda.size());
    for (std::size_t i = 0; i < pa.lambda.size(); ++i) {
        const double L = pa.lambda[i];
        trans->NL[i] = std::sqrt(std::max(std::sinh(kPi * L), 0.0)) / 2.0 *
                       specfun::gamma_abs_half(0, L) / std::pow(m * kPi, 1.5);
    }

    // longitudinal samples with trapezoid weights
    auto zs = std::make_shared<std::vector<double>>(pa.z);
    auto om_w = std::make_shared<std::vector<cplx>>(pa.omega.size());
    for (std::size_t i = 0; i < pa.z.size(); ++i) {
        double w = 0.0;
        if (i > 0) w += 0.5 * (pa.z[i] - pa.z[i - 1]);
        if (i + 1 < pa.z.size()) w += 0.5 * (pa.z[i + 1] - pa.z[i]);
        (*om_w)[i] = pa.omega[i] * w;
    }

    Amplitude amp = [mass, m, xi, tau, trans, zs, om_w](const MomentumPoint& q) {
        const auto h = kinematics::convert(q, Chart::hyperbolic, mass);
        const double om = h.c[0], nu = h.c[1];
        // Omhat(nu) = int dz Omega(z) e^{-i m xi z nu}
        numerics::KahanSumC zacc;
        for (std::size_t i = 0; i < zs->size(); ++i)
            zacc.add((*om_w)[i] * std::exp(cplx(0.0, -m * xi * (*zs)[i] * nu)));
        const double sec = 1.0 / std::cos(nu);
        const cplx phase = std::exp(cplx(0.0, m * tau * std::log(sec)));
        return (*trans)(om)*zacc.value() * phase * std::pow(sec, -1.5);
    };
    return normalize(make_state(mass, sign, std::move(amp), Symmetry::axial), grid);
}

PhysState normalize(const PhysState& s, const kinematics::QuadratureGrid& grid) {
    const double n = kinematics::norm(s, grid);
    if (!(n > 1e-150)) throw EvaluationError("normalize: state has (numerically) zero norm", n);
    PhysState out = s;
    const double scale = 1.0 / n;
    for (Sign sg : {Sign::plus, Sign::minus}) {
        if (!s.has(sg)) continue;
        const auto inner = s.comp[sign_index(sg)];
        out.comp[sign_index(sg)] = [inner, scale](const MomentumPoint& p) {
            return scale * inner(p);
        };
    }
    out.normalized = true;
    return out;
}

void save_state(const PhysState& s, const kinematics::QuadratureGrid& grid,
                const std::string& path) {
    std::ofstream os(path);
    if (!os) throw ConfigError("save_state: cannot open '" + path + "' for writing");
    os.precision(17);
    os << "ptloc-state 1\n";
    os << grid.serialize() << "\n";
    os << "mass=" << s.mass.m << " symmetry="
       << (s.symmetry == Symmetry::spherical ? "spherical"
                                             : (s.symmetry == Symmetry::axial ? "axial" : "none"))
       << " components=" << (s.has(Sign::plus) ? 1 : 0) + (s.has(Sign::minus) ? 1 : 0) << "\n";
    for (Sign sg : {Sign::plus, Sign::minus}) {
        if (!s.has(sg)) continue;
        os << "component " << (sg == Sign::plus ? "plus" : "minus") << "\n";
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const cplx v = s.eval(sg, grid.point(i));
            os << v.real() << " " << v.imag() << "\n";
        }
    }
    if (!os) throw ConfigError("save_state: write failure on '" + path + "'");
}

namespace {

// grid-sample field: exact-match lookup on the generating grid's nodes (the
// only evaluation points used when pairing on that grid), nearest-node
// fallback off-grid
struct SampledField {
    std::shared_ptr<kinematics::QuadratureGrid> grid;
    std::shared_ptr<std::unordered_map<std::string, std::size_t>> index;
    std::shared_ptr<std::vector<cplx>> vals;
    Mass mass;

    static std::string key(const std::array<double, 3>& c) {
        std::string k(3 * sizeof(double), '\0');
        std::memcpy(k.data(), c.data(), 3 * sizeof(double));
        return k;
    }

    cplx operator()(const MomentumPoint& q) const {
        const auto p = kinematics::convert(q, grid->chart(), mass);
        auto it = index->find(key(p.c));
        if (it != index->end()) return (*vals)[it->second];
        double best = 1e300;
        std::size_t bi = 0;
        for (std::size_t i = 0; i < grid->size(); ++i) {
            const auto& g = grid->point(i).c;
            const double d0 = g[0] - p.c[0], d1 = g[1] - p.c[1], d2 = g[2] - p.c[2];
            const double d = d0 * d0 + d1 * d1 + d2 * d2;
            if (d < best) {
                best = d;
                bi = i;
            }
        }
        return (*vals)[bi];
    }
};

}  // namespace

PhysState load_state(const std::string& path, double norm_tol) {
    std::ifstream is(path);
    if (!is) throw ConfigError("load_state: cannot open '" + path + "'");
    std::string line;
    if (!std::getline(is, line) || line != "ptloc-state 1")
        throw ConfigError("load_state: bad magic in '" + path + "'");
    if (!std::getline(is, line)) throw ConfigError("load_state: missing grid spec");
    const auto spec = kinematics::QuadratureGrid::parse_spec(line);

    if (!std::getline(is, line)) throw ConfigError("load_state: missing state header");
    double mass_val = 0.0;
    std::string sym_name = "none";
    int ncomp = 0;
    {
        std::istringstream hs(line);
        std::string tok;
        while (hs >> tok) {
            const auto eq = tok.find('=');
            if (eq == std::string::npos) throw ConfigError("load_state: bad header token");
            const std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
            if (key == "mass")
                mass_val = std::stod(val);
            else if (key == "symmetry")
                sym_name = val;
            else if (key == "components")
                ncomp = std::stoi(val);
            else
                throw ConfigError("load_state: unknown header key '" + key + "'");
        }
    }
    const Mass mass(mass_val);
    auto grid = std::make_shared<kinematics::QuadratureGrid>(
        kinematics::QuadratureGrid::build(spec, mass));
    auto index = std::make_shared<std::unordered_map<std::string, std::size_t>>();
    index->reserve(grid->size());
    for (std::size_t i = 0; i < grid->size(); ++i)
        index->emplace(SampledField::key(grid->point(i).c), i);

    PhysState out{mass, {}, Symmetry::none, false};
    if (sym_name == "axial")
        out.symmetry = Symmetry::axial;
    else if (sym_name == "spherical")
        out.symmetry = Symmetry::spherical;
    else if (sym_name != "none")
        throw ConfigError("load_state: unknown symmetry '" + sym_name + "'");

    for (int c = 0; c < ncomp; ++c) {
        if (!std::getline(is, line)) throw ConfigError("load_state: missing component header");
        while (line.empty() && std::getline(is, line)) {
        }
        std::istringstream cs(line);
        std::string word, which;
        cs >> word >> which;
        if (word != "component" || (which != "plus" && which != "minus"))
            throw ConfigError("load_state: bad component header '" + line + "'");
        auto vals = std::make_shared<std::vector<cplx>>();
        vals->reserve(grid->size());
        for (std::size_t i = 0; i < grid->size(); ++i) {
            double re, im;
            if (!(is >> re >> im)) throw ConfigError("load_state: truncated sample table");
            vals->emplace_back(re, im);
        }
        is.ignore(16, '\n');
        out.comp[sign_index(which == "plus" ? Sign::plus : Sign::minus)] =
            SampledField{grid, index, vals, mass};
    }

    const double n = kinematics::norm(out, *grid);
    if (std::abs(n - 1.0) > norm_tol)
        throw ConfigError("load_state: stored state is not normalized (|1-norm| = " +
                          std::to_string(std::abs(n - 1.0)) + ")");
    out.normalized = true;
    return out;
}

namespace {

PhysState band_edge_packet(Mass mass, Sign sign, double width, bool cos_factor,
                           const kinematics::QuadratureGrid& grid) {
    if (!(width > 0.0)) throw ConfigError("band-edge packet: width must be positive");
    Amplitude amp = [mass, width, cos_factor](const MomentumPoint& q) -> cplx {
        const auto h = kinematics::convert(q, Chart::hyperbolic, mass);
        const double om = h.c[0], nu = h.c[1];
        const double cs = std::cos(nu);
        double v = std::pow(cs, 1.5) * std::exp(-(om / width) * (om / width));
        if (cos_factor) v *= cs;
        return v;
    };
    return normalize(make_state(mass, sign, amp, Symmetry::axial), grid);
}

}  // namespace

PhysState cosnu_packet(Mass mass, Sign sign, double width,
                       const kinematics::QuadratureGrid& grid) {
    return band_edge_packet(mass, sign, width, true, grid);
}

PhysState boundary_flat_packet(Mass mass, Sign sign, double width,
                               const kinematics::QuadratureGrid& grid) {
    return band_edge_packet(mass, sign, width, false, grid);
}

PositionAmplitude box_amplitude(double width, double lambda_scale, int nz, int nl) {
    if (!(width > 0.0) || !(lambda_scale > 0.0) || nz < 2 || nl < 1)
        throw ConfigError("box_amplitude: bad parameters");
    PositionAmplitude pa;
    for (int i = 0; i < nz; ++i) {
        pa.z.push_back(-0.5 * width + width * i / (nz - 1));
        pa.omega.push_back(1.0);
    }
    const double l_lo = 0.02, l_hi = 3.0 * lambda_scale;
    for (int i = 0; i < nl; ++i) {
        const double L = nl == 1 ? lambda_scale : l_lo + (l_hi - l_lo) * i / (nl - 1);
        pa.lambda.push_back(L);
        pa.alpha.push_back(std::exp(-(L / lambda_scale) * (L / lambda_scale)));
    }
    return pa;
}

}  // namespace ptloc::states
