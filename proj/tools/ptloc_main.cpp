#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ptloc/analysis.hpp"
#include "ptloc/checks.hpp"
#include "ptloc/io.hpp"
#include "ptloc/kinematics.hpp"
#include "ptloc/operators.hpp"
#include "ptloc/povm.hpp"
#include "ptloc/specfun.hpp"
#include "ptloc/states.hpp"

namespace {

using namespace ptloc;

/// flag-level overrides layered on top of the (optional) JSON config
struct Overrides {
    std::optional<std::string> config;
    std::optional<double> mass, tau, step, sigma, phi, chi, lambda_max, grid_bound;
    std::optional<double> window_width, window_sep;
    std::optional<int> l_max, m_z_max, n_lo, n_hi, grid_n1, grid_n2, grid_n3, threads;
    std::optional<std::string> sign, axis, packet, format, output, range, center, shift, taus;
};

std::vector<double> parse_list(const std::string& text, const char* what) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(tok, &used));
            if (used != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            throw ConfigError(std::string("cannot parse ") + what + " entry: " + tok);
        }
    }
    if (out.empty()) throw ConfigError(std::string(what) + " list is empty");
    return out;
}

io::RunConfig resolve_config(const Overrides& ov) {
    io::RunConfig cfg;
    if (ov.config) cfg = io::RunConfig::from_json_file(*ov.config);
    if (ov.mass) cfg.mass = *ov.mass;
    if (ov.tau) cfg.tau = *ov.tau;
    if (ov.step) cfg.step = *ov.step;
    if (ov.sigma) cfg.sigma = *ov.sigma;
    if (ov.phi) cfg.phi = *ov.phi;
    if (ov.chi) cfg.chi = *ov.chi;
    if (ov.lambda_max) cfg.lambda_max = *ov.lambda_max;
    if (ov.grid_bound) cfg.grid_bound = *ov.grid_bound;
    if (ov.window_width) cfg.window_width = *ov.window_width;
    if (ov.window_sep) cfg.window_sep = *ov.window_sep;
    if (ov.l_max) cfg.l_max = *ov.l_max;
    if (ov.m_z_max) cfg.m_z_max = *ov.m_z_max;
    if (ov.n_lo) cfg.n_lo = *ov.n_lo;
    if (ov.n_hi) cfg.n_hi = *ov.n_hi;
    if (ov.grid_n1) cfg.grid_n1 = *ov.grid_n1;
    if (ov.grid_n2) cfg.grid_n2 = *ov.grid_n2;
    if (ov.grid_n3) cfg.grid_n3 = *ov.grid_n3;
    if (ov.threads) cfg.threads = *ov.threads;
    if (ov.sign) cfg.sign = *ov.sign;
    if (ov.axis) cfg.axis = *ov.axis;
    if (ov.packet) cfg.packet = *ov.packet;
    if (ov.format) cfg.format = *ov.format;
    if (ov.output) cfg.output = *ov.output;
    if (ov.range) {
        const auto pos = ov.range->find(':');
        if (pos == std::string::npos)
            throw ConfigError("--range expects lo:hi, got " + *ov.range);
        const auto lo = parse_list(ov.range->substr(0, pos), "range");
        const auto hi = parse_list(ov.range->substr(pos + 1), "range");
        if (lo.size() != 1 || hi.size() != 1)
            throw ConfigError("--range expects lo:hi, got " + *ov.range);
        cfg.range_lo = lo[0];
        cfg.range_hi = hi[0];
    }
    if (ov.center) {
        cfg.center = parse_list(*ov.center, "center");
    }
    if (ov.shift) {
        cfg.shift = parse_list(*ov.shift, "shift");
    }
    if (ov.taus) {
        cfg.taus = parse_list(*ov.taus, "taus");
    }
    cfg.validate();
    return cfg;
}

void add_common(CLI::App* sub, Overrides& ov) {
    sub->add_option("--config", ov.config, "JSON run configuration; flags override its fields");
    sub->add_option("--mass", ov.mass, "particle mass (sets the unit scale)");
    sub->add_option("--tau", ov.tau, "proper-time parameter");
    sub->add_option("--sign", ov.sign, "energy sign: plus | minus | both");
    sub->add_option("--axis", ov.axis, "density axis: t | z");
    sub->add_option("--range", ov.range, "axis range lo:hi in 1/m");
    sub->add_option("--step", ov.step, "axis step in 1/m");
    sub->add_option("--l-max", ov.l_max, "angular cutoff for time densities");
    sub->add_option("--lambda-max", ov.lambda_max, "transverse spectral cutoff");
    sub->add_option("--m-z-max", ov.m_z_max, "azimuthal window for position densities");
    sub->add_option("--packet", ov.packet, "state: gaussian | cosnu | box | extension");
    sub->add_option("--center", ov.center, "packet momentum center p1,p2,p3");
    sub->add_option("--sigma", ov.sigma, "packet momentum width");
    sub->add_option("--shift", ov.shift, "position-space displacement x1,x2,x3");
    sub->add_option("--phi", ov.phi, "extension phase in (-pi, pi]");
    sub->add_option("--n-lo", ov.n_lo, "lowest eigenvalue index");
    sub->add_option("--n-hi", ov.n_hi, "highest eigenvalue index");
    sub->add_option("--window-width", ov.window_width, "Gaussian time-window width");
    sub->add_option("--window-sep", ov.window_sep, "time-window separation");
    sub->add_option("--taus", ov.taus, "comma-separated proper-time list for evolve");
    sub->add_option("--chi", ov.chi, "boost rapidity");
    sub->add_option("--grid-n1", ov.grid_n1, "grid nodes, first coordinate");
    sub->add_option("--grid-n2", ov.grid_n2, "grid nodes, second coordinate");
    sub->add_option("--grid-n3", ov.grid_n3, "grid nodes, azimuthal coordinate");
    sub->add_option("--grid-bound", ov.grid_bound, "grid truncation bound");
    sub->add_option("--threads", ov.threads, "worker threads for density sweeps");
    sub->add_option("--format", ov.format, "output format: csv | json");
    sub->add_option("--output", ov.output, "output path (stdout if omitted)");
}

kinematics::QuadratureGrid hyp_grid(const io::RunConfig& cfg) {
    return kinematics::QuadratureGrid::build(
        {Chart::hyperbolic, cfg.grid_n1, cfg.grid_n2, cfg.grid_n3, cfg.grid_bound}, Mass(cfg.mass));
}

kinematics::QuadratureGrid sph_grid(const io::RunConfig& cfg) {
    return kinematics::QuadratureGrid::build(
        {Chart::spherical, cfg.grid_n1, cfg.grid_n2, cfg.grid_n3, 14.0 / cfg.mass}, Mass(cfg.mass));
}

states::PhysState build_packet(const io::RunConfig& cfg, Sign sg,
                               const kinematics::QuadratureGrid& grid) {
    const Mass mass(cfg.mass);
    if (cfg.packet == "gaussian")
        return states::gaussian_packet(mass, sg, {cfg.center[0], cfg.center[1], cfg.center[2]},
                                       cfg.sigma, grid, {cfg.shift[0], cfg.shift[1], cfg.shift[2]});
    if (cfg.packet == "cosnu") return states::cosnu_packet(mass, sg, 1.2, grid);
    if (cfg.packet == "box")
        return states::state_from_position_amplitude(
            mass, sg, cfg.tau, states::box_amplitude(4.0 / mass.m, 1.5, 161, 36), grid);
    if (cfg.packet == "extension") return states::boundary_flat_packet(mass, sg, 1.2, grid);
    throw ConfigError("unknown packet: " + cfg.packet);
}

states::PhysState build_state(const io::RunConfig& cfg, const kinematics::QuadratureGrid& grid) {
    if (cfg.sign == "both") {
        auto p = build_packet(cfg, Sign::plus, grid);
        const auto m = build_packet(cfg, Sign::minus, grid);
        p.comp[sign_index(Sign::minus)] = m.comp[sign_index(Sign::minus)];
        p.normalized = false;
        return states::normalize(p, grid);
    }
    if (cfg.sign == "minus") return build_packet(cfg, Sign::minus, grid);
    return build_packet(cfg, Sign::plus, grid);
}

Sign single_sign(const io::RunConfig& cfg, const char* cmd) {
    if (cfg.sign == "plus") return Sign::plus;
    if (cfg.sign == "minus") return Sign::minus;
    throw ConfigError(std::string(cmd) + " needs --sign plus or minus");
}

povm::AxisSpec axis_from(const io::RunConfig& cfg) {
    const int n = static_cast<int>((cfg.range_hi - cfg.range_lo) / cfg.step + 0.5) + 1;
    if (n < 2) throw ConfigError("axis range shorter than one step");
    return {cfg.range_lo, cfg.range_hi, n};
}

int emit(const io::RunConfig& cfg,
         const std::vector<std::pair<std::string, std::string>>& meta,
         const std::vector<io::Column>& cols) {
    std::ostringstream os;
    if (cfg.format == "csv")
        io::emit_csv(os, meta, cols);
    else
        io::emit_json(os, meta, cols);
    if (cfg.output) {
        std::ofstream f(*cfg.output, std::ios::binary);
        if (!f) throw ConfigError("cannot open output file: " + *cfg.output);
        f << os.str();
    } else {
        std::cout << os.str();
    }
    return io::exit_ok;
}

int emit_density(const io::RunConfig& cfg, const povm::DensityProfile& d,
                 std::vector<std::pair<std::string, std::string>> extra) {
    extra.emplace_back("packet", cfg.packet);
    extra.emplace_back("sign", cfg.sign);
    extra.emplace_back("mass", io::format_double(cfg.mass));
    std::ostringstream os;
    if (cfg.format == "csv")
        io::emit_density_csv(os, d, extra);
    else
        io::emit_density_json(os, d, extra);
    if (cfg.output) {
        std::ofstream f(*cfg.output, std::ios::binary);
        if (!f) throw ConfigError("cannot open output file: " + *cfg.output);
        f << os.str();
    } else {
        std::cout << os.str();
    }
    return io::exit_ok;
}

int cmd_spectrum(const io::RunConfig& cfg) {
    const auto sp = operators::extension_spectrum(cfg.phi, Mass(cfg.mass));
    std::vector<double> ns, zs;
    for (int n = cfg.n_lo; n <= cfg.n_hi; ++n) {
        ns.push_back(n);
        zs.push_back(sp.eigenvalue(n));
    }
    return emit(cfg,
                {{"phi", io::format_double(cfg.phi)},
                 {"z0", io::format_double(sp.z0)},
                 {"mass", io::format_double(cfg.mass)},
                 {"units", "1/m"}},
                {{"n", &ns}, {"eigenvalue", &zs}});
}

int cmd_time_density(const io::RunConfig& cfg) {
    const auto grid = hyp_grid(cfg);
    const auto s = build_state(cfg, grid);
    const auto d = povm::time_density(s, cfg.tau, axis_from(cfg), cfg.l_max);
    return emit_density(cfg, d, {});
}

int cmd_position_density(const io::RunConfig& cfg) {
    const auto grid = hyp_grid(cfg);
    const auto s = build_state(cfg, grid);
    const auto d = povm::position_density(s, cfg.tau, axis_from(cfg), cfg.lambda_max,
                                          cfg.m_z_max, grid, {48, cfg.threads});
    return emit_density(cfg, d, {});
}

int cmd_overlap(const io::RunConfig& cfg) {
    const Sign sg = single_sign(cfg, "overlap");
    const auto axis = axis_from(cfg);
    std::vector<double> xs(axis.n);
    for (int i = 0; i < axis.n; ++i)
        xs[i] = axis.lo + (axis.hi - axis.lo) * i / (axis.n - 1);
    if (cfg.axis == "z") {
        std::vector<double> re(axis.n), im(axis.n), ref(axis.n);
        for (int i = 0; i < axis.n; ++i) {
            const cplx ov = povm::position_overlap(Mass(cfg.mass), cfg.tau, 0.0, -xs[i], sg);
            re[i] = ov.real();
            im[i] = ov.imag();
            ref[i] = specfun::sinc(0.5 * 3.14159265358979323846 * cfg.mass * xs[i]);
        }
        return emit(cfg,
                    {{"axis", "dz"},
                     {"units", "1/m"},
                     {"tau", io::format_double(cfg.tau)},
                     {"sign", cfg.sign},
                     {"mass", io::format_double(cfg.mass)}},
                    {{"dz", &xs}, {"re", &re}, {"im", &im}, {"sinc_reference", &ref}});
    }
    std::vector<double> dre(axis.n), dim(axis.n), are(axis.n), aim(axis.n);
    for (int i = 0; i < axis.n; ++i) {
        const auto res = povm::time_overlap_smeared(Mass(cfg.mass), cfg.tau,
                                                    {0.0, cfg.window_width},
                                                    {xs[i], cfg.window_width}, sg);
        dre[i] = res.direct.real();
        dim[i] = res.direct.imag();
        are[i] = res.analytic.real();
        aim[i] = res.analytic.imag();
    }
    return emit(cfg,
                {{"axis", "dt"},
                 {"units", "1/m"},
                 {"tau", io::format_double(cfg.tau)},
                 {"sign", cfg.sign},
                 {"window_width", io::format_double(cfg.window_width)},
                 {"mass", io::format_double(cfg.mass)}},
                {{"dt", &xs},
                 {"direct_re", &dre},
                 {"direct_im", &dim},
                 {"analytic_re", &are},
                 {"analytic_im", &aim}});
}

int cmd_admissibility(const io::RunConfig& cfg) {
    analysis::AdmissibilityReport rep;
    if (cfg.packet == "box") {
        rep = analysis::admissibility_check(states::box_amplitude(4.0 / cfg.mass, 1.5, 161, 36),
                                            Mass(cfg.mass));
    } else {
        const auto grid = hyp_grid(cfg);
        rep = analysis::admissibility_check(build_state(cfg, grid), grid);
    }
    std::vector<double> band{rep.band_limit ? 1.0 : 0.0};
    std::vector<double> endp{rep.endpoint_zero ? 1.0 : 0.0};
    std::vector<double> decay{rep.boundary_decay ? 1.0 : 0.0};
    std::vector<double> sq{rep.square_integrable ? 1.0 : 0.0};
    std::vector<double> smooth{rep.smooth ? 1.0 : 0.0};
    std::vector<double> adm{rep.admissible ? 1.0 : 0.0};
    std::vector<double> residual{rep.band_residual};
    std::vector<double> ratio{rep.endpoint_ratio};
    std::vector<double> expn{rep.decay_exponent};
    std::string notes;
    for (std::size_t i = 0; i < rep.notes.size(); ++i) notes += (i ? "; " : "") + rep.notes[i];
    return emit(cfg,
                {{"packet", cfg.packet},
                 {"verdict", rep.admissible ? "admissible" : "not admissible"},
                 {"notes", notes}},
                {{"band_limit", &band},
                 {"endpoint_zero", &endp},
                 {"boundary_decay", &decay},
                 {"square_integrable", &sq},
                 {"smooth", &smooth},
                 {"admissible", &adm},
                 {"band_residual", &residual},
                 {"endpoint_ratio", &ratio},
                 {"decay_exponent", &expn}});
}

int cmd_evolve(const io::RunConfig& cfg) {
    if (cfg.taus.size() < 2)
        throw ConfigError("evolve needs at least two --taus values");
    const auto grid = hyp_grid(cfg);
    const auto s = build_state(cfg, grid);
    const auto sw = analysis::propertime_sweep(s, cfg.taus, axis_from(cfg), cfg.lambda_max,
                                               cfg.m_z_max, grid);
    std::vector<double> taus, means, vars, masses, tails;
    for (const auto& row : sw.rows) {
        taus.push_back(row.tau);
        means.push_back(row.mean);
        vars.push_back(row.variance);
        masses.push_back(row.total_mass);
        tails.push_back(row.tail_exponent);
    }
    return emit(cfg,
                {{"axis", "tau"},
                 {"units", "1/m"},
                 {"packet", cfg.packet},
                 {"drift_slope", io::format_double(sw.drift_slope)},
                 {"drift_intercept", io::format_double(sw.drift_intercept)},
                 {"momentum_mean", io::format_double(sw.momentum_mean)},
                 {"mass", io::format_double(cfg.mass)}},
                {{"tau", &taus},
                 {"mean", &means},
                 {"variance", &vars},
                 {"total_mass", &masses},
                 {"tail_exponent", &tails}});
}

int cmd_covariance(const io::RunConfig& cfg) {
    const auto hyp = hyp_grid(cfg);
    const auto sph = sph_grid(cfg);
    const auto s = build_state(cfg, hyp);
    const auto rep = analysis::covariance_check(s, cfg.chi, cfg.tau, sph, hyp);
    std::vector<double> chi{rep.chi}, lhs{rep.lhs}, rhs{rep.rhs}, rel{rep.rel_discrepancy},
        order{rep.convergence_order};
    return emit(cfg,
                {{"packet", cfg.packet},
                 {"tau", io::format_double(cfg.tau)},
                 {"mass", io::format_double(cfg.mass)}},
                {{"chi", &chi},
                 {"boosted_q3", &lhs},
                 {"mixed_moments", &rhs},
                 {"rel_discrepancy", &rel},
                 {"convergence_order", &order}});
}

int cmd_verify(const io::RunConfig& cfg, bool full) {
    checks::CheckOptions opt;
    opt.threads = cfg.threads;
    opt.quick = !full;
    const auto results = checks::run_verification(opt);
    int failed = 0;
    for (const auto& r : results) {
        std::cout << checks::format_check_line(r) << "\n";
        if (!r.passed) ++failed;
    }
    std::cout << "verify: " << results.size() << " checks, " << failed << " failed"
              << (full ? "" : " (quick battery)") << "\n";
    return failed == 0 ? io::exit_ok : io::exit_check_failed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"proper-time localization toolkit for a free relativistic particle"};
    app.require_subcommand(1);

    Overrides ov;
    bool verify_full = false;

    auto* spectrum = app.add_subcommand(
        "spectrum", "eigenvalue ladder z_n = z0(phi) + 2n/m of a self-adjoint extension");
    auto* tdens = app.add_subcommand("time-density", "time-of-arrival density p(t)");
    auto* zdens = app.add_subcommand("position-density", "localization density p(z)");
    auto* overlap = app.add_subcommand(
        "overlap", "kernel sweeps: position sinc law (--axis z) or smeared time kernel (--axis t)");
    auto* adm = app.add_subcommand("admissibility", "localizability diagnosis for a packet");
    auto* evolve = app.add_subcommand("evolve", "proper-time sweep of the localization density");
    auto* cov = app.add_subcommand("covariance", "boost covariance of the first moments");
    auto* verify = app.add_subcommand("verify", "run the invariant battery");
    verify->add_flag("--full", verify_full, "full-resolution battery (slower)");

    for (auto* sub : {spectrum, tdens, zdens, overlap, adm, evolve, cov, verify})
        add_common(sub, ov);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? ptloc::io::exit_ok : ptloc::io::exit_config;
    }

    try {
        const auto cfg = resolve_config(ov);
        if (spectrum->parsed()) return cmd_spectrum(cfg);
        if (tdens->parsed()) return cmd_time_density(cfg);
        if (zdens->parsed()) return cmd_position_density(cfg);
        if (overlap->parsed()) return cmd_overlap(cfg);
        if (adm->parsed()) return cmd_admissibility(cfg);
        if (evolve->parsed()) return cmd_evolve(cfg);
        if (cov->parsed()) return cmd_covariance(cfg);
        if (verify->parsed()) return cmd_verify(cfg, verify_full);
        throw ptloc::ConfigError("no subcommand given");
    } catch (const ptloc::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return ptloc::io::exit_config;
    } catch (const ptloc::EvaluationError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return ptloc::io::exit_numeric;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return ptloc::io::exit_numeric;
    }
}
