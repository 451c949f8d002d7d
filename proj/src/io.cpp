#include "ptloc/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace ptloc::io {

using nlohmann::json;

namespace {

template <typename T>
void get_key(const json& j, const char* key, T& out) {
    if (!j.contains(key)) return;
    try {
        out = j.at(key).get<T>();
    } catch (const std::exception&) {
        throw ConfigError(std::string("config key has the wrong type: ") + key);
    }
}

const std::set<std::string>& known_keys() {
    static const std::set<std::string> k{
        "mass",       "tau",      "sign",       "axis",       "range_lo",   "range_hi",
        "step",       "l_max",    "lambda_max", "m_z_max",    "packet",     "center",
        "sigma",      "shift",    "phi",        "n_lo",       "n_hi",       "window_width",
        "window_sep", "taus",     "chi",        "grid_n1",    "grid_n2",    "grid_n3",
        "grid_bound", "threads",  "format",     "output"};
    return k;
}

}  // namespace

RunConfig RunConfig::from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return from_json_text(ss.str());
}

RunConfig RunConfig::from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const std::exception& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("config root must be a JSON object");
    for (const auto& item : j.items())
        if (!known_keys().count(item.key()))
            throw ConfigError("unknown config key: " + item.key());

    RunConfig c;
    get_key(j, "mass", c.mass);
    get_key(j, "tau", c.tau);
    get_key(j, "sign", c.sign);
    get_key(j, "axis", c.axis);
    get_key(j, "range_lo", c.range_lo);
    get_key(j, "range_hi", c.range_hi);
    get_key(j, "step", c.step);
    get_key(j, "l_max", c.l_max);
    get_key(j, "lambda_max", c.lambda_max);
    get_key(j, "m_z_max", c.m_z_max);
    get_key(j, "packet", c.packet);
    get_key(j, "center", c.center);
    get_key(j, "sigma", c.sigma);
    get_key(j, "shift", c.shift);
    get_key(j, "phi", c.phi);
    get_key(j, "n_lo", c.n_lo);
    get_key(j, "n_hi", c.n_hi);
    get_key(j, "window_width", c.window_width);
    get_key(j, "window_sep", c.window_sep);
    get_key(j, "taus", c.taus);
    get_key(j, "chi", c.chi);
    get_key(j, "grid_n1", c.grid_n1);
    get_key(j, "grid_n2", c.grid_n2);
    get_key(j, "grid_n3", c.grid_n3);
    get_key(j, "grid_bound", c.grid_bound);
    get_key(j, "threads", c.threads);
    get_key(j, "format", c.format);
    if (j.contains("output")) {
        std::string path;
        get_key(j, "output", path);
        c.output = path;
    }
    c.validate();
    return c;
}

void RunConfig::validate() const {
    constexpr double pi = 3.14159265358979323846;
    if (!(mass > 0.0)) throw ConfigError("mass must be positive");
    if (sign != "plus" && sign != "minus" && sign != "both")
        throw ConfigError("sign must be plus, minus or both");
    if (axis != "t" && axis != "z") throw ConfigError("axis must be t or z");
    if (!(range_hi > range_lo)) throw ConfigError("range_hi must exceed range_lo");
    if (!(step > 0.0)) throw ConfigError("step must be positive");
    if ((range_hi - range_lo) / step > 2e6) throw ConfigError("axis sampling too fine");
    if (l_max < 0 || l_max > 64) throw ConfigError("l_max out of range [0, 64]");
    if (!(lambda_max > 0.0) || lambda_max > 256.0)
        throw ConfigError("lambda_max out of range (0, 256]");
    if (m_z_max < 0 || m_z_max > 64) throw ConfigError("m_z_max out of range [0, 64]");
    if (packet != "gaussian" && packet != "cosnu" && packet != "box" && packet != "extension")
        throw ConfigError("packet must be gaussian, cosnu, box or extension");
    if (center.size() != 3) throw ConfigError("center must have 3 components");
    if (shift.size() != 3) throw ConfigError("shift must have 3 components");
    if (!(sigma > 0.0)) throw ConfigError("sigma must be positive");
    if (!(phi > -pi && phi <= pi + 1e-15)) throw ConfigError("phi must lie in (-pi, pi]");
    if (n_lo > n_hi) throw ConfigError("n_lo must not exceed n_hi");
    if (!(window_width > 0.0)) throw ConfigError("window_width must be positive");
    for (double t : taus)
        if (!std::isfinite(t)) throw ConfigError("taus must be finite");
    if (grid_n1 < 4 || grid_n2 < 4 || grid_n3 < 1) throw ConfigError("grid too coarse");
    if (!(grid_bound > 0.0)) throw ConfigError("grid_bound must be positive");
    if (threads < 1 || threads > 256) throw ConfigError("threads out of range [1, 256]");
    if (format != "csv" && format != "json") throw ConfigError("format must be csv or json");
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void emit_csv(std::ostream& os, const std::vector<std::pair<std::string, std::string>>& meta,
              const std::vector<Column>& cols) {
    for (const auto& kv : meta) os << "# " << kv.first << ": " << kv.second << "\n";
    for (std::size_t c = 0; c < cols.size(); ++c) os << (c ? "," : "") << cols[c].name;
    os << "\n";
    const std::size_t rows = cols.empty() ? 0 : cols.front().data->size();
    for (const auto& c : cols)
        if (c.data->size() != rows) throw ConfigError("emit_csv: ragged columns");
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols.size(); ++c)
            os << (c ? "," : "") << format_double((*cols[c].data)[r]);
        os << "\n";
    }
}

void emit_json(std::ostream& os, const std::vector<std::pair<std::string, std::string>>& meta,
               const std::vector<Column>& cols) {
    const std::size_t rows = cols.empty() ? 0 : cols.front().data->size();
    for (const auto& c : cols)
        if (c.data->size() != rows) throw ConfigError("emit_json: ragged columns");
    os << "{\n  \"meta\": {";
    bool first = true;
    for (const auto& kv : meta) {
        os << (first ? "" : ",") << "\n    " << json(kv.first).dump() << ": "
           << json(kv.second).dump();
        first = false;
    }
    os << "\n  },\n  \"columns\": {";
    first = true;
    for (const auto& c : cols) {
        os << (first ? "" : ",") << "\n    " << json(c.name).dump() << ": [";
        for (std::size_t i = 0; i < c.data->size(); ++i)
            os << (i ? ", " : "") << format_double((*c.data)[i]);
        os << "]";
        first = false;
    }
    os << "\n  }\n}\n";
}

namespace {

std::vector<std::pair<std::string, std::string>> density_meta(
    const povm::DensityProfile& d,
    const std::vector<std::pair<std::string, std::string>>& extra) {
    std::vector<std::pair<std::string, std::string>> meta;
    meta.emplace_back("axis", std::string(1, d.axis));
    meta.emplace_back("units", "axis 1/m, density m");
    meta.emplace_back("tau", format_double(d.tau));
    if (d.axis == 't')
        meta.emplace_back("l_max", std::to_string(d.l_max));
    else
        meta.emplace_back("Lambda_max", format_double(d.lambda_max));
    meta.emplace_back("m_z_window", std::to_string(d.m_z_max));
    meta.emplace_back("total_mass", format_double(d.total_mass));
    if (d.clipped_mass > 0.0) meta.emplace_back("clipped_mass", format_double(d.clipped_mass));
    if (!d.warnings.empty()) {
        std::string w;
        for (std::size_t i = 0; i < d.warnings.size(); ++i)
            w += (i ? "; " : "") + d.warnings[i];
        meta.emplace_back("warnings", w);
    }
    for (const auto& kv : extra) meta.push_back(kv);
    return meta;
}

}  // namespace

void emit_density_csv(std::ostream& os, const povm::DensityProfile& d,
                      const std::vector<std::pair<std::string, std::string>>& extra_meta) {
    const std::vector<Column> cols{{std::string(1, d.axis), &d.x}, {"density", &d.p}};
    emit_csv(os, density_meta(d, extra_meta), cols);
}

void emit_density_json(std::ostream& os, const povm::DensityProfile& d,
                       const std::vector<std::pair<std::string, std::string>>& extra_meta) {
    const std::vector<Column> cols{{std::string(1, d.axis), &d.x}, {"density", &d.p}};
    emit_json(os, density_meta(d, extra_meta), cols);
}

}  // namespace ptloc::io
