#include <doctest.h>

#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "ptloc/io.hpp"
#include "ptloc/povm.hpp"

using namespace ptloc;

namespace {

povm::DensityProfile tiny_profile(char axis) {
    povm::DensityProfile d;
    d.axis = axis;
    d.tau = 0.25;
    d.x = {-1.0, 0.0, 1.0};
    d.p = {0.1, 0.5, 0.1};
    d.w = {0.5, 1.0, 0.5};
    d.total_mass = 0.7;
    d.l_max = 6;
    d.lambda_max = 5.5;
    d.m_z_max = 2;
    return d;
}

}  // namespace

TEST_SUITE("io") {

TEST_CASE("config parsing: values land, defaults hold, junk is rejected") {
    const auto c = io::RunConfig::from_json_text(R"({
        "mass": 2.0, "tau": 1.5, "sign": "minus", "axis": "z",
        "range_lo": -10.0, "range_hi": 10.0, "step": 0.05,
        "l_max": 3, "lambda_max": 4.5, "m_z_max": 1,
        "packet": "cosnu", "center": [0.1, 0.2, 0.3], "sigma": 0.4,
        "shift": [0, 0, 1], "phi": 1.0, "n_lo": -2, "n_hi": 2,
        "window_width": 0.25, "window_sep": 2.0, "taus": [0.0, 1.0],
        "chi": 0.6, "grid_n1": 32, "grid_n2": 24, "grid_n3": 8,
        "grid_bound": 7.0, "threads": 2, "format": "json",
        "output": "/tmp/out.json"
    })");
    CHECK(c.mass == 2.0);
    CHECK(c.sign == "minus");
    CHECK(c.axis == "z");
    CHECK(c.step == 0.05);
    CHECK(c.center == std::vector<double>{0.1, 0.2, 0.3});
    CHECK(c.taus == std::vector<double>{0.0, 1.0});
    CHECK(c.format == "json");
    REQUIRE(c.output.has_value());
    CHECK(*c.output == "/tmp/out.json");

    const auto d = io::RunConfig::from_json_text("{}");
    CHECK(d.mass == 1.0);
    CHECK(d.packet == "gaussian");
    CHECK(d.l_max == 8);
    CHECK_FALSE(d.output.has_value());

    CHECK_THROWS_AS(io::RunConfig::from_json_text("not json"), ConfigError);
    CHECK_THROWS_AS(io::RunConfig::from_json_text("[1, 2]"), ConfigError);
    CHECK_THROWS_AS(io::RunConfig::from_json_text(R"({"masss": 1.0})"), ConfigError);
    CHECK_THROWS_AS(io::RunConfig::from_json_text(R"({"mass": "heavy"})"), ConfigError);
    CHECK_THROWS_AS(io::RunConfig::from_json_file("/nonexistent/cfg.json"), ConfigError);
}

TEST_CASE("config validation rejects each out-of-domain field") {
    const std::vector<std::string> bad{
        R"({"mass": 0.0})",
        R"({"mass": -1.0})",
        R"({"sign": "up"})",
        R"({"axis": "x"})",
        R"({"range_lo": 5.0, "range_hi": 5.0})",
        R"({"step": 0.0})",
        R"({"step": 1e-9})",
        R"({"l_max": -1})",
        R"({"l_max": 65})",
        R"({"lambda_max": 0.0})",
        R"({"lambda_max": 300.0})",
        R"({"m_z_max": -1})",
        R"({"packet": "plane"})",
        R"({"center": [1.0, 2.0]})",
        R"({"shift": [1.0]})",
        R"({"sigma": 0.0})",
        R"({"phi": 4.0})",
        R"({"phi": -3.2})",
        R"({"n_lo": 3, "n_hi": -3})",
        R"({"window_width": 0.0})",
        R"({"taus": [1.0, null]})",
        R"({"grid_n1": 2})",
        R"({"grid_bound": -1.0})",
        R"({"threads": 0})",
        R"({"threads": 1000})",
        R"({"format": "xml"})",
    };
    for (const auto& text : bad) {
        CAPTURE(text);
        CHECK_THROWS_AS(io::RunConfig::from_json_text(text), ConfigError);
    }
    // boundary cases that must survive
    CHECK_NOTHROW(io::RunConfig::from_json_text(R"({"phi": 3.141592653589793})"));
    CHECK_NOTHROW(io::RunConfig::from_json_text(R"({"l_max": 0})"));
    CHECK_NOTHROW(io::RunConfig::from_json_text(R"({"taus": []})"));
}

TEST_CASE("double formatting round-trips through strtod") {
    const std::vector<double> vals{0.0,       -0.0,    1.0 / 3.0, 0.1,   -2.5e-17,
                                   1e300,     -1e-300, 6.02e23,   42.0,  -0.4985,
                                   3.14159265358979323846};
    for (double v : vals) {
        CAPTURE(v);
        const std::string s = io::format_double(v);
        CHECK(std::strtod(s.c_str(), nullptr) == v);
        // stable: same input, same text
        CHECK(io::format_double(v) == s);
    }
}

TEST_CASE("csv emitter: metadata lines, header, rows, determinism") {
    const std::vector<double> x{0.0, 0.5, 1.0};
    const std::vector<double> y{1.0, 0.25, 1.0 / 3.0};
    const std::vector<io::Column> cols{{"x", &x}, {"y", &y}};
    const std::vector<std::pair<std::string, std::string>> meta{{"kind", "demo"},
                                                                {"rows", "3"}};
    std::ostringstream a, b;
    io::emit_csv(a, meta, cols);
    io::emit_csv(b, meta, cols);
    CHECK(a.str() == b.str());

    std::istringstream in(a.str());
    std::string line;
    std::getline(in, line);
    CHECK(line == "# kind: demo");
    std::getline(in, line);
    CHECK(line == "# rows: 3");
    std::getline(in, line);
    CHECK(line == "x,y");
    std::getline(in, line);
    CHECK(line == "0,1");
    std::getline(in, line);
    CHECK(line == "0.5,0.25");
    std::getline(in, line);
    CHECK(line == "1,0.33333333333333331");

    const std::vector<double> shorty{1.0};
    const std::vector<io::Column> ragged{{"x", &x}, {"y", &shorty}};
    std::ostringstream sink;
    CHECK_THROWS_AS(io::emit_csv(sink, {}, ragged), ConfigError);
}

TEST_CASE("json emitter mirrors the csv payload and stays parseable") {
    const std::vector<double> x{0.0, 0.5, 1.0};
    const std::vector<double> y{1.0, 0.25, 1.0 / 3.0};
    const std::vector<io::Column> cols{{"x", &x}, {"y", &y}};
    std::ostringstream a, b;
    io::emit_json(a, {{"kind", "demo"}}, cols);
    io::emit_json(b, {{"kind", "demo"}}, cols);
    CHECK(a.str() == b.str());

    const auto j = nlohmann::json::parse(a.str());
    CHECK(j.at("meta").at("kind") == "demo");
    REQUIRE(j.at("columns").at("x").size() == 3);
    // 17 significant digits guarantee exact numeric round-trip
    CHECK(j.at("columns").at("y")[2].get<double>() == 1.0 / 3.0);
    CHECK(j.at("columns").at("x")[1].get<double>() == 0.5);

    const std::vector<double> shorty{1.0};
    std::ostringstream sink;
    CHECK_THROWS_AS(io::emit_json(sink, {}, {{"x", &x}, {"y", &shorty}}), ConfigError);
}

TEST_CASE("density emitters carry the axis-specific metadata") {
    std::ostringstream t_csv;
    io::emit_density_csv(t_csv, tiny_profile('t'), {{"note", "unit test"}});
    const std::string tc = t_csv.str();
    CHECK(tc.find("# axis: t") != std::string::npos);
    CHECK(tc.find("# l_max: 6") != std::string::npos);
    CHECK(tc.find("Lambda_max") == std::string::npos);
    CHECK(tc.find("# total_mass: 0.69999999999999996") != std::string::npos);
    CHECK(tc.find("# note: unit test") != std::string::npos);
    CHECK(tc.find("t,density") != std::string::npos);
    CHECK(tc.find("clipped_mass") == std::string::npos);

    auto dz = tiny_profile('z');
    dz.clipped_mass = 1e-4;
    dz.warnings = {"first warning", "second warning"};
    std::ostringstream z_json;
    io::emit_density_json(z_json, dz);
    const auto j = nlohmann::json::parse(z_json.str());
    CHECK(j.at("meta").at("axis") == "z");
    CHECK(j.at("meta").at("Lambda_max") == io::format_double(5.5));
    CHECK(j.at("meta").contains("clipped_mass"));
    CHECK(j.at("meta").at("warnings") == "first warning; second warning");
    CHECK(j.at("meta").contains("l_max") == false);
    CHECK(j.at("columns").at("z").size() == 3);
    CHECK(j.at("columns").at("density")[1].get<double>() == 0.5);
}

}  // TEST_SUITE
