#include "doctest.h"

#include "idjc/error.hpp"
#include "idjc/fock.hpp"
#include "idjc/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

using namespace idjc;
using namespace idjc::scenario;

namespace {

Config base(Kind kind) {
    Config c;
    c.scenario = kind;
    c.output_path = "out.csv";
    return c;
}

bool names_field(const std::vector<FieldError>& errors, const std::string& field) {
    return std::any_of(errors.begin(), errors.end(),
                       [&](const FieldError& e) { return e.field == field; });
}

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) out.push_back(line);
    return out;
}

}  // namespace

TEST_SUITE("scenario") {

TEST_CASE("validate_config") {
    CHECK(validate_config(base(Kind::purity_mixture)).empty());

    auto c = base(Kind::purity_mixture);
    c.tau_steps = 1;
    CHECK(names_field(validate_config(c), "tau_steps"));

    c = base(Kind::qfunc_mixture);
    CHECK(names_field(validate_config(c), "grid"));
    c.grid_auto = true;
    CHECK(validate_config(c).empty());

    c = base(Kind::inversion_cat);
    c.parity_r = -1;
    c.alpha = 0.0;
    CHECK(names_field(validate_config(c), "parity_r"));
    c.parity_r = 3;
    CHECK(names_field(validate_config(c), "parity_r"));

    c = base(Kind::purity_mixture);
    c.lambda = -1.0;
    c.tau_max = 0.0;
    c.dim = 1;
    c.output_path.clear();
    const auto errors = validate_config(c);
    CHECK(names_field(errors, "lambda"));
    CHECK(names_field(errors, "tau_max"));
    CHECK(names_field(errors, "dim"));
    CHECK(names_field(errors, "output_path"));

    Config missing;
    missing.output_path = "x.csv";
    CHECK(names_field(validate_config(missing), "scenario"));
}

TEST_CASE("resolved parameters") {
    auto c = base(Kind::purity_mixture);
    CHECK(resolved_dim(c) == 78);  // ceil(25 + 10 sqrt(26)) + 2
    CHECK(resolved_dim(c) >= 77);
    c.dim = 90;
    CHECK(resolved_dim(c) == 90);

    CHECK(resolved_tau_max(c) == std::numbers::pi);
    const auto taus = tau_samples(c);
    CHECK(taus.size() == 600);
    CHECK(taus.front() == 0.0);
    CHECK(taus.back() == std::numbers::pi);

    const auto contrast = base(Kind::ordinary_contrast);
    CHECK(resolved_tau_max(contrast) == doctest::Approx(2.0 * std::numbers::pi * std::sqrt(26.0)));

    const auto q = base(Kind::qfunc_mixture);
    CHECK(resolved_q_taus(q).size() == 3);
    const auto g = resolved_grid(q);
    CHECK(g.x_min == -8.0);
    CHECK(g.nx == 161);
}

TEST_CASE("config_from_json") {
    const auto doc = nlohmann::json::parse(R"({
        "scenario": "qfunc-mixture", "alpha": 3, "dim": "auto",
        "grid_x_min": -5, "grid_x_max": 5, "grid_y_min": -4, "grid_y_max": 4,
        "grid_nx": 21, "q_taus": [0, 0.5], "output_path": "q.json",
        "output_format": "json", "self_check": true, "threads": 2 })");
    const auto c = config_from_json(doc);
    CHECK(c.scenario == Kind::qfunc_mixture);
    CHECK(c.alpha == 3.0);
    CHECK_FALSE(c.dim.has_value());
    REQUIRE(c.grid.has_value());
    CHECK(c.grid->nx == 21);
    CHECK(c.grid->ny == kDefaultGridPoints);
    CHECK(c.q_taus == std::vector<double>{0.0, 0.5});
    CHECK(c.format == Format::json);
    CHECK(c.self_check);
    CHECK(c.threads == 2);

    try {
        config_from_json(nlohmann::json::parse(
            R"({"scenario": "purity-mixture", "alpah": 5, "tau_steps": "many", "grid_x_min": 1})"));
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(names_field(e.errors(), "alpah"));
        CHECK(names_field(e.errors(), "tau_steps"));
        CHECK(names_field(e.errors(), "grid"));
    }
    CHECK_THROWS_AS(config_from_json(nlohmann::json::parse(R"({"scenario": "wigner"})")), ConfigError);
    CHECK_THROWS_AS(config_from_json(nlohmann::json::parse("[1, 2]")), ConfigError);

    // echo round trip
    const auto echoed = config_from_json(config_to_json(c));
    CHECK(echoed.grid->x_min == c.grid->x_min);
    CHECK(echoed.q_taus == c.q_taus);
}

TEST_CASE("csv rendering") {
    CHECK(format_value(0.1) == "0.10000000000000001");
    CHECK(format_value(0.5) == "0.5");
    CHECK(std::stod(format_value(std::numbers::pi)) == std::numbers::pi);
    const Table t{{"a", "b"}, {{1.0, 2.5}, {-0.25, 3.0}}};
    CHECK(render_csv(t) == "a,b\n1,2.5\n-0.25,3\n");
}

TEST_CASE("purity-mixture output") {
    auto c = base(Kind::purity_mixture);
    c.tau_steps = 21;
    c.self_check = true;
    const auto out = compute(c);
    REQUIRE(out.files.size() == 1);
    const auto rows = lines(out.files[0].contents);
    REQUIRE(rows.size() == 22);
    CHECK(rows[0] == "tau,zeta_numeric,zeta_closed");
    CHECK(rows[1].rfind("0,0.5", 0) == 0);
    CHECK(out.dim == 78);
    CHECK(out.tail_mass < kDefaultTailTolerance);
}

TEST_CASE("every scenario is deterministic across thread counts") {
    for (Kind kind : {Kind::purity_mixture, Kind::inversion_cat, Kind::cat_transition,
                      Kind::ordinary_contrast, Kind::qfunc_mixture}) {
        auto c = base(kind);
        c.alpha = 3.0;
        c.tau_steps = 40;
        c.grid = GridSpec{-5.0, 5.0, -5.0, 5.0, 31, 29};
        c.self_check = true;
        c.threads = 1;
        const auto serial = compute(c);
        c.threads = 3;
        const auto threaded = compute(c);
        REQUIRE(serial.files.size() == threaded.files.size());
        for (std::size_t i = 0; i < serial.files.size(); ++i) {
            CHECK(serial.files[i].path == threaded.files[i].path);
            CHECK(serial.files[i].contents == threaded.files[i].contents);
        }
        c.format = Format::json;
        c.threads = 1;
        const auto json_serial = compute(c);
        c.threads = 2;
        CHECK(json_serial.files[0].contents == compute(c).files[0].contents);
        const auto doc = nlohmann::json::parse(json_serial.files[0].contents);
        CHECK(doc["metadata"]["dim"] == default_dim(3.0));
        CHECK(doc["metadata"]["config"]["alpha"] == 3.0);
    }
}

TEST_CASE("qfunc-mixture writes one file per snapshot") {
    auto c = base(Kind::qfunc_mixture);
    c.output_path = "dir/q.csv";
    c.grid = GridSpec{-8.0, 8.0, -8.0, 8.0, 11, 11};
    const auto out = compute(c);
    REQUIRE(out.files.size() == 3);
    CHECK(out.files[0].path == "dir/q_tau0.csv");
    CHECK(out.files[2].path == "dir/q_tau2.csv");
    const auto rows = lines(out.files[1].contents);
    CHECK(rows.size() == 1 + 121);
    CHECK(rows[0] == "x,y,Q");
}

TEST_CASE("cat-transition columns") {
    auto c = base(Kind::cat_transition);
    c.tau_max = std::numbers::pi;
    c.tau_steps = 3;  // 0, pi/2, pi
    const auto rows = lines(compute(c).files[0].contents);
    CHECK(rows[0] == "tau,P_excited,fidelity_even_cat_alpha,fidelity_odd_cat_i_alpha");
    std::vector<double> mid;
    std::stringstream ss(rows[2]);
    for (std::string cell; std::getline(ss, cell, ',');) mid.push_back(std::stod(cell));
    CHECK(mid[1] < 0.01);
    CHECK(mid[3] > 0.98);
}

TEST_CASE("errors") {
    auto c = base(Kind::purity_mixture);
    c.tau_steps = 0;
    CHECK_THROWS_AS(compute(c), ConfigError);

    c = base(Kind::purity_mixture);
    c.dim = 40;  // too small for alpha = 5
    CHECK_THROWS_AS(compute(c), TruncationTooSmall);

    c = base(Kind::purity_mixture);
    c.tau_steps = 2;
    c.output_path = "/nonexistent-dir/for/sure/out.csv";
    CHECK_THROWS_AS(run_scenario(c), IoError);
}

TEST_CASE("run_scenario writes files") {
    const auto dir = std::filesystem::temp_directory_path() / "idjc_scenario_test";
    std::filesystem::create_directories(dir);
    auto c = base(Kind::inversion_cat);
    c.tau_steps = 5;
    c.output_path = (dir / "w.csv").string();
    const auto out = run_scenario(c);
    std::ifstream in(c.output_path, std::ios::binary);
    std::stringstream buf;
    buf << in.rdbuf();
    CHECK(buf.str() == out.files[0].contents);
    std::filesystem::remove_all(dir);
}

}  // TEST_SUITE
