#include "idjc/scenario.hpp"

#include "idjc/dynamics.hpp"
#include "idjc/fock.hpp"
#include "idjc/oracles.hpp"
#include "idjc/parallel.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <set>

namespace idjc::scenario {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr double kSelfCheckTolerance = 1e-9;

constexpr std::pair<Kind, std::string_view> kKindNames[] = {
    {Kind::purity_mixture, "purity-mixture"},
    {Kind::inversion_cat, "inversion-cat"},
    {Kind::qfunc_mixture, "qfunc-mixture"},
    {Kind::cat_transition, "cat-transition"},
    {Kind::ordinary_contrast, "ordinary-contrast"},
};

bool is_time_sweep(Kind kind) { return kind != Kind::qfunc_mixture; }
bool uses_cat(Kind kind) { return kind == Kind::inversion_cat || kind == Kind::cat_transition; }

const std::set<std::string>& known_keys() {
    static const std::set<std::string> keys = {
        "scenario",   "alpha",      "parity_r",   "lambda",     "tau_max",
        "tau_steps",  "dim",        "grid",       "grid_x_min", "grid_x_max",
        "grid_y_min", "grid_y_max", "grid_nx",    "grid_ny",    "q_taus",
        "output_path", "output_format", "self_check", "threads",
    };
    return keys;
}

DensityMatrix initial_state(const Config& config, int dim) {
    if (uses_cat(*config.scenario)) {
        return pure_density(make_cat(CatSpec(config.alpha, config.parity_r), dim));
    }
    return coherent_pair_mixture(config.alpha, dim);
}

double initial_tail_mass(const Config& config, int dim) {
    if (uses_cat(*config.scenario)) {
        return cat_tail_mass(CatSpec(config.alpha, config.parity_r), dim);
    }
    return coherent_tail_mass(config.alpha, dim);
}

EvolutionParams params_at(const Config& config, int dim, double tau,
                          Coupling coupling = Coupling::intensity_dependent) {
    EvolutionParams p;
    p.lambda = config.lambda;
    p.tau = tau;
    p.coupling = coupling;
    p.dim = dim;
    return p;
}

template <class Row>
Table sweep(const Config& config, std::vector<std::string> columns, Row row) {
    const auto taus = tau_samples(config);
    Table table{std::move(columns), std::vector<std::vector<double>>(taus.size())};
    parallel_for(taus.size(), config.threads, [&](std::size_t k) { table.rows[k] = row(taus[k]); });
    return table;
}

void self_check_pair(const Table& table, std::size_t numeric, std::size_t closed,
                     const std::string& what) {
    for (std::size_t k = 0; k < table.rows.size(); ++k) {
        const double diff = std::abs(table.rows[k][numeric] - table.rows[k][closed]);
        if (!(diff <= kSelfCheckTolerance)) {
            throw SelfCheckFailed(what + ": row " + std::to_string(k) + " differs by " +
                                  std::to_string(diff));
        }
    }
}

void self_check_range(const Table& table, std::size_t column, double lo, double hi) {
    for (std::size_t k = 0; k < table.rows.size(); ++k) {
        const double v = table.rows[k][column];
        if (!(v >= lo && v <= hi)) {
            throw SelfCheckFailed(table.columns[column] + " out of range at row " +
                                  std::to_string(k) + ": " + format_value(v));
        }
    }
}

std::string render_json(const Table& table, ordered_json metadata) {
    ordered_json doc;
    doc["metadata"] = std::move(metadata);
    ordered_json cols = ordered_json::object();
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        ordered_json values = ordered_json::array();
        for (const auto& row : table.rows) values.push_back(row[c]);
        cols[table.columns[c]] = std::move(values);
    }
    doc["columns"] = std::move(cols);
    return doc.dump(2) + "\n";
}

std::string snapshot_path(const std::string& base, std::size_t index) {
    const std::filesystem::path p(base);
    auto name = p.stem().string() + "_tau" + std::to_string(index) + p.extension().string();
    return (p.parent_path() / name).string();
}

Table q_table(const QGrid& grid) {
    Table table{{"x", "y", "Q"}, {}};
    table.rows.reserve(grid.values.size());
    for (int ix = 0; ix < grid.spec.nx; ++ix) {
        for (int iy = 0; iy < grid.spec.ny; ++iy) {
            table.rows.push_back({grid.spec.x(ix), grid.spec.y(iy), grid.at(ix, iy)});
        }
    }
    return table;
}

void self_check_q(const QGrid& grid, double alpha, double tau) {
    for (int ix = 0; ix < grid.spec.nx; ++ix) {
        for (int iy = 0; iy < grid.spec.ny; ++iy) {
            const double q = grid.at(ix, iy);
            const cplx beta(grid.spec.x(ix), grid.spec.y(iy));
            if (!(q >= -1e-12 && q <= 1.0 / std::numbers::pi + 1e-12)) {
                throw SelfCheckFailed("Q out of [0, 1/pi] at x = " + format_value(beta.real()) +
                                      ", y = " + format_value(beta.imag()));
            }
            const double diff = std::abs(q - q_mixture_closed(alpha, tau, beta));
            if (!(diff <= kSelfCheckTolerance)) {
                throw SelfCheckFailed("Q differs from closed form by " + std::to_string(diff) +
                                      " at x = " + format_value(beta.real()) +
                                      ", y = " + format_value(beta.imag()));
            }
        }
    }
}

template <class T>
std::optional<T> take(const nlohmann::json& doc, const char* key, std::vector<FieldError>& errors,
                      bool (nlohmann::json::*check)() const noexcept, const char* expected) {
    const auto it = doc.find(key);
    if (it == doc.end()) return std::nullopt;
    if (!((*it).*check)()) {
        errors.push_back({key, std::string("expected ") + expected});
        return std::nullopt;
    }
    return it->get<T>();
}

}  // namespace

std::string_view to_string(Kind kind) {
    for (const auto& [k, name] : kKindNames) {
        if (k == kind) return name;
    }
    return "unknown";
}

std::optional<Kind> parse_kind(std::string_view name) {
    for (const auto& [k, n] : kKindNames) {
        if (n == name) return k;
    }
    return std::nullopt;
}

std::vector<FieldError> validate_config(const Config& config) {
    std::vector<FieldError> errors;
    if (!config.scenario) {
        errors.push_back({"scenario", "missing; expected one of purity-mixture, inversion-cat, "
                                      "qfunc-mixture, cat-transition, ordinary-contrast"});
        return errors;
    }
    const Kind kind = *config.scenario;
    if (!std::isfinite(config.alpha)) errors.push_back({"alpha", "must be finite"});
    if (!(config.lambda > 0.0) || !std::isfinite(config.lambda)) {
        errors.push_back({"lambda", "must be positive"});
    }
    if (uses_cat(kind)) {
        if (config.parity_r < -1 || config.parity_r > 1) {
            errors.push_back({"parity_r", "must be -1, 0 or +1"});
        } else if (config.parity_r == -1 && config.alpha == 0.0) {
            errors.push_back({"parity_r", "odd cat with alpha = 0 is undefined"});
        }
    }
    if (is_time_sweep(kind)) {
        if (config.tau_max && (!(*config.tau_max > 0.0) || !std::isfinite(*config.tau_max))) {
            errors.push_back({"tau_max", "must be positive"});
        }
        if (config.tau_steps < 2) errors.push_back({"tau_steps", "must be >= 2"});
    }
    if (config.dim && *config.dim < 2) errors.push_back({"dim", "must be >= 2 or \"auto\""});
    if (kind == Kind::qfunc_mixture) {
        if (!config.grid_auto && !config.grid) {
            errors.push_back({"grid", "qfunc-mixture requires grid bounds "
                                      "(grid_x_min, grid_x_max, grid_y_min, grid_y_max) "
                                      "or grid = \"auto\""});
        } else if (config.grid) {
            try {
                config.grid->validate();
            } catch (const InvalidParams& e) {
                errors.push_back({"grid", e.what()});
            }
        }
        for (double t : config.q_taus) {
            if (!(t >= 0.0) || !std::isfinite(t)) {
                errors.push_back({"q_taus", "times must be non-negative"});
                break;
            }
        }
    }
    if (config.output_path.empty()) errors.push_back({"output_path", "missing"});
    return errors;
}

Config config_from_json(const nlohmann::json& doc) {
    using J = nlohmann::json;
    std::vector<FieldError> errors;
    if (!doc.is_object()) throw ConfigError("<document>", "expected a flat JSON object");
    for (const auto& item : doc.items()) {
        if (!known_keys().contains(item.key())) errors.push_back({item.key(), "unknown key"});
    }

    Config config;
    if (auto s = take<std::string>(doc, "scenario", errors, &J::is_string, "a string")) {
        config.scenario = parse_kind(*s);
        if (!config.scenario) errors.push_back({"scenario", "unknown scenario '" + *s + "'"});
    }
    if (auto v = take<double>(doc, "alpha", errors, &J::is_number, "a number")) config.alpha = *v;
    if (auto v = take<int>(doc, "parity_r", errors, &J::is_number_integer, "an integer")) {
        config.parity_r = *v;
    }
    if (auto v = take<double>(doc, "lambda", errors, &J::is_number, "a number")) config.lambda = *v;
    if (auto v = take<double>(doc, "tau_max", errors, &J::is_number, "a number")) config.tau_max = *v;
    if (auto v = take<int>(doc, "tau_steps", errors, &J::is_number_integer, "an integer")) {
        config.tau_steps = *v;
    }
    if (const auto it = doc.find("dim"); it != doc.end()) {
        if (it->is_string() && it->get<std::string>() == "auto") {
            config.dim.reset();
        } else if (it->is_number_integer()) {
            config.dim = it->get<int>();
        } else {
            errors.push_back({"dim", "expected an integer or \"auto\""});
        }
    }
    if (const auto it = doc.find("grid"); it != doc.end()) {
        if (it->is_string() && it->get<std::string>() == "auto") {
            config.grid_auto = true;
        } else {
            errors.push_back({"grid", "expected \"auto\" (explicit bounds use grid_x_min etc.)"});
        }
    }
    const char* bound_keys[] = {"grid_x_min", "grid_x_max", "grid_y_min", "grid_y_max"};
    std::optional<double> bounds[4];
    int n_bounds = 0;
    for (int i = 0; i < 4; ++i) {
        bounds[i] = take<double>(doc, bound_keys[i], errors, &J::is_number, "a number");
        if (doc.contains(bound_keys[i])) ++n_bounds;
    }
    const auto nx = take<int>(doc, "grid_nx", errors, &J::is_number_integer, "an integer");
    const auto ny = take<int>(doc, "grid_ny", errors, &J::is_number_integer, "an integer");
    if (n_bounds > 0 && n_bounds < 4) {
        std::string missing;
        for (int i = 0; i < 4; ++i) {
            if (!doc.contains(bound_keys[i])) missing += std::string(missing.empty() ? "" : ", ") + bound_keys[i];
        }
        errors.push_back({"grid", "incomplete bounds, missing " + missing});
    } else if (n_bounds == 4 && bounds[0] && bounds[1] && bounds[2] && bounds[3]) {
        config.grid = GridSpec{*bounds[0], *bounds[1], *bounds[2], *bounds[3],
                               nx.value_or(kDefaultGridPoints), ny.value_or(kDefaultGridPoints)};
    }
    if ((nx || ny) && n_bounds == 0) {
        if (config.grid_auto) {
            // resolution override for the automatic window
            GridSpec g = default_grid(config.alpha);
            g.nx = nx.value_or(g.nx);
            g.ny = ny.value_or(g.ny);
            config.grid = g;
            config.grid_auto = false;
        } else {
            errors.push_back({"grid", "grid_nx/grid_ny given without bounds"});
        }
    }
    if (const auto it = doc.find("q_taus"); it != doc.end()) {
        if (!it->is_array()) {
            errors.push_back({"q_taus", "expected an array of numbers"});
        } else {
            for (const auto& t : *it) {
                if (!t.is_number()) {
                    errors.push_back({"q_taus", "expected an array of numbers"});
                    break;
                }
                config.q_taus.push_back(t.get<double>());
            }
        }
    }
    if (auto v = take<std::string>(doc, "output_path", errors, &J::is_string, "a string")) {
        config.output_path = *v;
    }
    if (auto v = take<std::string>(doc, "output_format", errors, &J::is_string, "a string")) {
        if (*v == "csv") {
            config.format = Format::csv;
        } else if (*v == "json") {
            config.format = Format::json;
        } else {
            errors.push_back({"output_format", "expected \"csv\" or \"json\""});
        }
    }
    if (auto v = take<bool>(doc, "self_check", errors, &J::is_boolean, "a boolean")) {
        config.self_check = *v;
    }
    if (auto v = take<long long>(doc, "threads", errors, &J::is_number_integer, "an integer")) {
        if (*v < 0) {
            errors.push_back({"threads", "must be >= 0"});
        } else {
            config.threads = static_cast<unsigned>(*v);
        }
    }
    if (!errors.empty()) throw ConfigError(std::move(errors));
    return config;
}

Config load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file '" + path + "'");
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError("<document>", std::string("JSON parse error: ") + e.what());
    }
    return config_from_json(doc);
}

nlohmann::json config_to_json(const Config& config) {
    nlohmann::json j;
    if (config.scenario) j["scenario"] = std::string(to_string(*config.scenario));
    j["alpha"] = config.alpha;
    j["parity_r"] = config.parity_r;
    j["lambda"] = config.lambda;
    if (config.tau_max) j["tau_max"] = *config.tau_max;
    j["tau_steps"] = config.tau_steps;
    if (config.dim) {
        j["dim"] = *config.dim;
    } else {
        j["dim"] = "auto";
    }
    if (config.grid_auto) j["grid"] = "auto";
    if (config.grid) {
        j["grid_x_min"] = config.grid->x_min;
        j["grid_x_max"] = config.grid->x_max;
        j["grid_y_min"] = config.grid->y_min;
        j["grid_y_max"] = config.grid->y_max;
        j["grid_nx"] = config.grid->nx;
        j["grid_ny"] = config.grid->ny;
    }
    if (!config.q_taus.empty()) j["q_taus"] = config.q_taus;
    j["output_path"] = config.output_path;
    j["output_format"] = config.format == Format::csv ? "csv" : "json";
    j["self_check"] = config.self_check;
    // threads is deliberately not echoed: output must not depend on it.
    return j;
}

int resolved_dim(const Config& config) {
    return config.dim ? *config.dim : default_dim(std::abs(config.alpha));
}

double resolved_tau_max(const Config& config) {
    if (config.tau_max) return *config.tau_max;
    constexpr double pi = std::numbers::pi;
    switch (config.scenario.value_or(Kind::purity_mixture)) {
        case Kind::purity_mixture: return pi;
        case Kind::inversion_cat:
        case Kind::cat_transition: return 2.0 * pi;
        case Kind::ordinary_contrast: return 2.0 * pi * std::sqrt(config.alpha * config.alpha + 1.0);
        case Kind::qfunc_mixture: return pi / 2.0;
    }
    return pi;
}

std::vector<double> tau_samples(const Config& config) {
    const double tau_max = resolved_tau_max(config);
    const int steps = config.tau_steps;
    std::vector<double> taus(static_cast<std::size_t>(steps));
    for (int k = 0; k < steps; ++k) {
        taus[static_cast<std::size_t>(k)] = tau_max * k / (steps - 1);
    }
    return taus;
}

GridSpec resolved_grid(const Config& config) {
    if (config.grid) return *config.grid;
    return default_grid(std::abs(config.alpha));
}

std::vector<double> resolved_q_taus(const Config& config) {
    if (!config.q_taus.empty()) return config.q_taus;
    constexpr double pi = std::numbers::pi;
    return {0.0, pi / 4.0, pi / 2.0};
}

std::string format_value(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string render_csv(const Table& table) {
    std::string out;
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        if (c) out += ',';
        out += table.columns[c];
    }
    out += '\n';
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) out += ',';
            out += format_value(row[c]);
        }
        out += '\n';
    }
    return out;
}

Output compute(const Config& config) {
    if (auto errors = validate_config(config); !errors.empty()) {
        throw ConfigError(std::move(errors));
    }
    const Kind kind = *config.scenario;
    const int dim = resolved_dim(config);
    const DensityMatrix rho0 = initial_state(config, dim);
    Output output{{}, dim, initial_tail_mass(config, dim)};

    ordered_json metadata;
    metadata["config"] = config_to_json(config);
    metadata["dim"] = dim;
    metadata["tail_mass"] = output.tail_mass;
    if (is_time_sweep(kind)) metadata["tau_max"] = resolved_tau_max(config);

    const auto emit = [&](const std::string& path, const Table& table, const ordered_json& meta) {
        output.files.push_back({path, config.format == Format::csv ? render_csv(table)
                                                                   : render_json(table, meta)});
    };

    const double alpha = config.alpha;
    switch (kind) {
        case Kind::purity_mixture: {
            const auto table = sweep(config, {"tau", "zeta_numeric", "zeta_closed"}, [&](double tau) {
                const auto rho = evolve_field(rho0, params_at(config, dim, tau));
                return std::vector<double>{tau, purity_defect(rho),
                                           oracles::purity_mixture_closed(alpha, tau)};
            });
            if (config.self_check) self_check_pair(table, 1, 2, "zeta_numeric vs zeta_closed");
            emit(config.output_path, table, metadata);
            break;
        }
        case Kind::inversion_cat: {
            const auto table = sweep(config, {"tau", "W_numeric", "W_closed"}, [&](double tau) {
                return std::vector<double>{
                    tau, atomic_inversion(rho0, params_at(config, dim, tau)),
                    oracles::inversion_cat_closed(alpha, config.parity_r, tau)};
            });
            if (config.self_check) self_check_pair(table, 1, 2, "W_numeric vs W_closed");
            emit(config.output_path, table, metadata);
            break;
        }
        case Kind::cat_transition: {
            const auto even_cat = make_cat(CatSpec(alpha, 1), dim);
            const auto odd_cat_rotated = make_cat(CatSpec(cplx(0.0, alpha), -1), dim);
            auto table = sweep(config,
                               {"tau", "P_excited", "fidelity_even_cat_alpha",
                                "fidelity_odd_cat_i_alpha"},
                               [&](double tau) {
                                   const auto p = params_at(config, dim, tau);
                                   const auto rho = evolve_field(rho0, p);
                                   return std::vector<double>{
                                       tau, excited_population(rho0, p),
                                       fidelity_with_pure(rho, even_cat),
                                       fidelity_with_pure(rho, odd_cat_rotated)};
                               });
            if (config.self_check) {
                Table check{{"P_excited", "P_closed"}, {}};
                for (const auto& row : table.rows) {
                    check.rows.push_back(
                        {row[1], 0.5 * (1.0 + oracles::inversion_cat_closed(alpha, config.parity_r,
                                                                           row[0]))});
                }
                self_check_pair(check, 0, 1, "P_excited vs closed-form inversion");
                for (std::size_t c = 1; c < 4; ++c) self_check_range(table, c, -1e-10, 1.0 + 1e-10);
            }
            emit(config.output_path, table, metadata);
            break;
        }
        case Kind::ordinary_contrast: {
            const auto table = sweep(config, {"tau", "zeta_ID", "zeta_ordinary"}, [&](double tau) {
                const auto id = evolve_field(rho0, params_at(config, dim, tau));
                const auto ord = evolve_field(rho0, params_at(config, dim, tau, Coupling::ordinary));
                return std::vector<double>{tau, purity_defect(id), purity_defect(ord)};
            });
            if (config.self_check) {
                Table check{{"zeta_ID", "zeta_closed"}, {}};
                for (const auto& row : table.rows) {
                    check.rows.push_back({row[1], oracles::purity_mixture_closed(alpha, row[0])});
                }
                self_check_pair(check, 0, 1, "zeta_ID vs closed form");
                self_check_range(table, 2, -1e-10, 1.0);
            }
            emit(config.output_path, table, metadata);
            break;
        }
        case Kind::qfunc_mixture: {
            const GridSpec spec = resolved_grid(config);
            const auto q_taus = resolved_q_taus(config);
            for (std::size_t k = 0; k < q_taus.size(); ++k) {
                const auto rho = evolve_field(rho0, params_at(config, dim, q_taus[k]));
                const QGrid grid = q_grid(rho, spec, config.threads);
                if (config.self_check) self_check_q(grid, alpha, q_taus[k]);
                ordered_json meta = metadata;
                meta["tau"] = q_taus[k];
                meta["grid"] = {{"x_min", spec.x_min}, {"x_max", spec.x_max},
                                {"y_min", spec.y_min}, {"y_max", spec.y_max},
                                {"nx", spec.nx},       {"ny", spec.ny}};
                meta["cell_area"] = grid.cell_area;
                meta["normalization"] = grid.normalization();
                emit(snapshot_path(config.output_path, k), q_table(grid), meta);
            }
            break;
        }
    }
    return output;
}

void write_output(const Output& output) {
    for (const auto& file : output.files) {
        std::ofstream out(file.path, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot open '" + file.path + "' for writing");
        out.write(file.contents.data(), static_cast<std::streamsize>(file.contents.size()));
        if (!out) throw IoError("write failed for '" + file.path + "'");
    }
}

Output run_scenario(const Config& config) {
    Output output = compute(config);
    write_output(output);
    return output;
}

}  // namespace idjc::scenario
