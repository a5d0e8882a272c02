// scenario.hpp: named simulation scenarios and their file output.
//
// A scenario is described by a flat Config. compute() produces the rendered
// output files in memory; run_scenario() also writes them. Output bytes depend
// only on the config, never on the thread count.
//
// Time is always reported as the dimensionless tau = lambda t.

#pragma once

#include "idjc/error.hpp"
#include "idjc/phase_space.hpp"

#include "json.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace idjc::scenario {

enum class Kind { purity_mixture, inversion_cat, qfunc_mixture, cat_transition, ordinary_contrast };
enum class Format { csv, json };

std::string_view to_string(Kind kind);
std::optional<Kind> parse_kind(std::string_view name);

struct Config {
    std::optional<Kind> scenario;
    double alpha = 5.0;  // real amplitude
    int parity_r = 1;    // cat scenarios only
    double lambda = 1.0;
    std::optional<double> tau_max;  // unset: per-scenario default
    int tau_steps = 600;            // number of tau samples, endpoints included
    std::optional<int> dim;         // unset: default_dim(alpha)
    bool grid_auto = false;         // qfunc-mixture: use default_grid(alpha)
    std::optional<GridSpec> grid;
    std::vector<double> q_taus;     // qfunc-mixture snapshot times
    std::string output_path;
    Format format = Format::csv;
    bool self_check = false;
    unsigned threads = 1;  // 0 = all cores
};

// Empty result means the config is runnable (filesystem aside).
std::vector<FieldError> validate_config(const Config& config);

// Flat JSON document -> Config. Unknown keys and type errors are reported
// together as a ConfigError. Semantic validation is left to validate_config.
Config config_from_json(const nlohmann::json& doc);
Config load_config(const std::string& path);
nlohmann::json config_to_json(const Config& config);

int resolved_dim(const Config& config);
double resolved_tau_max(const Config& config);
std::vector<double> tau_samples(const Config& config);
GridSpec resolved_grid(const Config& config);
std::vector<double> resolved_q_taus(const Config& config);

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

// %.17g, the round-trip format used for every CSV value.
std::string format_value(double v);
std::string render_csv(const Table& table);

struct OutputFile {
    std::string path;
    std::string contents;
};

struct Output {
    std::vector<OutputFile> files;
    int dim = 0;
    double tail_mass = 0.0;
};

// Validates (ConfigError), computes and renders. With config.self_check set,
// numeric and closed-form columns are compared first (SelfCheckFailed).
Output compute(const Config& config);
void write_output(const Output& output);  // IoError
Output run_scenario(const Config& config);

}  // namespace idjc::scenario
