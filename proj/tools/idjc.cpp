// idjc: command-line front end for the intensity-dependent Jaynes-Cummings
// scenarios.
//
//   idjc run --config cfg.json
//   idjc run --scenario purity-mixture --alpha 5 --tau-max 3.1416 --tau-steps 600 --out out.csv
//
// Flags override keys of the config file. Exit codes: 0 ok, 2 config error,
// 3 numeric precondition or failed self-check, 4 I/O.

#include "idjc/error.hpp"
#include "idjc/scenario.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitIo = 4;

std::vector<double> split_numbers(const std::string& text, const char* field) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw idjc::ConfigError(field, "cannot parse '" + item + "' as a number");
        }
    }
    return out;
}

struct RunFlags {
    std::string config_path;
    std::optional<std::string> scenario;
    std::optional<double> alpha;
    std::optional<int> parity_r;
    std::optional<double> lambda;
    std::optional<double> tau_max;
    std::optional<int> tau_steps;
    std::optional<std::string> dim;
    std::optional<std::string> grid;
    std::optional<std::string> grid_n;
    std::optional<std::string> q_taus;
    std::optional<std::string> out;
    std::optional<std::string> format;
    bool self_check = false;
    std::optional<unsigned> threads;
};

nlohmann::json overlay(nlohmann::json doc, const RunFlags& f) {
    if (f.scenario) doc["scenario"] = *f.scenario;
    if (f.alpha) doc["alpha"] = *f.alpha;
    if (f.parity_r) doc["parity_r"] = *f.parity_r;
    if (f.lambda) doc["lambda"] = *f.lambda;
    if (f.tau_max) doc["tau_max"] = *f.tau_max;
    if (f.tau_steps) doc["tau_steps"] = *f.tau_steps;
    if (f.dim) {
        if (*f.dim == "auto") {
            doc["dim"] = "auto";
        } else {
            try {
                doc["dim"] = std::stoi(*f.dim);
            } catch (const std::exception&) {
                throw idjc::ConfigError("dim", "expected an integer or auto");
            }
        }
    }
    if (f.grid) {
        for (const char* k : {"grid", "grid_x_min", "grid_x_max", "grid_y_min", "grid_y_max"}) {
            doc.erase(k);
        }
        if (*f.grid == "auto") {
            doc["grid"] = "auto";
        } else {
            const auto b = split_numbers(*f.grid, "grid");
            if (b.size() != 4) {
                throw idjc::ConfigError("grid", "expected auto or x_min,x_max,y_min,y_max");
            }
            doc["grid_x_min"] = b[0];
            doc["grid_x_max"] = b[1];
            doc["grid_y_min"] = b[2];
            doc["grid_y_max"] = b[3];
        }
    }
    if (f.grid_n) {
        const auto n = split_numbers(*f.grid_n, "grid");
        if (n.size() != 2) throw idjc::ConfigError("grid", "expected --grid-n nx,ny");
        doc["grid_nx"] = static_cast<int>(n[0]);
        doc["grid_ny"] = static_cast<int>(n[1]);
    }
    if (f.q_taus) doc["q_taus"] = split_numbers(*f.q_taus, "q_taus");
    if (f.out) doc["output_path"] = *f.out;
    if (f.format) doc["output_format"] = *f.format;
    if (f.self_check) doc["self_check"] = true;
    if (f.threads) doc["threads"] = *f.threads;
    return doc;
}

int run(const RunFlags& flags) {
    nlohmann::json doc = nlohmann::json::object();
    if (!flags.config_path.empty()) {
        std::ifstream in(flags.config_path);
        if (!in) throw idjc::IoError("cannot open config file '" + flags.config_path + "'");
        try {
            in >> doc;
        } catch (const nlohmann::json::parse_error& e) {
            throw idjc::ConfigError("<document>", std::string("JSON parse error: ") + e.what());
        }
    }
    const auto config = idjc::scenario::config_from_json(overlay(std::move(doc), flags));
    const auto output = idjc::scenario::run_scenario(config);
    for (const auto& file : output.files) {
        std::cout << "wrote " << file.path << "\n";
    }
    std::cout << "dim " << output.dim << ", truncation tail " << output.tail_mass << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Intensity-dependent Jaynes-Cummings field dynamics"};
    app.require_subcommand(1);

    RunFlags flags;
    auto* cmd = app.add_subcommand("run", "Run a scenario and write its output files");
    cmd->add_option("--config", flags.config_path, "Flat JSON config file");
    cmd->add_option("--scenario", flags.scenario,
                    "purity-mixture | inversion-cat | qfunc-mixture | cat-transition | "
                    "ordinary-contrast");
    cmd->add_option("--alpha", flags.alpha, "Real coherent amplitude");
    cmd->add_option("--parity-r", flags.parity_r, "Cat parity: 1 even, -1 odd, 0 coherent");
    cmd->add_option("--lambda", flags.lambda, "Coupling constant");
    cmd->add_option("--tau-max", flags.tau_max, "End of the tau = lambda t sweep");
    cmd->add_option("--tau-steps", flags.tau_steps, "Number of tau samples");
    cmd->add_option("--dim", flags.dim, "Fock truncation or 'auto'");
    cmd->add_option("--grid", flags.grid, "'auto' or x_min,x_max,y_min,y_max");
    cmd->add_option("--grid-n", flags.grid_n, "nx,ny");
    cmd->add_option("--q-taus", flags.q_taus, "Comma-separated Q snapshot times");
    cmd->add_option("--out", flags.out, "Output path");
    cmd->add_option("--format", flags.format, "csv | json");
    cmd->add_flag("--self-check", flags.self_check, "Check numeric columns against closed forms");
    cmd->add_option("--threads", flags.threads, "Worker threads (0 = all cores)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        return run(flags);
    } catch (const idjc::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const idjc::DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const idjc::NumericError& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return kExitNumeric;
    } catch (const idjc::IoError& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return kExitIo;
    }
}
