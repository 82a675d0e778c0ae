// Copyright 2026 The replab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// Command-line front end. Talks to the library only through the C API.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "replab/replab.h"

namespace {

using Json = nlohmann::ordered_json;

constexpr int kExitConfig = 2;

struct FlagSpec {
    const char *name;  // parameter key
    const char *flag;
    const char *help;
    enum { Int, Real, Text } type;
};

// Per-command flags; each maps onto a key of the config's "params" object.
const std::vector<std::pair<std::string, std::vector<FlagSpec>>> &command_flags() {
    static const std::vector<std::pair<std::string, std::vector<FlagSpec>>> table = {
        {"wg", {{"m", "--m", "permutation degree", FlagSpec::Int}, {"d", "--d", "dimension", FlagSpec::Int}}},
        {"facts", {{"m", "--m", "permutation degree", FlagSpec::Int}, {"d", "--d", "dimension", FlagSpec::Int}}},
        {"design",
         {{"ensemble", "--ensemble", "clifford | interleaved | haar | identity", FlagSpec::Text},
          {"n", "--n", "qubits", FlagSpec::Int},
          {"depth", "--depth", "interleaved depth", FlagSpec::Int},
          {"v", "--v", "interleaved gate: T | H | I", FlagSpec::Text},
          {"t", "--t", "moment order", FlagSpec::Int},
          {"samples", "--samples", "ensemble draws for the moment operator", FlagSpec::Int},
          {"pairs", "--pairs", "pairs for the frame potential", FlagSpec::Int},
          {"probes", "--probes", "probe set (default)", FlagSpec::Text}}},
        {"sim-rqc",
         {{"n", "--n", "qubits", FlagSpec::Int},
          {"k", "--k", "replicas per round", FlagSpec::Int},
          {"eps", "--eps", "perturbation strength", FlagSpec::Real},
          {"N", "--N", "rounds", FlagSpec::Int},
          {"trials", "--trials", "Monte Carlo trials per point", FlagSpec::Int},
          {"strategy", "--strategy", "standard-basis | haar-basis | greedy-adaptive | helstrom-batch | all", FlagSpec::Text},
          {"depth", "--depth", "interleaved circuit depth", FlagSpec::Int},
          {"reference", "--reference", "ensemble draws in the decision rule", FlagSpec::Int},
          {"random_bases", "--random-bases", "extra candidate bases for the greedy strategy", FlagSpec::Int}}},
        {"sim-mixedness",
         {{"n", "--n", "qubits", FlagSpec::Int},
          {"k", "--k", "replicas per round", FlagSpec::Int},
          {"eps", "--eps", "perturbation strength", FlagSpec::Real},
          {"N", "--N", "rounds", FlagSpec::Int},
          {"trials", "--trials", "Monte Carlo trials per point", FlagSpec::Int},
          {"strategy", "--strategy", "standard-basis | haar-basis | greedy-adaptive | helstrom-batch | all", FlagSpec::Text},
          {"reference", "--reference", "ensemble draws in the decision rule", FlagSpec::Int},
          {"random_bases", "--random-bases", "extra candidate bases for the greedy strategy", FlagSpec::Int}}},
        {"diagnostics",
         {{"n", "--n", "qubits", FlagSpec::Int},
          {"k", "--k", "replicas per round", FlagSpec::Int},
          {"eps", "--eps", "perturbation strength", FlagSpec::Real},
          {"N", "--N", "tree depth", FlagSpec::Int},
          {"samples", "--samples", "Monte Carlo pairs per node", FlagSpec::Int},
          {"sub_size", "--sub-size", "members of the finite sub-ensemble", FlagSpec::Int},
          {"tree", "--tree", "standard-basis | random-nonadaptive | random-adaptive", FlagSpec::Text},
          {"branching", "--branching", "outcomes per node (0: d^k)", FlagSpec::Int}}},
        {"tournament",
         {{"n", "--n", "qubits", FlagSpec::Int},
          {"eps", "--eps", "perturbation strength", FlagSpec::Real},
          {"alternatives", "--alternatives", "number of rotated candidates", FlagSpec::Int},
          {"copies", "--copies", "copies per match (0: ceil(64/eps^2))", FlagSpec::Int},
          {"trials", "--trials", "tournament repetitions", FlagSpec::Int},
          {"entangled_copies", "--entangled-copies", "largest joint copy count for the optimal test", FlagSpec::Int}}},
    };
    return table;
}

bool write_file(const std::string &path, const std::string &text) {
    std::error_code ec;
    const auto parent = std::filesystem::path(path).parent_path();
    if (!parent.empty()) std::filesystem::create_directories(parent, ec);
    std::ofstream f(path, std::ios::binary);
    f << text;
    return static_cast<bool>(f);
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"replab: Haar moments, designs and replica-limited testing experiments"};
    app.set_version_flag("--version", std::string(replab_version()));
    app.require_subcommand(0, 1);
    app.fallthrough();

    std::uint64_t seed = 0;
    unsigned workers = 1;
    std::string out_path, format, config_path;
    auto *seed_opt = app.add_option("--seed", seed, "master seed")->capture_default_str();
    auto *workers_opt = app.add_option("--workers", workers, "worker threads (results do not depend on it)")
                            ->check(CLI::Range(1u, 256u));
    app.add_option("--out", out_path, "report path (summary and metadata go to sidecars)");
    auto *format_opt = app.add_option("--format", format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--config", config_path, "JSON config file; flags override it")->check(CLI::ExistingFile);

    Json params = Json::object();
    std::string chosen;
    for (const auto &[name, flags] : command_flags()) {
        CLI::App *sub = app.add_subcommand(name, "run the " + name + " experiment");
        sub->callback([&chosen, n = name] { chosen = n; });
        for (const FlagSpec &f : flags) {
            const std::string key = f.name;
            switch (f.type) {
                case FlagSpec::Int:
                    sub->add_option_function<long long>(f.flag, [&params, key](const long long &v) { params[key] = v; }, f.help);
                    break;
                case FlagSpec::Real:
                    sub->add_option_function<double>(f.flag, [&params, key](const double &v) { params[key] = v; }, f.help);
                    break;
                case FlagSpec::Text:
                    sub->add_option_function<std::string>(f.flag, [&params, key](const std::string &v) { params[key] = v; }, f.help);
                    break;
            }
        }
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    Json config = Json::object();
    if (!config_path.empty()) {
        std::ifstream f(config_path);
        std::stringstream ss;
        ss << f.rdbuf();
        try {
            config = Json::parse(ss.str());
        } catch (const Json::parse_error &e) {
            std::cerr << "replab: error: " << config_path << ": " << e.what() << "\n";
            return kExitConfig;
        }
        if (!config.is_object()) {
            std::cerr << "replab: error: config file must hold a JSON object\n";
            return kExitConfig;
        }
    }
    if (!chosen.empty()) {
        if (config.contains("command") && config["command"] != chosen) config["params"] = Json::object();
        config["command"] = chosen;
    }
    if (!config.contains("command")) {
        std::cerr << "replab: error: no command given (use a subcommand or a config file)\n" << app.help();
        return kExitConfig;
    }
    if (!config.contains("params")) config["params"] = Json::object();
    for (auto it = params.begin(); it != params.end(); ++it) config["params"][it.key()] = it.value();
    if (*seed_opt || !config.contains("seed")) config["seed"] = seed;
    if (*workers_opt || !config.contains("workers")) config["workers"] = workers;
    if (*format_opt) config["format"] = format;
    if (out_path.empty() && config.contains("out") && config["out"].is_string()) out_path = config["out"].get<std::string>();
    config.erase("out");

    replab_report *report = nullptr;
    if (replab_experiment_run(config.dump().c_str(), &report) != REPLAB_OK) {
        std::cerr << "replab: error: " << replab_last_error() << "\n";
        return 4;
    }
    const int code = replab_report_exit_code(report);
    if (code != 0 && *replab_report_error(report) != '\0') std::cerr << "replab: error: " << replab_report_error(report) << "\n";
    if (*replab_report_body(report) != '\0') {
        if (out_path.empty()) {
            std::cout << replab_report_body(report);
            std::cerr << replab_report_summary(report);
        } else {
            const bool ok = write_file(out_path, replab_report_body(report)) &&
                            write_file(out_path + ".summary.txt", replab_report_summary(report)) &&
                            write_file(out_path + ".meta.json", replab_report_meta(report));
            if (!ok) {
                std::cerr << "replab: error: cannot write " << out_path << "\n";
                replab_report_destroy(report);
                return kExitConfig;
            }
            std::cout << replab_report_summary(report);
        }
    }
    replab_report_destroy(report);
    return code;
}
