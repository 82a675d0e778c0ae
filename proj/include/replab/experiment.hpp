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


#ifndef REPLAB_EXPERIMENT_HPP
#define REPLAB_EXPERIMENT_HPP

#include <string>
#include <vector>

namespace replab {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitResource = 3;
inline constexpr int kExitInvariant = 4;

/// Experiment commands understood by run_experiment.
const std::vector<std::string> &experiment_commands();

struct ExperimentOutput {
    int exit_code = kExitOk;
    std::string format;   // "json" or "csv"
    std::string report;   // deterministic for a given resolved config
    std::string summary;  // human-readable
    std::string meta;     // JSON sidecar with the wall-clock timestamp
    std::string error;    // diagnostic when exit_code != 0
};

/// Runs one experiment described by a JSON config:
///   {"command": "...", "seed": 0, "workers": 1, "format": "json",
///    "params": {...command-specific...}}
/// Unknown keys and out-of-range parameters are rejected before any work.
ExperimentOutput run_experiment(const std::string &config_json);

const char *version_string();

}  // namespace replab

#endif  // REPLAB_EXPERIMENT_HPP
