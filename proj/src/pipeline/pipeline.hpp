// Copyright 2026 The entangle-lab authors
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

#ifndef ENTANGLE_LAB_PIPELINE_PIPELINE_HPP
#define ENTANGLE_LAB_PIPELINE_PIPELINE_HPP

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "shadows/shadows.hpp"
#include "states/states.hpp"

namespace elab::pipeline {

inline constexpr const char* kToolVersion = "0.1.0";

// Commands: gen-dataset, train, predict, shadow-bench, collect-shadow,
// oracle-check. Each writes its primary output at config["out"], any derived
// outputs next to it, and a <out>.manifest.json recording the fully resolved
// config plus a sha256 per output file. Re-running from the manifest
// reproduces every output byte for byte.
struct CommandResult {
    nlohmann::json report;
    std::string manifest_path;
    std::vector<std::string> outputs;
    int exit_code = 0;  // 0 ok; 3 accuracy floor unmet (outputs still written)
};

// Fills defaults for missing keys and validates; throws std::invalid_argument
// on unknown commands, unknown keys, or bad values.
nlohmann::json resolve_config(nlohmann::json config);

CommandResult run_command(const nlohmann::json& config);

// Re-executes the resolved config stored in a manifest; outputs land at their
// original paths.
CommandResult rerun_manifest(const std::string& manifest_path);

// Dataset rows are JSON lines with exactly the keys
// {"class","label","seed","theta","phi","p_noise","partition","features"};
// "partition" is the part_a index list or null.
void write_dataset(const std::string& path,
                   const std::vector<states::GeneratedState>& generated);
std::vector<states::StateRecord> read_dataset(const std::string& path, std::size_t n_qubits);

// Shadow files: one line per snapshot, basis word then bits word
// (e.g. "XZYZ 0110").
void write_shadow_file(const std::string& path, const shadows::ShadowSet& shadow);
shadows::ShadowSet read_shadow_file(const std::string& path, shadows::Scheme scheme);

// Shortest round-trip decimal form, locale independent; used for CSV cells.
std::string format_double(double value);

// Class tokens accepted by gen-dataset/predict/shadow-bench state specs:
// "ghz", "w", "bell", "random", "sep:<part-a digits>" (e.g. "sep:01").
struct ClassToken {
    states::StateClass cls;
    std::optional<states::Bipartition> partition;
};
ClassToken parse_class_token(const std::string& token, std::size_t n_qubits);

// The benchmark observable set: orbit of the four selected two-local strings
// under identity plus all transpositions, deduplicated (22 strings at n = 4).
std::vector<std::string> default_benchmark_observables();

}  // namespace elab::pipeline

#endif
