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

// entangle-lab command line. Flag parsing only; every command runs through
// the C API of the shared library (see include/entangle_lab.h). Exit codes:
// 0 success, 2 usage error, 3 accuracy floor unmet, 4 numerical failure.

#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "entangle_lab.h"
#include "json.hpp"

namespace {

using nlohmann::json;

int status_to_exit_code(el_status status) {
    switch (status) {
        case EL_OK: return 0;
        case EL_ERR_INVALID_ARGUMENT: return 2;
        case EL_ERR_ACCURACY_FLOOR: return 3;
        case EL_ERR_NUMERICAL: return 4;
        case EL_ERR_INTERNAL: return 4;
    }
    return 4;
}

json parse_pair(const std::string& text, const std::string& flag) {
    const std::size_t comma = text.find(',');
    if (comma == std::string::npos) {
        throw CLI::ValidationError(flag, "expected two comma-separated numbers");
    }
    try {
        return json::array(
            {std::stod(text.substr(0, comma)), std::stod(text.substr(comma + 1))});
    } catch (const std::exception&) {
        throw CLI::ValidationError(flag, "expected two comma-separated numbers");
    }
}

std::vector<std::string> split_commas(const std::string& text) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t comma = text.find(',', start);
        if (comma == std::string::npos) {
            out.push_back(text.substr(start));
            break;
        }
        out.push_back(text.substr(start, comma - start));
        start = comma + 1;
    }
    return out;
}

void print_summary(const std::string& command, const json& result) {
    const json& report = result.at("report");
    if (command == "gen-dataset") {
        std::printf("wrote %zu records (%zu features each): %d entangled, %d separable\n",
                    report.at("records").get<std::size_t>(),
                    report.at("feature_count").get<std::size_t>(),
                    report.at("entangled_records").get<int>(),
                    report.at("separable_records").get<int>());
    } else if (command == "train") {
        std::printf("train accuracy %.6f", report.at("train_accuracy").get<double>());
        if (!report.at("test_accuracy").is_null()) {
            std::printf(", test accuracy %.6f", report.at("test_accuracy").get<double>());
        }
        std::printf("\nsurvivors:");
        for (const auto& s : report.at("survivors")) {
            std::printf(" %s", s.get<std::string>().c_str());
        }
        std::printf("\norbit size: %zu\n", report.at("orbit").size());
        if (!report.at("floor_met").get<bool>()) {
            std::printf("WARNING: accuracy floor unmet; best full-feature model written\n");
        }
    } else if (command == "predict") {
        std::printf("verdict: %s\n", report.at("verdict").get<std::string>().c_str());
        std::printf("decision values:");
        for (const auto& v : report.at("decision_values")) {
            std::printf(" %.6f", v.get<double>());
        }
        std::printf("\n");
        if (report.contains("ppt")) {
            std::printf("ppt ground truth: npt_any=%s npt_all=%s\n",
                        report.at("ppt").at("npt_any").get<bool>() ? "true" : "false",
                        report.at("ppt").at("npt_all").get<bool>() ? "true" : "false");
        }
    } else if (command == "oracle-check") {
        if (report.at("threshold").is_null()) {
            std::printf("threshold: NONE (no sign change in [0, 1])\n");
        } else {
            std::printf("threshold: p* = %.8f\n", report.at("threshold").get<double>());
        }
    } else if (command == "shadow-bench") {
        std::printf("wrote %zu benchmark rows\n", report.at("rows").size());
    } else if (command == "collect-shadow") {
        std::printf("wrote %zu snapshots (%s)\n", report.at("snapshots").get<std::size_t>(),
                    report.at("method").get<std::string>().c_str());
    }
    for (const auto& path : result.at("outputs")) {
        std::printf("output: %s\n", path.get<std::string>().c_str());
    }
    std::printf("manifest: %s\n", result.at("manifest").get<std::string>().c_str());
}

int run(const json& config) {
    char* result_text = nullptr;
    const el_status status = el_run_command(config.dump().c_str(), &result_text);
    if (status != EL_OK && status != EL_ERR_ACCURACY_FLOOR) {
        std::fprintf(stderr, "error: %s\n", el_last_error());
        el_string_free(result_text);
        return status_to_exit_code(status);
    }
    if (result_text != nullptr) {
        print_summary(config.at("command").get<std::string>(), json::parse(result_text));
        el_string_free(result_text);
    }
    return status_to_exit_code(status);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"entangle-lab: dataset synthesis, witness training, and shadow "
                 "estimation for entanglement detection"};
    app.require_subcommand(1);

    // Flag values; only flags the user actually passed are forwarded, so the
    // library's documented defaults apply and land in the manifest.
    std::string out, dataset, model, cls, target, features_file, shadow_file, method, classes;
    std::string theta_range, phi_range, p_range, w_p_range, bell_p_range;
    std::string samples_grid, observables;
    std::uint64_t seed = 0;
    std::size_t n = 0, k = 0, per_class = 0, min_features = 0, max_passes = 0, trials = 0,
                rounds = 0, max_iters = 0;
    double gamma = 0, c_penalty = 0, tolerance = 0, accuracy_floor = 0, test_fraction = 0,
           theta = 0, phi = 0, p_noise = 0, epsilon = 0, bisect_tol = 0;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--out", out, "primary output path")->required();
        sub->add_option("--seed", seed, "64-bit seed");
    };

    CLI::App* gen = app.add_subcommand("gen-dataset", "synthesize a labeled state dataset");
    add_common(gen);
    gen->add_option("--n", n, "qubit count");
    gen->add_option("--k", k, "feature locality bound");
    gen->add_option("--per-class", per_class, "records per class");
    gen->add_option("--classes", classes,
                    "comma list of ghz, w, bell, random, sep:<digits>");
    gen->add_option("--theta-range", theta_range, "a,b for the coherent-noise angle");
    gen->add_option("--phi-range", phi_range, "a,b for the coherent-noise phase");
    gen->add_option("--p-range", p_range, "a,b white noise for the ghz/coherent class");
    gen->add_option("--w-p-range", w_p_range, "a,b white noise for the w class");
    gen->add_option("--bell-p-range", bell_p_range, "a,b white noise for the bell class");

    CLI::App* train = app.add_subcommand("train", "train a witness with feature elimination");
    add_common(train);
    train->add_option("--dataset", dataset, "dataset JSONL path")->required();
    train->add_option("--n", n, "qubit count");
    train->add_option("--k", k, "feature locality bound");
    train->add_option("--gamma", gamma, "RBF width (0 = auto)");
    train->add_option("--c", c_penalty, "soft-margin penalty");
    train->add_option("--tolerance", tolerance, "KKT tolerance");
    train->add_option("--max-passes", max_passes, "optimizer iteration cap");
    train->add_option("--accuracy-floor", accuracy_floor, "training accuracy to preserve");
    train->add_option("--min-features", min_features, "stop eliminating at this many");
    train->add_option("--test-fraction", test_fraction, "held-out fraction");

    CLI::App* predict = app.add_subcommand("predict", "classify a state with a trained model");
    add_common(predict);
    predict->add_option("--model", model, "model JSON path")->required();
    predict->add_option("--class", cls, "state spec class token");
    predict->add_option("--theta", theta, "coherent-noise angle");
    predict->add_option("--phi", phi, "coherent-noise phase");
    predict->add_option("--p", p_noise, "white-noise weight");
    predict->add_option("--features", features_file, "JSON file of Pauli-word -> value");
    predict->add_option("--shadow", shadow_file, "snapshot file (BASES BITS lines)");
    predict->add_option("--method", method, "randomized|derandomized (shadow mode)");

    CLI::App* bench = app.add_subcommand("shadow-bench",
                                         "compare estimation schemes on a benchmark state");
    add_common(bench);
    bench->add_option("--n", n, "qubit count");
    bench->add_option("--class", cls, "benchmark state class token");
    bench->add_option("--theta", theta, "coherent-noise angle");
    bench->add_option("--phi", phi, "coherent-noise phase");
    bench->add_option("--p", p_noise, "white-noise weight");
    bench->add_option("--samples-grid", samples_grid, "comma list of sample counts");
    bench->add_option("--trials", trials, "seeded trials per grid point");
    bench->add_option("--method", method, "all|independent|randomized|derandomized");
    bench->add_option("--epsilon", epsilon, "derandomization target error");
    bench->add_option("--observables", observables, "comma list of Pauli words");

    CLI::App* collect = app.add_subcommand("collect-shadow", "measure and store snapshots");
    add_common(collect);
    collect->add_option("--n", n, "qubit count");
    collect->add_option("--model", model,
                        "model JSON path; targets the orbit of its observables");
    collect->add_option("--class", cls, "state spec class token");
    collect->add_option("--theta", theta, "coherent-noise angle");
    collect->add_option("--phi", phi, "coherent-noise phase");
    collect->add_option("--p", p_noise, "white-noise weight");
    collect->add_option("--rounds", rounds, "number of snapshots");
    collect->add_option("--method", method, "randomized|derandomized");
    collect->add_option("--epsilon", epsilon, "derandomization target error");
    collect->add_option("--observables", observables, "comma list of Pauli words");

    CLI::App* oracle = app.add_subcommand("oracle-check",
                                          "bisection on the white-noise detection threshold");
    add_common(oracle);
    oracle->add_option("--class", cls, "GHZ3|W3|W4|BELL")->required();
    oracle->add_option("--target", target, "witness|ppt|chsh")->required();
    oracle->add_option("--bisect-tol", bisect_tol, "bisection tolerance");
    oracle->add_option("--max-iters", max_iters, "bisection iteration cap");

    std::string manifest_path;
    CLI::App* rerun = app.add_subcommand("rerun", "re-execute a command from its manifest");
    rerun->add_option("manifest", manifest_path, "manifest JSON path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (rerun->parsed()) {
            char* result_text = nullptr;
            const el_status status = el_rerun_manifest(manifest_path.c_str(), &result_text);
            if (status != EL_OK && status != EL_ERR_ACCURACY_FLOOR) {
                std::fprintf(stderr, "error: %s\n", el_last_error());
                el_string_free(result_text);
                return status_to_exit_code(status);
            }
            if (result_text != nullptr) {
                const json result = json::parse(result_text);
                std::printf("reran manifest; outputs:\n");
                for (const auto& path : result.at("outputs")) {
                    std::printf("  %s\n", path.get<std::string>().c_str());
                }
                el_string_free(result_text);
            }
            return status_to_exit_code(status);
        }

        CLI::App* sub = app.get_subcommands().front();
        json config;
        config["command"] = sub->get_name();
        config["out"] = out;
        auto passed = [&sub](const char* flag) {
            const CLI::Option* opt = sub->get_option_no_throw(flag);
            return opt != nullptr && opt->count() > 0;
        };
        if (passed("--seed")) config["seed"] = seed;
        if (passed("--n")) config["n"] = n;
        if (sub == gen) {
            if (passed("--k")) config["k"] = k;
            if (passed("--per-class")) config["per_class"] = per_class;
            if (passed("--classes")) config["classes"] = split_commas(classes);
            if (passed("--theta-range")) config["theta_range"] = parse_pair(theta_range, "--theta-range");
            if (passed("--phi-range")) config["phi_range"] = parse_pair(phi_range, "--phi-range");
            if (passed("--p-range")) config["p_range"] = parse_pair(p_range, "--p-range");
            if (passed("--w-p-range")) config["w_p_range"] = parse_pair(w_p_range, "--w-p-range");
            if (passed("--bell-p-range"))
                config["bell_p_range"] = parse_pair(bell_p_range, "--bell-p-range");
        } else if (sub == train) {
            config["dataset"] = dataset;
            if (passed("--k")) config["k"] = k;
            if (passed("--gamma")) config["gamma"] = gamma;
            if (passed("--c")) config["c"] = c_penalty;
            if (passed("--tolerance")) config["tolerance"] = tolerance;
            if (passed("--max-passes")) config["max_passes"] = max_passes;
            if (passed("--accuracy-floor")) config["accuracy_floor"] = accuracy_floor;
            if (passed("--min-features")) config["min_features"] = min_features;
            if (passed("--test-fraction")) config["test_fraction"] = test_fraction;
        } else if (sub == predict) {
            config["model"] = model;
            if (passed("--class")) config["class"] = cls;
            if (passed("--theta")) config["theta"] = theta;
            if (passed("--phi")) config["phi"] = phi;
            if (passed("--p")) config["p_noise"] = p_noise;
            if (passed("--features")) config["features_file"] = features_file;
            if (passed("--shadow")) config["shadow_file"] = shadow_file;
            if (passed("--method")) config["method"] = method;
        } else if (sub == bench) {
            if (passed("--class")) config["class"] = cls;
            if (passed("--theta")) config["theta"] = theta;
            if (passed("--phi")) config["phi"] = phi;
            if (passed("--p")) config["p_noise"] = p_noise;
            if (passed("--trials")) config["trials"] = trials;
            if (passed("--epsilon")) config["epsilon"] = epsilon;
            if (passed("--samples-grid")) {
                json grid = json::array();
                for (const auto& tok : split_commas(samples_grid)) {
                    grid.push_back(std::stoull(tok));
                }
                config["samples_grid"] = grid;
            }
            if (passed("--method") && method != "all") {
                config["methods"] = json::array({method});
            }
            if (passed("--observables")) config["observables"] = split_commas(observables);
        } else if (sub == collect) {
            if (passed("--model")) config["model"] = model;
            if (passed("--class")) config["class"] = cls;
            if (passed("--theta")) config["theta"] = theta;
            if (passed("--phi")) config["phi"] = phi;
            if (passed("--p")) config["p_noise"] = p_noise;
            if (passed("--rounds")) config["rounds"] = rounds;
            if (passed("--method")) config["method"] = method;
            if (passed("--epsilon")) config["epsilon"] = epsilon;
            if (passed("--observables")) config["observables"] = split_commas(observables);
        } else if (sub == oracle) {
            config["class"] = cls;
            config["target"] = target;
            if (passed("--bisect-tol")) config["bisect_tol"] = bisect_tol;
            if (passed("--max-iters")) config["max_iters"] = max_iters;
        }
        return run(config);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}
