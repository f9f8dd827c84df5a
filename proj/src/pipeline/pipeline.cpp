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

#include "pipeline/pipeline.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "oracles/oracles.hpp"
#include "pauli/pauli.hpp"
#include "pipeline/sha256.hpp"
#include "qcore/eig.hpp"
#include "svm/svm.hpp"

namespace elab::pipeline {

using nlohmann::json;
using pauli::PauliString;
using qcore::DensityMatrix;
using qcore::Ket;
using qcore::Rng;
using states::StateClass;

namespace {

constexpr double kPi = 3.14159265358979323846;

void write_text_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::invalid_argument("cannot open for writing: " + path);
    }
    out << contents;
    if (!out) {
        throw std::runtime_error("write failed: " + path);
    }
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::invalid_argument("cannot open: " + path);
    }
    return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

std::string output_stem(const std::string& path) {
    const std::size_t dot = path.rfind('.');
    const std::size_t slash = path.rfind('/');
    if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) {
        return path;
    }
    return path.substr(0, dot);
}

void require_range(const json& cfg, const char* key, double lo_min, double hi_max) {
    const auto& r = cfg.at(key);
    if (!r.is_array() || r.size() != 2 || !r[0].is_number() || !r[1].is_number()) {
        throw std::invalid_argument(std::string(key) + " must be a two-element numeric array");
    }
    const double lo = r[0].get<double>();
    const double hi = r[1].get<double>();
    if (lo > hi || lo < lo_min || hi > hi_max) {
        throw std::invalid_argument(std::string(key) + " out of order or out of bounds");
    }
}

struct KnownKeys {
    std::vector<std::string> keys;
    void check(const json& cfg, const std::string& command) const {
        for (const auto& [key, value] : cfg.items()) {
            (void)value;
            if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
                throw std::invalid_argument("unknown config key '" + key + "' for " + command);
            }
        }
    }
};

std::vector<std::string> default_class_tokens(std::size_t n) {
    if (n == 2) {
        return {"bell", "sep:0"};
    }
    if (n == 3) {
        return {"ghz", "w", "sep:0", "sep:01"};
    }
    return {"ghz", "w", "sep:0", "sep:01"};
}

// Builds one state from a CLI-style spec: class token plus noise parameters
// (entangled families) or a seed (sampled families).
DensityMatrix state_from_spec(const std::string& token, std::size_t n, double theta, double phi,
                              double p_noise, std::uint64_t seed) {
    const ClassToken parsed = parse_class_token(token, n);
    Rng rng(qcore::derive_seed(seed, 0x57A7E));
    switch (parsed.cls) {
        case StateClass::GhzNoisy:
            return states::mix_white_noise(states::ghz_coherent(n, theta, phi), p_noise);
        case StateClass::WNoisy:
            return states::mix_white_noise(states::w_state(n), p_noise);
        case StateClass::BellNoisy:
            if (n != 2) {
                throw std::invalid_argument("bell spec requires n = 2");
            }
            return states::mix_white_noise(states::ghz(2), p_noise);
        case StateClass::Separable:
            return states::random_biseparable(n, *parsed.partition, rng);
        case StateClass::Random:
            return states::random_dm(n, rng);
    }
    throw std::logic_error("state_from_spec: unreachable");
}

json dataset_record_to_json(const states::StateRecord& rec) {
    json line;
    line["class"] = states::state_class_name(rec.cls);
    line["label"] = rec.label;
    line["seed"] = rec.seed;
    line["theta"] = rec.noise.theta;
    line["phi"] = rec.noise.phi;
    line["p_noise"] = rec.noise.p_noise;
    if (rec.partition) {
        line["partition"] = rec.partition->part_a();
    } else {
        line["partition"] = nullptr;
    }
    line["features"] = rec.features;
    return line;
}

states::StateRecord dataset_record_from_json(const json& line, std::size_t n_qubits) {
    states::StateRecord rec;
    rec.cls = states::state_class_from_name(line.at("class").get<std::string>());
    rec.label = line.at("label").get<int>();
    rec.seed = line.at("seed").get<std::uint64_t>();
    rec.noise.theta = line.at("theta").get<double>();
    rec.noise.phi = line.at("phi").get<double>();
    rec.noise.p_noise = line.at("p_noise").get<double>();
    if (!line.at("partition").is_null()) {
        rec.partition = states::Bipartition(n_qubits, line.at("partition").get<std::vector<int>>());
    }
    rec.features = line.at("features").get<std::vector<double>>();
    return rec;
}

// ---- command implementations ------------------------------------------------

CommandResult cmd_gen_dataset(const json& cfg) {
    const std::size_t n = cfg.at("n").get<std::size_t>();
    const std::size_t k = cfg.at("k").get<std::size_t>();
    const std::size_t per_class = cfg.at("per_class").get<std::size_t>();

    states::DatasetSpec spec;
    spec.n_qubits = n;
    spec.seed = cfg.at("seed").get<std::uint64_t>();
    auto range = [&cfg](const char* key) {
        const auto& r = cfg.at(key);
        return std::pair<double, double>{r[0].get<double>(), r[1].get<double>()};
    };
    const auto [theta_lo, theta_hi] = range("theta_range");
    const auto [phi_lo, phi_hi] = range("phi_range");
    const auto [p_lo, p_hi] = range("p_range");
    const auto [wp_lo, wp_hi] = range("w_p_range");
    const auto [bp_lo, bp_hi] = range("bell_p_range");

    for (const auto& token : cfg.at("classes").get<std::vector<std::string>>()) {
        const ClassToken parsed = parse_class_token(token, n);
        states::ClassSpec cs;
        cs.cls = parsed.cls;
        cs.count = per_class;
        cs.partition = parsed.partition;
        switch (parsed.cls) {
            case StateClass::GhzNoisy:
                cs.noise = states::NoiseRanges{theta_lo, theta_hi, phi_lo, phi_hi, p_lo, p_hi};
                break;
            case StateClass::WNoisy:
                cs.noise = states::NoiseRanges{0, 0, 0, 0, wp_lo, wp_hi};
                break;
            case StateClass::BellNoisy:
                cs.noise = states::NoiseRanges{0, 0, 0, 0, bp_lo, bp_hi};
                break;
            default:
                break;
        }
        spec.classes.push_back(std::move(cs));
    }

    std::vector<states::GeneratedState> generated = states::make_dataset(spec);
    const std::vector<PauliString> observables = pauli::enumerate_k_local(n, k);
    for (auto& g : generated) {
        g.record.features = pauli::feature_vector(g.rho, observables).values;
    }

    const std::string out = cfg.at("out").get<std::string>();
    write_dataset(out, generated);

    CommandResult result;
    result.outputs = {out};
    result.report["records"] = generated.size();
    result.report["feature_count"] = observables.size();
    int entangled = 0;
    for (const auto& g : generated) {
        entangled += (g.record.label == -1);
    }
    result.report["entangled_records"] = entangled;
    result.report["separable_records"] = static_cast<int>(generated.size()) - entangled;
    return result;
}

CommandResult cmd_train(const json& cfg) {
    const std::size_t n = cfg.at("n").get<std::size_t>();
    const std::size_t k = cfg.at("k").get<std::size_t>();
    const std::vector<PauliString> observables = pauli::enumerate_k_local(n, k);

    const std::vector<states::StateRecord> records =
        read_dataset(cfg.at("dataset").get<std::string>(), n);
    if (records.empty()) {
        throw std::invalid_argument("train: dataset is empty");
    }
    for (const auto& rec : records) {
        if (rec.features.size() != observables.size()) {
            throw std::invalid_argument(
                "train: dataset feature length does not match the (n, k) observable list");
        }
    }

    // Seeded shuffle, then an 80/20-style split.
    const double test_fraction = cfg.at("test_fraction").get<double>();
    if (test_fraction < 0.0 || test_fraction >= 1.0) {
        throw std::invalid_argument("train: test_fraction must lie in [0, 1)");
    }
    std::vector<std::size_t> index(records.size());
    std::iota(index.begin(), index.end(), std::size_t{0});
    Rng shuffle_rng(qcore::derive_seed(cfg.at("seed").get<std::uint64_t>(), 0x5B117));
    for (std::size_t i = index.size(); i > 1; --i) {
        std::swap(index[i - 1], index[shuffle_rng.below(i)]);
    }
    const std::size_t n_test = static_cast<std::size_t>(
        std::llround(test_fraction * static_cast<double>(records.size())));

    svm::LabeledSet train_set(observables.size());
    svm::LabeledSet test_set(observables.size());
    for (std::size_t i = 0; i < index.size(); ++i) {
        const auto& rec = records[index[i]];
        (i < n_test ? test_set : train_set).add(rec.features, rec.label);
    }

    svm::TrainConfig tc;
    tc.gamma = cfg.at("gamma").get<double>();
    tc.c_penalty = cfg.at("c").get<double>();
    tc.tolerance = cfg.at("tolerance").get<double>();
    tc.max_passes = cfg.at("max_passes").get<std::size_t>();
    tc.accuracy_floor = cfg.at("accuracy_floor").get<double>();
    tc.min_features = cfg.at("min_features").get<std::size_t>();
    tc.seed = cfg.at("seed").get<std::uint64_t>();

    const svm::EliminationResult elim = svm::eliminate_features(train_set, observables, tc);

    const std::string out = cfg.at("out").get<std::string>();
    const std::string metrics_path = output_stem(out) + ".metrics.json";
    write_text_file(out, svm::model_to_json(elim.model) + "\n");

    // Project the held-out rows onto the surviving feature columns.
    std::vector<std::size_t> surviving_columns;
    for (const auto& obs : elim.model.observables) {
        const auto it = std::find(observables.begin(), observables.end(), obs);
        surviving_columns.push_back(static_cast<std::size_t>(it - observables.begin()));
    }
    svm::LabeledSet projected_test(surviving_columns.size());
    for (std::size_t i = 0; i < test_set.size(); ++i) {
        std::vector<double> row;
        row.reserve(surviving_columns.size());
        for (std::size_t col : surviving_columns) {
            row.push_back(test_set.row(i)[col]);
        }
        projected_test.add(row, test_set.label(i));
    }

    json metrics;
    metrics["train_accuracy"] = elim.training_accuracy;
    if (test_set.size() > 0) {
        metrics["test_accuracy"] = svm::accuracy(elim.model, projected_test);
    } else {
        metrics["test_accuracy"] = nullptr;
    }
    metrics["floor_met"] = elim.floor_met;
    metrics["converged"] = elim.converged;
    metrics["retrains"] = elim.retrains;
    metrics["initial_features"] = observables.size();
    metrics["n_train"] = train_set.size();
    metrics["n_test"] = test_set.size();
    std::vector<std::string> survivors;
    for (const auto& o : elim.model.observables) {
        survivors.push_back(o.str());
    }
    metrics["survivors"] = survivors;
    std::vector<std::string> orbit;
    for (const auto& o : svm::observable_orbit(elim.model.observables)) {
        orbit.push_back(o.str());
    }
    metrics["orbit"] = orbit;
    write_text_file(metrics_path, metrics.dump(2) + "\n");

    CommandResult result;
    result.outputs = {out, metrics_path};
    result.report = metrics;
    result.exit_code = elim.floor_met ? 0 : 3;
    return result;
}

CommandResult cmd_predict(const json& cfg) {
    const svm::SvmModel model =
        svm::model_from_json(read_text_file(cfg.at("model").get<std::string>()));
    if (model.observables.empty()) {
        throw std::invalid_argument("predict: model carries no observable list");
    }
    const std::size_t n = model.n_qubits;
    const std::vector<PauliString> orbit = svm::observable_orbit(model.observables);

    const bool has_class = cfg.contains("class") && !cfg.at("class").is_null();
    const bool has_features = cfg.contains("features_file") && !cfg.at("features_file").is_null();
    const bool has_shadow = cfg.contains("shadow_file") && !cfg.at("shadow_file").is_null();
    if (static_cast<int>(has_class) + static_cast<int>(has_features) +
            static_cast<int>(has_shadow) != 1) {
        throw std::invalid_argument(
            "predict: give exactly one of class, features_file, shadow_file");
    }

    std::map<std::string, double> features;
    json report;
    std::vector<std::string> never_hit;

    if (has_class) {
        const DensityMatrix rho = state_from_spec(
            cfg.at("class").get<std::string>(), n, cfg.at("theta").get<double>(),
            cfg.at("phi").get<double>(), cfg.at("p_noise").get<double>(),
            cfg.at("seed").get<std::uint64_t>());
        for (const auto& p : orbit) {
            features[p.str()] = pauli::expectation(rho, p);
        }
        const oracles::PptReport ppt = oracles::ppt_report(rho);
        double min_ev = 0.0;
        for (const auto& pe : ppt.per_partition) {
            min_ev = std::min(min_ev, pe.min_eigenvalue);
        }
        report["ppt"] = {{"npt_any", ppt.npt_any},
                         {"npt_all", ppt.npt_all},
                         {"min_eigenvalue", min_ev}};
    } else if (has_features) {
        const json loaded = json::parse(read_text_file(cfg.at("features_file").get<std::string>()));
        for (const auto& [key, value] : loaded.items()) {
            features[key] = value.get<double>();
        }
    } else {
        const auto scheme = cfg.at("method").get<std::string>() == "derandomized"
                                ? shadows::Scheme::Derandomized
                                : shadows::Scheme::Randomized;
        const shadows::ShadowSet shadow =
            read_shadow_file(cfg.at("shadow_file").get<std::string>(), scheme);
        if (shadow.n_qubits != n) {
            throw std::invalid_argument("predict: shadow register size does not match the model");
        }
        json hit_counts;
        for (const auto& p : orbit) {
            const shadows::PauliEstimate est = shadows::estimate_pauli(shadow, p);
            features[p.str()] = est.value;
            if (est.never_hit) {
                never_hit.push_back(p.str());
            }
            std::size_t hits = 0;
            for (const auto& snap : shadow.snapshots) {
                bool hit = true;
                for (int q : p.support()) {
                    const auto uq = static_cast<std::size_t>(q);
                    const char want = "IXYZ"[p.letter(uq)];
                    hit = hit && (snap.bases[uq] == want);
                }
                hits += hit;
            }
            hit_counts[p.str()] = hits;
        }
        report["snapshots"] = shadow.snapshots.size();
        report["hit_counts"] = hit_counts;
    }

    const svm::PermutationPrediction pred = svm::permutation_predict(model, features);
    report["decision_values"] = pred.values;
    report["permutation_labels"] = pred.labels;
    report["permutations"] = pred.permutations;
    report["verdict"] = pred.aggregate == -1 ? "ENTANGLED" : "SEPARABLE";
    report["features"] = features;
    if (!never_hit.empty()) {
        report["never_hit"] = never_hit;
    }

    const std::string out = cfg.at("out").get<std::string>();
    write_text_file(out, report.dump(2) + "\n");

    CommandResult result;
    result.outputs = {out};
    result.report = report;
    return result;
}

CommandResult cmd_collect_shadow(const json& cfg) {
    const std::size_t n = cfg.at("n").get<std::size_t>();
    const DensityMatrix rho = state_from_spec(
        cfg.at("class").get<std::string>(), n, cfg.at("theta").get<double>(),
        cfg.at("phi").get<double>(), cfg.at("p_noise").get<double>(),
        cfg.at("seed").get<std::uint64_t>());
    const std::size_t rounds = cfg.at("rounds").get<std::size_t>();
    const std::string method = cfg.at("method").get<std::string>();

    Rng rng(qcore::derive_seed(cfg.at("seed").get<std::uint64_t>(), 0xC011EC7));
    shadows::MeasurementPlan plan;
    if (method == "derandomized") {
        std::vector<PauliString> obs;
        for (const auto& s : cfg.at("observables").get<std::vector<std::string>>()) {
            obs.emplace_back(s);
        }
        plan = shadows::derandomize_plan(obs, rounds, cfg.at("epsilon").get<double>());
    } else {
        plan = shadows::sample_random_plan(n, rounds, rng);
    }
    const shadows::ShadowSet shadow = shadows::collect_shadow(rho, plan, rng);

    const std::string out = cfg.at("out").get<std::string>();
    write_shadow_file(out, shadow);

    CommandResult result;
    result.outputs = {out};
    result.report["snapshots"] = shadow.snapshots.size();
    result.report["method"] = method;
    return result;
}

CommandResult cmd_shadow_bench(const json& cfg) {
    const std::size_t n = cfg.at("n").get<std::size_t>();
    const DensityMatrix rho = state_from_spec(
        cfg.at("class").get<std::string>(), n, cfg.at("theta").get<double>(),
        cfg.at("phi").get<double>(), cfg.at("p_noise").get<double>(),
        cfg.at("seed").get<std::uint64_t>());

    std::vector<PauliString> obs;
    for (const auto& s : cfg.at("observables").get<std::vector<std::string>>()) {
        obs.emplace_back(s);
    }
    std::vector<double> truths;
    truths.reserve(obs.size());
    for (const auto& p : obs) {
        truths.push_back(pauli::expectation(rho, p));
    }

    const std::vector<std::size_t> grid = cfg.at("samples_grid").get<std::vector<std::size_t>>();
    const std::vector<std::string> methods = cfg.at("methods").get<std::vector<std::string>>();
    const std::size_t trials = cfg.at("trials").get<std::size_t>();
    const double epsilon = cfg.at("epsilon").get<double>();
    const std::uint64_t seed = cfg.at("seed").get<std::uint64_t>();

    std::string csv = "method,n_samples,avg_error,variance,status\n";
    json rows = json::array();

    for (std::size_t mi = 0; mi < methods.size(); ++mi) {
        const std::string& method = methods[mi];
        for (std::size_t count : grid) {
            json row;
            row["method"] = method;
            row["n_samples"] = count;
            if (method == "independent" && count < obs.size()) {
                csv += method + "," + std::to_string(count) + ",,,unsupported\n";
                row["status"] = "unsupported";
                rows.push_back(row);
                continue;
            }

            shadows::MeasurementPlan plan;  // derandomized plan is per-count
            if (method == "derandomized") {
                plan = shadows::derandomize_plan(obs, count, epsilon);
            }

            std::vector<double> errors;
            errors.reserve(trials);
            for (std::size_t t = 0; t < trials; ++t) {
                Rng rng(qcore::derive_seed(qcore::derive_seed(qcore::derive_seed(seed, mi), count),
                                           t));
                std::vector<double> estimates;
                if (method == "independent") {
                    estimates = shadows::independent_estimate(rho, obs, count, rng);
                } else {
                    if (method == "randomized") {
                        plan = shadows::sample_random_plan(n, count, rng);
                    }
                    const shadows::ShadowSet shadow = shadows::collect_shadow(rho, plan, rng);
                    estimates.reserve(obs.size());
                    for (const auto& p : obs) {
                        estimates.push_back(shadows::estimate_pauli(shadow, p).value);
                    }
                }
                errors.push_back(shadows::avg_squared_error(estimates, truths).mean);
            }

            double mean = 0.0;
            for (double e : errors) {
                mean += e;
            }
            mean /= static_cast<double>(errors.size());
            double var = 0.0;
            for (double e : errors) {
                var += (e - mean) * (e - mean);
            }
            var = errors.size() > 1 ? var / static_cast<double>(errors.size() - 1) : 0.0;

            csv += method + "," + std::to_string(count) + "," + format_double(mean) + "," +
                   format_double(var) + ",ok\n";
            row["avg_error"] = mean;
            row["variance"] = var;
            row["status"] = "ok";
            rows.push_back(row);
        }
    }

    const std::string out = cfg.at("out").get<std::string>();
    write_text_file(out, csv);

    CommandResult result;
    result.outputs = {out};
    result.report["rows"] = rows;
    result.report["truths"] = truths;
    return result;
}

CommandResult cmd_oracle_check(const json& cfg) {
    const std::string cls = cfg.at("class").get<std::string>();
    const std::string target = cfg.at("target").get<std::string>();
    const double tol = cfg.at("bisect_tol").get<double>();
    const std::size_t max_iters = cfg.at("max_iters").get<std::size_t>();

    Ket target_state = states::ghz(2);
    double alpha = 0.5;
    if (cls == "GHZ3") {
        target_state = states::ghz(3);
        alpha = oracles::ghz_witness_alpha();
    } else if (cls == "W3") {
        target_state = states::w_state(3);
        alpha = oracles::w_witness_alpha(3);
    } else if (cls == "W4") {
        target_state = states::w_state(4);
        alpha = oracles::w_witness_alpha(4);
    } else if (cls == "BELL") {
        target_state = states::ghz(2);
        alpha = oracles::ghz_witness_alpha();
    } else {
        throw std::invalid_argument("oracle-check: class must be GHZ3, W3, W4, or BELL");
    }
    if (target == "chsh" && cls != "BELL") {
        throw std::invalid_argument("oracle-check: chsh target requires class BELL");
    }

    // Detector value as a function of white noise; negative means detected.
    Ket chsh_state = target_state;
    if (target == "chsh") {
        double best = -1.0;
        for (const auto& bell : oracles::bell_states()) {
            const double v = oracles::chsh_value(DensityMatrix::from_pure(bell));
            if (v > best) {
                best = v;
                chsh_state = bell;
            }
        }
    }
    auto detector = [&](double p) {
        if (target == "witness") {
            const DensityMatrix rho = states::mix_white_noise(target_state, p);
            return oracles::witness_value(rho, oracles::WitnessSpec{alpha, target_state});
        }
        if (target == "ppt") {
            const DensityMatrix rho = states::mix_white_noise(target_state, p);
            double worst = -1.0;  // max over cuts; >= 0 once some cut turns PPT
            for (const auto& pe : oracles::ppt_report(rho).per_partition) {
                worst = std::max(worst, pe.min_eigenvalue);
            }
            return worst;
        }
        if (target == "chsh") {
            return 2.0 - oracles::chsh_value(states::mix_white_noise(chsh_state, p));
        }
        throw std::invalid_argument("oracle-check: target must be witness, ppt, or chsh");
    };

    json report;
    report["class"] = cls;
    report["target"] = target;
    const double at_zero = detector(0.0);
    const double at_one = detector(1.0);
    report["detector_at_zero"] = at_zero;
    report["detector_at_one"] = at_one;

    if (at_zero < 0.0 && at_one >= 0.0) {
        double lo = 0.0;
        double hi = 1.0;
        std::size_t iters = 0;
        while (hi - lo > tol && iters < max_iters) {
            const double mid = 0.5 * (lo + hi);
            (detector(mid) < 0.0 ? lo : hi) = mid;
            ++iters;
        }
        report["threshold"] = 0.5 * (lo + hi);
        report["iterations"] = iters;
    } else {
        report["threshold"] = nullptr;
    }
    const std::string out = cfg.at("out").get<std::string>();
    write_text_file(out, report.dump(2) + "\n");

    CommandResult result;
    result.outputs = {out};
    result.report = report;
    return result;
}

}  // namespace

std::string format_double(double value) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    if (ec != std::errc{}) {
        throw std::runtime_error("format_double: conversion failed");
    }
    return std::string(buf, ptr);
}

ClassToken parse_class_token(const std::string& token, std::size_t n_qubits) {
    if (token == "ghz") {
        return {StateClass::GhzNoisy, std::nullopt};
    }
    if (token == "w") {
        return {StateClass::WNoisy, std::nullopt};
    }
    if (token == "bell") {
        return {StateClass::BellNoisy, std::nullopt};
    }
    if (token == "random") {
        return {StateClass::Random, std::nullopt};
    }
    if (token.rfind("sep:", 0) == 0) {
        std::vector<int> part_a;
        for (char c : token.substr(4)) {
            if (c == '|') {
                break;  // complement side is implied
            }
            if (c < '0' || c > '9') {
                throw std::invalid_argument("class token '" + token + "': bad qubit digit");
            }
            part_a.push_back(c - '0');
        }
        return {StateClass::Separable, states::Bipartition(n_qubits, part_a)};
    }
    throw std::invalid_argument("unknown class token '" + token +
                                "' (expected ghz, w, bell, random, or sep:<digits>)");
}

std::vector<std::string> default_benchmark_observables() {
    std::vector<PauliString> selected = {PauliString("XIIX"), PauliString("YIIZ"),
                                         PauliString("IIZZ"), PauliString("ZXII")};
    std::vector<std::string> out;
    for (const auto& p : svm::observable_orbit(selected)) {
        out.push_back(p.str());
    }
    return out;
}

void write_dataset(const std::string& path,
                   const std::vector<states::GeneratedState>& generated) {
    std::string contents;
    for (const auto& g : generated) {
        contents += dataset_record_to_json(g.record).dump();
        contents += '\n';
    }
    write_text_file(path, contents);
}

std::vector<states::StateRecord> read_dataset(const std::string& path, std::size_t n_qubits) {
    std::istringstream in(read_text_file(path));
    std::vector<states::StateRecord> records;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        records.push_back(dataset_record_from_json(json::parse(line), n_qubits));
    }
    return records;
}

void write_shadow_file(const std::string& path, const shadows::ShadowSet& shadow) {
    std::string contents;
    for (const auto& snap : shadow.snapshots) {
        contents += snap.bases;
        contents += ' ';
        contents += snap.bits;
        contents += '\n';
    }
    write_text_file(path, contents);
}

shadows::ShadowSet read_shadow_file(const std::string& path, shadows::Scheme scheme) {
    std::istringstream in(read_text_file(path));
    shadows::ShadowSet shadow;
    shadow.scheme = scheme;
    std::string bases;
    std::string bits;
    while (in >> bases >> bits) {
        if (bases.size() != bits.size()) {
            throw std::invalid_argument("shadow file: bases/bits length mismatch in " + path);
        }
        for (char c : bases) {
            if (c != 'X' && c != 'Y' && c != 'Z') {
                throw std::invalid_argument("shadow file: invalid basis letter in " + path);
            }
        }
        for (char c : bits) {
            if (c != '0' && c != '1') {
                throw std::invalid_argument("shadow file: invalid bit in " + path);
            }
        }
        if (shadow.snapshots.empty()) {
            shadow.n_qubits = bases.size();
        } else if (bases.size() != shadow.n_qubits) {
            throw std::invalid_argument("shadow file: inconsistent register size in " + path);
        }
        shadow.snapshots.push_back(shadows::Snapshot{bases, bits});
    }
    if (shadow.snapshots.empty()) {
        throw std::invalid_argument("shadow file: no snapshots in " + path);
    }
    return shadow;
}

json resolve_config(json cfg) {
    if (!cfg.is_object() || !cfg.contains("command")) {
        throw std::invalid_argument("config must be an object with a 'command' key");
    }
    const std::string command = cfg.at("command").get<std::string>();

    auto set_default = [&cfg](const char* key, const json& value) {
        if (!cfg.contains(key) || cfg.at(key).is_null()) {
            cfg[key] = value;
        }
    };
    set_default("seed", 1);
    if (!cfg.contains("out")) {
        throw std::invalid_argument("config requires an 'out' path");
    }

    if (command == "gen-dataset") {
        set_default("n", 4);
        set_default("k", 2);
        set_default("per_class", 100);
        set_default("classes", default_class_tokens(cfg.at("n").get<std::size_t>()));
        set_default("theta_range", json::array({0.0, kPi / 3.0}));
        set_default("phi_range", json::array({0.0, 0.6 * kPi}));
        set_default("p_range", json::array({0.0, 0.1}));
        set_default("w_p_range", json::array({0.0, 0.5}));
        set_default("bell_p_range", json::array({0.0, 1.0 / 3.0}));
        KnownKeys{{"command", "out", "seed", "n", "k", "per_class", "classes", "theta_range",
                   "phi_range", "p_range", "w_p_range", "bell_p_range"}}
            .check(cfg, command);
        const std::size_t n = cfg.at("n").get<std::size_t>();
        if (n < 2 || n > 6) {
            throw std::invalid_argument("gen-dataset: n must lie in [2, 6]");
        }
        const std::size_t k = cfg.at("k").get<std::size_t>();
        if (k < 1 || k > n) {
            throw std::invalid_argument("gen-dataset: k must lie in [1, n]");
        }
        if (cfg.at("per_class").get<std::size_t>() < 1) {
            throw std::invalid_argument("gen-dataset: per_class must be >= 1");
        }
        require_range(cfg, "theta_range", -10.0, 10.0);
        require_range(cfg, "phi_range", -10.0, 10.0);
        require_range(cfg, "p_range", 0.0, 1.0);
        require_range(cfg, "w_p_range", 0.0, 1.0);
        require_range(cfg, "bell_p_range", 0.0, 1.0);
        for (const auto& token : cfg.at("classes").get<std::vector<std::string>>()) {
            parse_class_token(token, n);
        }
    } else if (command == "train") {
        if (!cfg.contains("dataset")) {
            throw std::invalid_argument("train: config requires 'dataset'");
        }
        set_default("n", 4);
        set_default("k", 2);
        set_default("gamma", 0.0);
        set_default("c", 1.0);
        set_default("tolerance", 1e-3);
        set_default("max_passes", 10000);
        set_default("accuracy_floor", 0.99);
        set_default("min_features", 4);
        set_default("test_fraction", 0.2);
        KnownKeys{{"command", "out", "seed", "dataset", "n", "k", "gamma", "c", "tolerance",
                   "max_passes", "accuracy_floor", "min_features", "test_fraction"}}
            .check(cfg, command);
    } else if (command == "predict") {
        if (!cfg.contains("model")) {
            throw std::invalid_argument("predict: config requires 'model'");
        }
        set_default("theta", kPi / 4.0);
        set_default("phi", 0.0);
        set_default("p_noise", 0.0);
        set_default("method", "randomized");
        KnownKeys{{"command", "out", "seed", "model", "class", "theta", "phi", "p_noise",
                   "features_file", "shadow_file", "method"}}
            .check(cfg, command);
    } else if (command == "shadow-bench") {
        set_default("n", 4);
        set_default("class", "ghz");
        set_default("theta", kPi / 4.0);
        set_default("phi", 0.0);
        set_default("p_noise", 0.05);
        set_default("samples_grid", json::array({100, 400, 1600, 6400}));
        set_default("trials", 20);
        set_default("methods", json::array({"independent", "randomized", "derandomized"}));
        set_default("epsilon", 0.95);
        if (!cfg.contains("observables")) {
            if (cfg.at("n").get<std::size_t>() == 4) {
                cfg["observables"] = default_benchmark_observables();
            } else {
                std::vector<std::string> obs;
                for (const auto& p :
                     pauli::enumerate_k_local(cfg.at("n").get<std::size_t>(), 2)) {
                    obs.push_back(p.str());
                }
                cfg["observables"] = obs;
            }
        }
        KnownKeys{{"command", "out", "seed", "n", "class", "theta", "phi", "p_noise",
                   "samples_grid", "trials", "methods", "epsilon", "observables"}}
            .check(cfg, command);
        if (cfg.at("trials").get<std::size_t>() < 1) {
            throw std::invalid_argument("shadow-bench: trials must be >= 1");
        }
        for (const auto& m : cfg.at("methods").get<std::vector<std::string>>()) {
            if (m != "independent" && m != "randomized" && m != "derandomized") {
                throw std::invalid_argument("shadow-bench: unknown method '" + m + "'");
            }
        }
    } else if (command == "collect-shadow") {
        set_default("n", 4);
        set_default("class", "ghz");
        set_default("theta", kPi / 4.0);
        set_default("phi", 0.0);
        set_default("p_noise", 0.05);
        set_default("rounds", 1000);
        set_default("method", "randomized");
        set_default("epsilon", 0.95);
        if (!cfg.contains("observables")) {
            if (cfg.contains("model")) {
                // Target the trained witness: measure the orbit of its
                // surviving observables.
                const svm::SvmModel model =
                    svm::model_from_json(read_text_file(cfg.at("model").get<std::string>()));
                std::vector<std::string> obs;
                for (const auto& p : svm::observable_orbit(model.observables)) {
                    obs.push_back(p.str());
                }
                cfg["observables"] = obs;
                cfg["n"] = model.n_qubits;
            } else {
                cfg["observables"] = cfg.at("n").get<std::size_t>() == 4
                                         ? default_benchmark_observables()
                                         : std::vector<std::string>{};
            }
        }
        cfg.erase("model");
        KnownKeys{{"command", "out", "seed", "n", "class", "theta", "phi", "p_noise", "rounds",
                   "method", "epsilon", "observables"}}
            .check(cfg, command);
        const std::string method = cfg.at("method").get<std::string>();
        if (method != "randomized" && method != "derandomized") {
            throw std::invalid_argument("collect-shadow: method must be randomized or derandomized");
        }
    } else if (command == "oracle-check") {
        if (!cfg.contains("class") || !cfg.contains("target")) {
            throw std::invalid_argument("oracle-check: config requires 'class' and 'target'");
        }
        set_default("bisect_tol", 1e-6);
        set_default("max_iters", 60);
        KnownKeys{{"command", "out", "seed", "class", "target", "bisect_tol", "max_iters"}}
            .check(cfg, command);
    } else {
        throw std::invalid_argument("unknown command '" + command + "'");
    }
    return cfg;
}

CommandResult run_command(const json& config) {
    const json cfg = resolve_config(config);
    const std::string command = cfg.at("command").get<std::string>();

    const auto t0 = std::chrono::steady_clock::now();
    CommandResult result;
    if (command == "gen-dataset") {
        result = cmd_gen_dataset(cfg);
    } else if (command == "train") {
        result = cmd_train(cfg);
    } else if (command == "predict") {
        result = cmd_predict(cfg);
    } else if (command == "shadow-bench") {
        result = cmd_shadow_bench(cfg);
    } else if (command == "collect-shadow") {
        result = cmd_collect_shadow(cfg);
    } else if (command == "oracle-check") {
        result = cmd_oracle_check(cfg);
    }
    const double duration =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    json manifest;
    manifest["command"] = command;
    manifest["config"] = cfg;
    manifest["seed"] = cfg.at("seed");
    manifest["tool_version"] = kToolVersion;
    manifest["duration_seconds"] = duration;
    json digests;
    for (const auto& path : result.outputs) {
        digests[path] = sha256_file(path);
    }
    manifest["outputs"] = digests;

    result.manifest_path = cfg.at("out").get<std::string>() + ".manifest.json";
    write_text_file(result.manifest_path, manifest.dump(2) + "\n");
    return result;
}

CommandResult rerun_manifest(const std::string& manifest_path) {
    const json manifest = json::parse(read_text_file(manifest_path));
    if (!manifest.contains("config")) {
        throw std::invalid_argument("manifest lacks a 'config' object: " + manifest_path);
    }
    return run_command(manifest.at("config"));
}

}  // namespace elab::pipeline
