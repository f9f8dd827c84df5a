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

#include "entangle_lab.h"

#include <cstring>
#include <fstream>
#include <new>
#include <stdexcept>
#include <string>

#include "oracles/oracles.hpp"
#include "pauli/pauli.hpp"
#include "pipeline/pipeline.hpp"
#include "shadows/shadows.hpp"
#include "states/states.hpp"
#include "svm/svm.hpp"

using elab::pauli::PauliString;
using elab::qcore::DensityMatrix;
using elab::qcore::Rng;

struct el_state {
    DensityMatrix rho;
};

struct el_shadow {
    elab::shadows::ShadowSet set;
};

struct el_model {
    elab::svm::SvmModel model;
    std::vector<std::string> observable_texts;
};

namespace {

thread_local std::string g_last_error = "no error";

el_status fail(el_status code, const char* what) {
    g_last_error = what;
    return code;
}

// Runs fn, translating exceptions into status codes.
template <typename Fn>
el_status guarded(Fn&& fn) {
    try {
        return fn();
    } catch (const std::invalid_argument& e) {
        return fail(EL_ERR_INVALID_ARGUMENT, e.what());
    } catch (const nlohmann::json::exception& e) {
        return fail(EL_ERR_INVALID_ARGUMENT, e.what());
    } catch (const std::bad_alloc&) {
        return fail(EL_ERR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(EL_ERR_NUMERICAL, e.what());
    } catch (...) {
        return fail(EL_ERR_INTERNAL, "unknown error");
    }
}

el_status require(bool ok, const char* what) {
    return ok ? EL_OK : fail(EL_ERR_INVALID_ARGUMENT, what);
}

char* copy_string(const std::string& s) {
    char* out = new char[s.size() + 1];
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

std::vector<int> copy_indices(const int* data, size_t len) {
    return std::vector<int>(data, data + len);
}

}  // namespace

extern "C" {

const char* el_version(void) { return elab::pipeline::kToolVersion; }

const char* el_last_error(void) { return g_last_error.c_str(); }

el_status el_state_ghz(int n_qubits, el_state** out) {
    if (el_status s = require(out != nullptr && n_qubits >= 2, "el_state_ghz: bad arguments")) {
        return s;
    }
    return guarded([&] {
        *out = new el_state{DensityMatrix::from_pure(elab::states::ghz(
            static_cast<std::size_t>(n_qubits)))};
        return EL_OK;
    });
}

el_status el_state_ghz_coherent(int n_qubits, double theta, double phi, el_state** out) {
    if (el_status s =
            require(out != nullptr && n_qubits >= 2, "el_state_ghz_coherent: bad arguments")) {
        return s;
    }
    return guarded([&] {
        *out = new el_state{DensityMatrix::from_pure(
            elab::states::ghz_coherent(static_cast<std::size_t>(n_qubits), theta, phi))};
        return EL_OK;
    });
}

el_status el_state_w(int n_qubits, el_state** out) {
    if (el_status s = require(out != nullptr && n_qubits >= 2, "el_state_w: bad arguments")) {
        return s;
    }
    return guarded([&] {
        *out = new el_state{DensityMatrix::from_pure(
            elab::states::w_state(static_cast<std::size_t>(n_qubits)))};
        return EL_OK;
    });
}

el_status el_state_random(int n_qubits, uint64_t seed, el_state** out) {
    if (el_status s = require(out != nullptr && n_qubits >= 1, "el_state_random: bad arguments")) {
        return s;
    }
    return guarded([&] {
        Rng rng(seed);
        *out = new el_state{elab::states::random_dm(static_cast<std::size_t>(n_qubits), rng)};
        return EL_OK;
    });
}

el_status el_state_random_biseparable(int n_qubits, const int* part_a, size_t part_a_len,
                                      uint64_t seed, el_state** out) {
    if (el_status s = require(out != nullptr && part_a != nullptr && part_a_len > 0 &&
                                  n_qubits >= 2,
                              "el_state_random_biseparable: bad arguments")) {
        return s;
    }
    return guarded([&] {
        Rng rng(seed);
        const elab::states::Bipartition partition(static_cast<std::size_t>(n_qubits),
                                                  copy_indices(part_a, part_a_len));
        *out = new el_state{elab::states::random_biseparable(static_cast<std::size_t>(n_qubits),
                                                             partition, rng)};
        return EL_OK;
    });
}

el_status el_state_mix_white_noise(const el_state* rho, double p_noise, el_state** out) {
    if (el_status s =
            require(rho != nullptr && out != nullptr, "el_state_mix_white_noise: bad arguments")) {
        return s;
    }
    return guarded([&] {
        *out = new el_state{elab::states::mix_white_noise(rho->rho, p_noise)};
        return EL_OK;
    });
}

int el_state_num_qubits(const el_state* rho) {
    return rho == nullptr ? -1 : static_cast<int>(rho->rho.n_qubits());
}

void el_state_free(el_state* rho) { delete rho; }

el_status el_expectation(const el_state* rho, const char* pauli, double* out) {
    if (el_status s = require(rho != nullptr && pauli != nullptr && out != nullptr,
                              "el_expectation: bad arguments")) {
        return s;
    }
    return guarded([&] {
        *out = elab::pauli::expectation(rho->rho, PauliString(pauli));
        return EL_OK;
    });
}

el_status el_ppt_min_eigenvalue(const el_state* rho, const int* part_a, size_t part_a_len,
                                double* out) {
    if (el_status s = require(rho != nullptr && part_a != nullptr && part_a_len > 0 &&
                                  out != nullptr,
                              "el_ppt_min_eigenvalue: bad arguments")) {
        return s;
    }
    return guarded([&] {
        const elab::states::Bipartition partition(rho->rho.n_qubits(),
                                                  copy_indices(part_a, part_a_len));
        *out = elab::oracles::ppt_min_eigenvalue(rho->rho, partition);
        return EL_OK;
    });
}

el_status el_ppt_flags(const el_state* rho, int* npt_any, int* npt_all) {
    if (el_status s = require(rho != nullptr && npt_any != nullptr && npt_all != nullptr,
                              "el_ppt_flags: bad arguments")) {
        return s;
    }
    return guarded([&] {
        const elab::oracles::PptReport report = elab::oracles::ppt_report(rho->rho);
        *npt_any = report.npt_any ? 1 : 0;
        *npt_all = report.npt_all ? 1 : 0;
        return EL_OK;
    });
}

el_status el_witness_value(const el_state* rho, const char* target_class, double* out) {
    if (el_status s = require(rho != nullptr && target_class != nullptr && out != nullptr,
                              "el_witness_value: bad arguments")) {
        return s;
    }
    return guarded([&] {
        const std::string cls = target_class;
        const std::size_t n = rho->rho.n_qubits();
        elab::oracles::WitnessSpec spec{0.5, elab::states::ghz(2)};
        if (cls == "ghz" || cls == "bell") {
            spec = {elab::oracles::ghz_witness_alpha(), elab::states::ghz(n)};
        } else if (cls == "w") {
            spec = {elab::oracles::w_witness_alpha(n), elab::states::w_state(n)};
        } else {
            throw std::invalid_argument("el_witness_value: class must be ghz, w, or bell");
        }
        *out = elab::oracles::witness_value(rho->rho, spec);
        return EL_OK;
    });
}

el_status el_chsh_value(const el_state* rho, double* out) {
    if (el_status s = require(rho != nullptr && out != nullptr, "el_chsh_value: bad arguments")) {
        return s;
    }
    return guarded([&] {
        *out = elab::oracles::chsh_value(rho->rho);
        return EL_OK;
    });
}

el_status el_unfaithfulness_chi2(const el_state* rho, double* out) {
    if (el_status s =
            require(rho != nullptr && out != nullptr, "el_unfaithfulness_chi2: bad arguments")) {
        return s;
    }
    return guarded([&] {
        *out = elab::oracles::unfaithfulness_chi2(rho->rho);
        return EL_OK;
    });
}

el_status el_shadow_collect_randomized(const el_state* rho, size_t rounds, uint64_t seed,
                                       el_shadow** out) {
    if (el_status s = require(rho != nullptr && out != nullptr && rounds > 0,
                              "el_shadow_collect_randomized: bad arguments")) {
        return s;
    }
    return guarded([&] {
        Rng rng(seed);
        const auto plan = elab::shadows::sample_random_plan(rho->rho.n_qubits(), rounds, rng);
        *out = new el_shadow{elab::shadows::collect_shadow(rho->rho, plan, rng)};
        return EL_OK;
    });
}

el_status el_shadow_collect_derandomized(const el_state* rho, const char* const* observables,
                                         size_t n_observables, size_t rounds, double epsilon,
                                         uint64_t seed, el_shadow** out) {
    if (el_status s = require(rho != nullptr && out != nullptr && observables != nullptr &&
                                  n_observables > 0 && rounds > 0,
                              "el_shadow_collect_derandomized: bad arguments")) {
        return s;
    }
    return guarded([&] {
        std::vector<PauliString> obs;
        obs.reserve(n_observables);
        for (size_t i = 0; i < n_observables; ++i) {
            obs.emplace_back(observables[i]);
        }
        const auto plan = elab::shadows::derandomize_plan(obs, rounds, epsilon);
        Rng rng(seed);
        *out = new el_shadow{elab::shadows::collect_shadow(rho->rho, plan, rng)};
        return EL_OK;
    });
}

el_status el_shadow_estimate(const el_shadow* shadow, const char* pauli, double* out,
                             int* never_hit) {
    if (el_status s = require(shadow != nullptr && pauli != nullptr && out != nullptr,
                              "el_shadow_estimate: bad arguments")) {
        return s;
    }
    return guarded([&] {
        const auto est = elab::shadows::estimate_pauli(shadow->set, PauliString(pauli));
        *out = est.value;
        if (never_hit != nullptr) {
            *never_hit = est.never_hit ? 1 : 0;
        }
        return EL_OK;
    });
}

el_status el_shadow_save(const el_shadow* shadow, const char* path) {
    if (el_status s =
            require(shadow != nullptr && path != nullptr, "el_shadow_save: bad arguments")) {
        return s;
    }
    return guarded([&] {
        elab::pipeline::write_shadow_file(path, shadow->set);
        return EL_OK;
    });
}

el_status el_shadow_load(const char* path, int derandomized, el_shadow** out) {
    if (el_status s = require(path != nullptr && out != nullptr, "el_shadow_load: bad arguments")) {
        return s;
    }
    return guarded([&] {
        *out = new el_shadow{elab::pipeline::read_shadow_file(
            path, derandomized ? elab::shadows::Scheme::Derandomized
                               : elab::shadows::Scheme::Randomized)};
        return EL_OK;
    });
}

size_t el_shadow_num_snapshots(const el_shadow* shadow) {
    return shadow == nullptr ? 0 : shadow->set.snapshots.size();
}

void el_shadow_free(el_shadow* shadow) { delete shadow; }

el_status el_model_load(const char* path, el_model** out) {
    if (el_status s = require(path != nullptr && out != nullptr, "el_model_load: bad arguments")) {
        return s;
    }
    return guarded([&] {
        std::ifstream in(path, std::ios::binary);
        if (!in) {
            throw std::invalid_argument(std::string("cannot open: ") + path);
        }
        const std::string text((std::istreambuf_iterator<char>(in)),
                               std::istreambuf_iterator<char>());
        auto* handle = new el_model{elab::svm::model_from_json(text), {}};
        for (const auto& o : handle->model.observables) {
            handle->observable_texts.push_back(o.str());
        }
        *out = handle;
        return EL_OK;
    });
}

el_status el_model_save(const el_model* model, const char* path) {
    if (el_status s =
            require(model != nullptr && path != nullptr, "el_model_save: bad arguments")) {
        return s;
    }
    return guarded([&] {
        std::ofstream outf(path, std::ios::binary);
        if (!outf) {
            throw std::invalid_argument(std::string("cannot open for writing: ") + path);
        }
        outf << elab::svm::model_to_json(model->model) << "\n";
        return EL_OK;
    });
}

size_t el_model_num_features(const el_model* model) {
    return model == nullptr ? 0 : model->model.dim();
}

const char* el_model_observable(const el_model* model, size_t index) {
    if (model == nullptr || index >= model->observable_texts.size()) {
        return nullptr;
    }
    return model->observable_texts[index].c_str();
}

el_status el_model_decision_value(const el_model* model, const double* features,
                                  size_t n_features, double* out) {
    if (el_status s = require(model != nullptr && features != nullptr && out != nullptr,
                              "el_model_decision_value: bad arguments")) {
        return s;
    }
    return guarded([&] {
        *out = elab::svm::decision_value(model->model, {features, n_features});
        return EL_OK;
    });
}

void el_model_free(el_model* model) { delete model; }

el_status el_run_command(const char* config_json, char** result_json) {
    if (el_status s = require(config_json != nullptr, "el_run_command: config is NULL")) {
        return s;
    }
    return guarded([&]() -> el_status {
        const auto config = nlohmann::json::parse(config_json);
        const elab::pipeline::CommandResult r = elab::pipeline::run_command(config);
        if (result_json != nullptr) {
            nlohmann::json out;
            out["report"] = r.report;
            out["manifest"] = r.manifest_path;
            out["outputs"] = r.outputs;
            out["exit_code"] = r.exit_code;
            *result_json = copy_string(out.dump(2));
        }
        if (r.exit_code == 3) {
            return fail(EL_ERR_ACCURACY_FLOOR, "accuracy floor unmet; best model written anyway");
        }
        return EL_OK;
    });
}

el_status el_rerun_manifest(const char* manifest_path, char** result_json) {
    if (el_status s = require(manifest_path != nullptr, "el_rerun_manifest: path is NULL")) {
        return s;
    }
    return guarded([&]() -> el_status {
        const elab::pipeline::CommandResult r = elab::pipeline::rerun_manifest(manifest_path);
        if (result_json != nullptr) {
            nlohmann::json out;
            out["report"] = r.report;
            out["manifest"] = r.manifest_path;
            out["outputs"] = r.outputs;
            out["exit_code"] = r.exit_code;
            *result_json = copy_string(out.dump(2));
        }
        if (r.exit_code == 3) {
            return fail(EL_ERR_ACCURACY_FLOOR, "accuracy floor unmet; best model written anyway");
        }
        return EL_OK;
    });
}

void el_string_free(char* s) { delete[] s; }

}  // extern "C"
