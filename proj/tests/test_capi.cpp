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

// Exercises the shared-library surface: opaque handles, error codes, and the
// JSON command entry point.

#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>

#include "doctest.h"
#include "entangle_lab.h"
#include "json.hpp"
#include "svm/svm.hpp"

namespace {

namespace fs = std::filesystem;

fs::path capi_scratch() {
    static const fs::path dir = [] {
        fs::path d = fs::current_path() / "capi_scratch";
        fs::remove_all(d);
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

struct StateHandle {
    el_state* ptr = nullptr;
    ~StateHandle() { el_state_free(ptr); }
};

}  // namespace

TEST_CASE("version and error reporting") {
    CHECK(std::string(el_version()) == "0.1.0");

    el_state* state = nullptr;
    CHECK(el_state_ghz(1, &state) == EL_ERR_INVALID_ARGUMENT);
    CHECK(std::strlen(el_last_error()) > 0);
    CHECK(el_state_ghz(3, nullptr) == EL_ERR_INVALID_ARGUMENT);
}

TEST_CASE("state handles and oracles") {
    StateHandle ghz3;
    REQUIRE(el_state_ghz(3, &ghz3.ptr) == EL_OK);
    CHECK(el_state_num_qubits(ghz3.ptr) == 3);

    double value = 0.0;
    CHECK(el_expectation(ghz3.ptr, "XXX", &value) == EL_OK);
    CHECK(value == doctest::Approx(1.0));
    CHECK(el_expectation(ghz3.ptr, "XX", &value) == EL_ERR_INVALID_ARGUMENT);
    CHECK(el_expectation(ghz3.ptr, "ABC", &value) == EL_ERR_INVALID_ARGUMENT);

    int npt_any = 0, npt_all = 0;
    CHECK(el_ppt_flags(ghz3.ptr, &npt_any, &npt_all) == EL_OK);
    CHECK(npt_any == 1);
    CHECK(npt_all == 1);

    const int part_a[1] = {0};
    CHECK(el_ppt_min_eigenvalue(ghz3.ptr, part_a, 1, &value) == EL_OK);
    CHECK(value == doctest::Approx(-0.5).epsilon(1e-8));

    CHECK(el_witness_value(ghz3.ptr, "ghz", &value) == EL_OK);
    CHECK(value == doctest::Approx(-0.5).epsilon(1e-10));
    CHECK(el_witness_value(ghz3.ptr, "nonsense", &value) == EL_ERR_INVALID_ARGUMENT);

    StateHandle noisy;
    REQUIRE(el_state_mix_white_noise(ghz3.ptr, 0.85, &noisy.ptr) == EL_OK);
    CHECK(el_ppt_flags(noisy.ptr, &npt_any, &npt_all) == EL_OK);
    CHECK(npt_any == 0);
    CHECK(el_state_mix_white_noise(ghz3.ptr, 1.5, &noisy.ptr) == EL_ERR_INVALID_ARGUMENT);

    StateHandle bell;
    REQUIRE(el_state_ghz(2, &bell.ptr) == EL_OK);
    CHECK(el_unfaithfulness_chi2(bell.ptr, &value) == EL_OK);
    CHECK(value == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(el_chsh_value(bell.ptr, &value) == EL_OK);
    CHECK(el_chsh_value(ghz3.ptr, &value) == EL_ERR_INVALID_ARGUMENT);

    StateHandle sep;
    const int cut[1] = {0};
    REQUIRE(el_state_random_biseparable(2, cut, 1, 99, &sep.ptr) == EL_OK);
    CHECK(el_ppt_min_eigenvalue(sep.ptr, cut, 1, &value) == EL_OK);
    CHECK(value >= -1e-9);
}

TEST_CASE("shadow handles") {
    StateHandle ghz2;
    REQUIRE(el_state_ghz(2, &ghz2.ptr) == EL_OK);

    // A derandomized single-observable plan hits every round, and the Bell
    // pair has even parity in the Z basis, so the estimate is exactly one.
    const char* zz[] = {"ZZ"};
    el_shadow* shadow = nullptr;
    REQUIRE(el_shadow_collect_derandomized(ghz2.ptr, zz, 1, 200, 0.1, 7, &shadow) == EL_OK);
    CHECK(el_shadow_num_snapshots(shadow) == 200);

    double value = 0.0;
    int never_hit = -1;
    CHECK(el_shadow_estimate(shadow, "ZZ", &value, &never_hit) == EL_OK);
    CHECK(value == doctest::Approx(1.0));
    CHECK(never_hit == 0);
    CHECK(el_shadow_estimate(shadow, "XX", &value, &never_hit) == EL_OK);
    CHECK(never_hit == 1);

    const fs::path path = capi_scratch() / "shadow.txt";
    CHECK(el_shadow_save(shadow, path.string().c_str()) == EL_OK);
    el_shadow* loaded = nullptr;
    CHECK(el_shadow_load(path.string().c_str(), 1, &loaded) == EL_OK);
    CHECK(el_shadow_num_snapshots(loaded) == 200);
    CHECK(el_shadow_estimate(loaded, "ZZ", &value, &never_hit) == EL_OK);
    CHECK(value == doctest::Approx(1.0));
    el_shadow_free(loaded);
    el_shadow_free(shadow);

    el_shadow* randomized = nullptr;
    REQUIRE(el_shadow_collect_randomized(ghz2.ptr, 5000, 11, &randomized) == EL_OK);
    CHECK(el_shadow_estimate(randomized, "ZZ", &value, nullptr) == EL_OK);
    CHECK(std::abs(value - 1.0) < 0.2);
    el_shadow_free(randomized);

    CHECK(el_shadow_load("/nonexistent/file.txt", 0, &loaded) == EL_ERR_INVALID_ARGUMENT);
}

TEST_CASE("model handles") {
    // Fixture model written through the serializer.
    elab::svm::SvmModel model;
    model.observables = {elab::pauli::PauliString("ZZ"), elab::pauli::PauliString("XX")};
    model.n_qubits = 2;
    model.support_vectors = {{1.0, 0.9}, {0.0, 0.1}};
    model.dual_coeffs = {-0.8, 0.5};
    model.bias = 0.1;
    model.gamma = 1.3;
    const fs::path path = capi_scratch() / "model.json";
    std::ofstream(path) << elab::svm::model_to_json(model);

    el_model* handle = nullptr;
    REQUIRE(el_model_load(path.string().c_str(), &handle) == EL_OK);
    CHECK(el_model_num_features(handle) == 2);
    CHECK(std::string(el_model_observable(handle, 0)) == "ZZ");
    CHECK(el_model_observable(handle, 5) == nullptr);

    const double x[2] = {0.8, 0.7};
    double value = 0.0;
    CHECK(el_model_decision_value(handle, x, 2, &value) == EL_OK);
    CHECK(value == doctest::Approx(elab::svm::decision_value(model, x)));
    CHECK(el_model_decision_value(handle, x, 1, &value) == EL_ERR_INVALID_ARGUMENT);

    const fs::path copy = capi_scratch() / "model_copy.json";
    CHECK(el_model_save(handle, copy.string().c_str()) == EL_OK);
    el_model* reloaded = nullptr;
    CHECK(el_model_load(copy.string().c_str(), &reloaded) == EL_OK);
    CHECK(el_model_num_features(reloaded) == 2);
    el_model_free(reloaded);
    el_model_free(handle);

    CHECK(el_model_load("/nonexistent/model.json", &handle) == EL_ERR_INVALID_ARGUMENT);
}

TEST_CASE("json command entry point") {
    const fs::path out = capi_scratch() / "oracle.json";
    nlohmann::json config = {{"command", "oracle-check"},
                             {"out", out.string()},
                             {"class", "GHZ3"},
                             {"target", "witness"}};
    char* result_text = nullptr;
    REQUIRE(el_run_command(config.dump().c_str(), &result_text) == EL_OK);
    REQUIRE(result_text != nullptr);
    const nlohmann::json result = nlohmann::json::parse(result_text);
    el_string_free(result_text);
    CHECK(result.at("report").at("threshold").get<double>() ==
          doctest::Approx(4.0 / 7.0).epsilon(1e-5));

    SUBCASE("manifest rerun through the C surface") {
        const std::string manifest = result.at("manifest").get<std::string>();
        char* rerun_text = nullptr;
        CHECK(el_rerun_manifest(manifest.c_str(), &rerun_text) == EL_OK);
        el_string_free(rerun_text);
    }

    SUBCASE("bad configs are invalid-argument errors") {
        CHECK(el_run_command("{\"command\":\"nope\",\"out\":\"x\"}", nullptr) ==
              EL_ERR_INVALID_ARGUMENT);
        CHECK(el_run_command("not json", nullptr) == EL_ERR_INVALID_ARGUMENT);
        CHECK(el_run_command(nullptr, nullptr) == EL_ERR_INVALID_ARGUMENT);
    }
}
