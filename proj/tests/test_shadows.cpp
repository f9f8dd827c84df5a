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

#include <array>
#include <cmath>
#include <set>

#include "doctest.h"
#include "oracle_helpers.hpp"
#include "pauli/pauli.hpp"
#include "shadows/shadows.hpp"
#include "states/states.hpp"

using namespace elab::shadows;
using elab::pauli::PauliString;
using elab::qcore::DensityMatrix;
using elab::qcore::Ket;
using elab::qcore::Rng;
using elab::states::ghz;
using elab::states::ghz_coherent;
using elab::states::mix_white_noise;

namespace {

constexpr double kPi = 3.14159265358979323846;

std::vector<PauliString> benchmark_observables() {
    const std::vector<PauliString> quartet = {PauliString("XIIX"), PauliString("YIIZ"),
                                              PauliString("IIZZ"), PauliString("ZXII")};
    std::vector<PauliString> orbit;
    std::vector<std::vector<int>> perms = {{0, 1, 2, 3}};
    for (int a = 0; a < 4; ++a) {
        for (int b = a + 1; b < 4; ++b) {
            std::vector<int> p{0, 1, 2, 3};
            std::swap(p[a], p[b]);
            perms.push_back(p);
        }
    }
    for (const auto& perm : perms) {
        for (const auto& q : quartet) {
            const PauliString moved = elab::pauli::permute_pauli(q, perm);
            bool seen = false;
            for (const auto& o : orbit) {
                seen = seen || (o == moved);
            }
            if (!seen) {
                orbit.push_back(moved);
            }
        }
    }
    return orbit;
}

}  // namespace

TEST_CASE("random measurement plans") {
    Rng rng(3);
    const MeasurementPlan plan = sample_random_plan(3, 50, rng);
    CHECK(plan.rounds.size() == 50);
    for (const auto& word : plan.rounds) {
        CHECK(word.size() == 3);
        for (char c : word) {
            CHECK((c == 'X' || c == 'Y' || c == 'Z'));
        }
    }

    SUBCASE("letters are uniform over the three bases") {
        Rng freq_rng(5);
        std::array<int, 3> counts{0, 0, 0};
        const int trials = 30000;
        const MeasurementPlan big = sample_random_plan(1, trials, freq_rng);
        for (const auto& word : big.rounds) {
            counts[static_cast<std::size_t>(word[0] == 'Y') + 2 * (word[0] == 'Z')] += 1;
        }
        for (int c : counts) {
            CHECK(std::abs(c / static_cast<double>(trials) - 1.0 / 3.0) < 0.02);
        }
    }

    SUBCASE("deterministic under a fixed seed") {
        Rng a(7), b(7);
        const MeasurementPlan pa = sample_random_plan(4, 20, a);
        const MeasurementPlan pb = sample_random_plan(4, 20, b);
        CHECK(pa.rounds == pb.rounds);
    }
}

TEST_CASE("derandomized plans") {
    SUBCASE("single observable dominates every round") {
        const MeasurementPlan plan = derandomize_plan({PauliString("ZZ")}, 10, 0.1);
        for (const auto& word : plan.rounds) {
            CHECK(word == "ZZ");
        }
        CHECK(plan.scheme == Scheme::Derandomized);
    }

    SUBCASE("every benchmark observable gets hit within 100 rounds") {
        const auto obs = benchmark_observables();
        REQUIRE(obs.size() == 22);
        const MeasurementPlan plan = derandomize_plan(obs, 100, 0.95);
        for (const auto& p : obs) {
            int hits = 0;
            for (const auto& word : plan.rounds) {
                bool hit = true;
                for (int q : p.support()) {
                    const char want = "IXYZ"[p.letter(static_cast<std::size_t>(q))];
                    hit = hit && (word[static_cast<std::size_t>(q)] == want);
                }
                hits += hit;
            }
            CHECK(hits >= 1);
        }
    }

    SUBCASE("pure function of its inputs") {
        const auto obs = benchmark_observables();
        const MeasurementPlan a = derandomize_plan(obs, 40, 0.95);
        const MeasurementPlan b = derandomize_plan(obs, 40, 0.95);
        CHECK(a.rounds == b.rounds);
    }

    SUBCASE("coverage keeps growing on long runs") {
        // Guards the weight renormalization: without it the per-observable
        // products underflow after ~1500 hits and the tail degenerates.
        const auto obs = benchmark_observables();
        const MeasurementPlan plan = derandomize_plan(obs, 20000, 0.95);
        for (const auto& p : obs) {
            int hits = 0;
            for (const auto& word : plan.rounds) {
                bool hit = true;
                for (int q : p.support()) {
                    const char want = "IXYZ"[p.letter(static_cast<std::size_t>(q))];
                    hit = hit && (word[static_cast<std::size_t>(q)] == want);
                }
                hits += hit;
            }
            CHECK(hits >= 2000);
        }
    }

    CHECK_THROWS_AS(derandomize_plan({}, 10, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(derandomize_plan({PauliString("II")}, 10, 0.1), std::invalid_argument);
}

TEST_CASE("snapshot collection") {
    SUBCASE("computational eigenstate in the Z basis") {
        const DensityMatrix zero = DensityMatrix::from_pure(Ket::basis_state(4, 0));
        MeasurementPlan plan;
        plan.n_qubits = 2;
        plan.rounds = std::vector<std::string>(20, "ZZ");
        Rng rng(11);
        const ShadowSet shadow = collect_shadow(zero, plan, rng);
        for (const auto& snap : shadow.snapshots) {
            CHECK(snap.bits == "00");
        }
    }

    SUBCASE("plus state in the X basis") {
        const double r = 1.0 / std::sqrt(2.0);
        const DensityMatrix plus = DensityMatrix::from_pure(Ket({r, r}));
        MeasurementPlan plan;
        plan.n_qubits = 1;
        plan.rounds = std::vector<std::string>(20, "X");
        Rng rng(13);
        for (const auto& snap : collect_shadow(plus, plan, rng).snapshots) {
            CHECK(snap.bits == "0");
        }
    }

    SUBCASE("maximally mixed marginals are fair") {
        const DensityMatrix mixed = DensityMatrix::maximally_mixed(1);
        MeasurementPlan plan;
        plan.n_qubits = 1;
        plan.rounds = std::vector<std::string>(10000, "Y");
        Rng rng(17);
        int ones = 0;
        for (const auto& snap : collect_shadow(mixed, plan, rng).snapshots) {
            ones += (snap.bits[0] == '1');
        }
        CHECK(std::abs(ones / 10000.0 - 0.5) < 0.02);
    }

    SUBCASE("round substreams make results order-independent of caching") {
        const DensityMatrix rho = mix_white_noise(ghz(2), 0.3);
        MeasurementPlan plan;
        plan.n_qubits = 2;
        plan.rounds = {"XZ", "ZZ", "XZ", "YY", "ZZ"};
        Rng a(19), b(19);
        const ShadowSet sa = collect_shadow(rho, plan, a);
        const ShadowSet sb = collect_shadow(rho, plan, b);
        for (std::size_t i = 0; i < sa.snapshots.size(); ++i) {
            CHECK(sa.snapshots[i].bits == sb.snapshots[i].bits);
        }
    }
}

TEST_CASE("pauli estimation from shadows") {
    SUBCASE("single-snapshot closed forms") {
        ShadowSet shadow;
        shadow.n_qubits = 1;
        shadow.scheme = Scheme::Randomized;
        shadow.snapshots = {Snapshot{"Z", "0"}};
        CHECK(estimate_pauli(shadow, PauliString("Z")).value == doctest::Approx(3.0));
        shadow.snapshots = {Snapshot{"X", "1"}};
        CHECK(estimate_pauli(shadow, PauliString("Z")).value == doctest::Approx(0.0));
    }

    SUBCASE("unbiased on an eigenstate") {
        const DensityMatrix zero = DensityMatrix::from_pure(Ket::basis_state(2, 0));
        Rng rng(23);
        const MeasurementPlan plan = sample_random_plan(1, 30000, rng);
        const ShadowSet shadow = collect_shadow(zero, plan, rng);
        CHECK(std::abs(estimate_pauli(shadow, PauliString("Z")).value - 1.0) < 0.05);
    }

    SUBCASE("randomized single-snapshot values live in {0, +-3^w}") {
        const DensityMatrix rho = mix_white_noise(ghz_coherent(3, 0.7, 0.3), 0.1);
        Rng rng(29);
        const MeasurementPlan plan = sample_random_plan(3, 200, rng);
        const ShadowSet all = collect_shadow(rho, plan, rng);
        const PauliString p("XZI");
        const std::set<double> allowed = {-9.0, 0.0, 9.0};
        for (const auto& snap : all.snapshots) {
            ShadowSet single;
            single.n_qubits = 3;
            single.scheme = Scheme::Randomized;
            single.snapshots = {snap};
            CHECK(allowed.count(estimate_pauli(single, p).value) == 1);
        }
    }

    SUBCASE("derandomized estimates use exactly the hitting rounds") {
        const DensityMatrix rho = mix_white_noise(ghz(4), 0.2);
        const auto obs = benchmark_observables();
        const MeasurementPlan plan = derandomize_plan(obs, 60, 0.1);
        Rng rng(31);
        const ShadowSet shadow = collect_shadow(rho, plan, rng);
        for (const auto& p : obs) {
            // Brute-force recomputation over the plan.
            double sum = 0.0;
            int hits = 0;
            for (const auto& snap : shadow.snapshots) {
                bool hit = true;
                double value = 1.0;
                for (int q : p.support()) {
                    const auto uq = static_cast<std::size_t>(q);
                    const char want = "IXYZ"[p.letter(uq)];
                    if (snap.bases[uq] != want) {
                        hit = false;
                        break;
                    }
                    if (snap.bits[uq] == '1') {
                        value = -value;
                    }
                }
                if (hit) {
                    sum += value;
                    ++hits;
                }
            }
            const PauliEstimate est = estimate_pauli(shadow, p);
            if (hits == 0) {
                CHECK(est.never_hit);
                CHECK(est.value == 0.0);
            } else {
                CHECK_FALSE(est.never_hit);
                CHECK(est.value == doctest::Approx(sum / hits).epsilon(1e-12));
            }
        }
    }

    SUBCASE("never-hit flag") {
        ShadowSet shadow;
        shadow.n_qubits = 2;
        shadow.scheme = Scheme::Derandomized;
        shadow.snapshots = {Snapshot{"XX", "00"}};
        const PauliEstimate est = estimate_pauli(shadow, PauliString("ZZ"));
        CHECK(est.never_hit);
        CHECK(est.value == 0.0);
    }

    SUBCASE("argument checks") {
        ShadowSet shadow;
        shadow.n_qubits = 2;
        shadow.snapshots = {Snapshot{"XX", "00"}};
        CHECK_THROWS_AS(estimate_pauli(shadow, PauliString("Z")), std::invalid_argument);
        CHECK_THROWS_AS(estimate_pauli(shadow, PauliString("II")), std::invalid_argument);
    }
}

TEST_CASE("independent estimation") {
    const DensityMatrix zero2 = DensityMatrix::from_pure(Ket::basis_state(4, 0));
    Rng rng(37);
    const auto exact = independent_estimate(zero2, {PauliString("ZZ")}, 64, rng);
    CHECK(exact[0] == 1.0);

    const auto mixed = independent_estimate(DensityMatrix::maximally_mixed(2),
                                            {PauliString("XX")}, 10000, rng);
    CHECK(std::abs(mixed[0]) < 0.05);

    const DensityMatrix ghz4 = DensityMatrix::from_pure(ghz(4));
    const auto parity = independent_estimate(ghz4, {PauliString("IIZZ")}, 1000, rng);
    CHECK(parity[0] == 1.0);

    CHECK_THROWS_AS(independent_estimate(ghz4, benchmark_observables(), 10, rng),
                    std::invalid_argument);
}

TEST_CASE("average squared error") {
    const std::vector<double> truths{0.1, -0.5, 0.9};
    CHECK(avg_squared_error(truths, truths).mean == 0.0);

    std::vector<double> shifted = truths;
    for (double& v : shifted) {
        v += 0.1;
    }
    CHECK(avg_squared_error(shifted, truths).mean == doctest::Approx(0.01).epsilon(1e-12));

    const std::vector<double> wrong_len{0.0};
    CHECK_THROWS_AS(avg_squared_error(wrong_len, truths), std::invalid_argument);

    SUBCASE("randomized estimation error scales like 1/N") {
        const DensityMatrix rho = mix_white_noise(ghz_coherent(4, kPi / 4.0, 0.0), 0.05);
        const auto obs = benchmark_observables();
        std::vector<double> truth_vals;
        for (const auto& p : obs) {
            truth_vals.push_back(elab::pauli::expectation(rho, p));
        }
        auto mse_at = [&](std::size_t rounds, std::uint64_t seed0) {
            double total = 0.0;
            const int trials = 20;
            for (int t = 0; t < trials; ++t) {
                Rng rng(elab::qcore::derive_seed(seed0, static_cast<std::uint64_t>(t)));
                const MeasurementPlan plan = sample_random_plan(4, rounds, rng);
                const ShadowSet shadow = collect_shadow(rho, plan, rng);
                std::vector<double> est;
                for (const auto& p : obs) {
                    est.push_back(estimate_pauli(shadow, p).value);
                }
                total += avg_squared_error(est, truth_vals).mean;
            }
            return total / trials;
        };
        const double ratio = mse_at(400, 41) / mse_at(1600, 43);
        CHECK(ratio > 2.0);
        CHECK(ratio < 6.0);
    }
}

TEST_CASE("every scheme converges below 1e-2 by 1e5 samples") {
    const DensityMatrix rho = mix_white_noise(ghz_coherent(4, kPi / 4.0, 0.0), 0.05);
    const auto obs = benchmark_observables();
    std::vector<double> truths;
    for (const auto& p : obs) {
        truths.push_back(elab::pauli::expectation(rho, p));
    }
    const std::size_t budget = 100000;

    Rng rng_ind(51);
    const auto independent = independent_estimate(rho, obs, budget, rng_ind);
    CHECK(avg_squared_error(independent, truths).mean < 1e-2);

    Rng rng_rand(52);
    const auto random_shadow =
        collect_shadow(rho, sample_random_plan(4, budget, rng_rand), rng_rand);
    std::vector<double> randomized;
    for (const auto& p : obs) {
        randomized.push_back(estimate_pauli(random_shadow, p).value);
    }
    CHECK(avg_squared_error(randomized, truths).mean < 1e-2);

    Rng rng_der(53);
    const auto derand_shadow =
        collect_shadow(rho, derandomize_plan(obs, budget, 0.95), rng_der);
    std::vector<double> derandomized;
    for (const auto& p : obs) {
        derandomized.push_back(estimate_pauli(derand_shadow, p).value);
    }
    CHECK(avg_squared_error(derandomized, truths).mean < 1e-2);
}

TEST_CASE("estimator bias stays within standard error on a noisy target") {
    // Smaller version of the benchmark soundness check; the acceptance suite
    // runs the full 100 x 1000 version.
    const DensityMatrix rho = mix_white_noise(ghz_coherent(4, kPi / 4.0, 0.0), 0.05);
    const std::vector<PauliString> obs = {PauliString("IIZZ"), PauliString("XIIX"),
                                          PauliString("ZIII"), PauliString("XXXX")};
    for (const auto& p : obs) {
        const double truth = elab::pauli::expectation(rho, p);
        std::vector<double> estimates;
        const int n_shadows = 40;
        for (int s = 0; s < n_shadows; ++s) {
            Rng rng(elab::qcore::derive_seed(97, static_cast<std::uint64_t>(s)));
            const MeasurementPlan plan = sample_random_plan(4, 500, rng);
            const ShadowSet shadow = collect_shadow(rho, plan, rng);
            estimates.push_back(estimate_pauli(shadow, p).value);
        }
        double mean = 0.0;
        for (double e : estimates) {
            mean += e;
        }
        mean /= n_shadows;
        double var = 0.0;
        for (double e : estimates) {
            var += (e - mean) * (e - mean);
        }
        var /= (n_shadows - 1);
        const double se = std::sqrt(var / n_shadows);
        CHECK(std::abs(mean - truth) <= 4.0 * se + 1e-12);
    }
}
