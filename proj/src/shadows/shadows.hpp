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

#ifndef ENTANGLE_LAB_SHADOWS_SHADOWS_HPP
#define ENTANGLE_LAB_SHADOWS_SHADOWS_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "pauli/pauli.hpp"
#include "qcore/density_matrix.hpp"
#include "qcore/rng.hpp"

namespace elab::shadows {

enum class Scheme { Randomized, Derandomized };

// Per-round measurement bases: one word over {X,Y,Z} per round, one letter
// per qubit (every qubit is measured every round).
struct MeasurementPlan {
    std::size_t n_qubits = 0;
    Scheme scheme = Scheme::Randomized;
    std::vector<std::string> rounds;
};

// One measured round: the basis word and the observed bits ("0"/"1",
// qubit 0 leftmost in both).
struct Snapshot {
    std::string bases;
    std::string bits;
};

struct ShadowSet {
    std::size_t n_qubits = 0;
    Scheme scheme = Scheme::Randomized;
    std::vector<Snapshot> snapshots;
};

// Each letter i.i.d. uniform over {X, Y, Z}.
MeasurementPlan sample_random_plan(std::size_t n, std::size_t r_rounds, qcore::Rng& rng);

// Deterministic greedy plan: letters are fixed qubit by qubit, round by
// round, minimizing the expected confidence bound
//   sum_o prod_r (1 - p_r(o) * (1 - exp(-epsilon^2 / 2))),
// where p_r(o) is the probability that round r hits observable o given the
// letters fixed so far (1 once fully matched, 0 on any conflict, 1/3 per
// undecided support qubit, and 3^-weight(o) for wholly future rounds).
// Ties prefer Z, then X, then Y. No randomness: identical inputs give
// identical plans.
//
// epsilon controls how fast an already-covered observable stops attracting
// rounds. Values well below ~0.5 make the per-hit factor so close to one
// that the greedy can fixate on a few words and starve the rest of the
// observable set; 0.95 is the working default used by the pipelines.
MeasurementPlan derandomize_plan(const std::vector<pauli::PauliString>& observables,
                                 std::size_t r_rounds, double epsilon);

// Simulates single-copy measurements: per round, each qubit is rotated by
// the basis-change unitary (Z: identity; X: Hadamard; Y: maps the +Y
// eigenstate to |0>), then the whole register is Born-sampled. Round r uses
// its own stream derived from (rng draw, r), so results do not depend on
// scheduling.
ShadowSet collect_shadow(const qcore::DensityMatrix& rho, const MeasurementPlan& plan,
                         qcore::Rng& rng);

struct PauliEstimate {
    double value = 0.0;
    bool never_hit = false;  // derandomized scheme: no snapshot matched
};

// Randomized scheme: mean over all snapshots of prod_{j in supp} of
// 3*(-1)^bit on matching bases (0 otherwise). Derandomized scheme: mean of
// the plain eigenvalue product over the hitting snapshots only.
PauliEstimate estimate_pauli(const ShadowSet& shadow, const pauli::PauliString& p);

// Splits the budget evenly (floor(total/|obs|) shots per observable) and
// measures each observable's support directly in its own basis.
std::vector<double> independent_estimate(const qcore::DensityMatrix& rho,
                                         const std::vector<pauli::PauliString>& observables,
                                         std::size_t total_samples, qcore::Rng& rng);

struct SquaredError {
    double mean = 0.0;
    std::vector<double> per_observable;
};

SquaredError avg_squared_error(std::span<const double> estimates, std::span<const double> truths);

}  // namespace elab::shadows

#endif
