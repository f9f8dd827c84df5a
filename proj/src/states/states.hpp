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

#ifndef ENTANGLE_LAB_STATES_STATES_HPP
#define ENTANGLE_LAB_STATES_STATES_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qcore/density_matrix.hpp"
#include "qcore/ket.hpp"
#include "qcore/rng.hpp"

namespace elab::states {

struct NoiseParams {
    double theta = 0.0;
    double phi = 0.0;
    double p_noise = 0.0;
};

// One side of a cut; the other side is the complement.
class Bipartition {
  public:
    Bipartition(std::size_t n_qubits, std::vector<int> part_a);

    std::size_t n_qubits() const { return n_qubits_; }
    const std::vector<int>& part_a() const { return part_a_; }
    std::vector<int> part_b() const;

    bool operator==(const Bipartition&) const = default;

  private:
    std::size_t n_qubits_;
    std::vector<int> part_a_;  // sorted, nonempty, proper subset
};

enum class StateClass { GhzNoisy, WNoisy, BellNoisy, Separable, Random };

std::string state_class_name(StateClass c);
StateClass state_class_from_name(const std::string& name);

struct StateRecord {
    StateClass cls = StateClass::Separable;
    int label = +1;  // -1 entangled, +1 separable
    NoiseParams noise;
    std::optional<Bipartition> partition;
    std::uint64_t seed = 0;
    std::vector<double> features;  // filled by the feature-extraction stage
};

// |0...0> + |1...1> over sqrt(2). n >= 2.
qcore::Ket ghz(std::size_t n);

// cos(theta)|0...0> + e^{i phi} sin(theta)|1...1>. n >= 2.
qcore::Ket ghz_coherent(std::size_t n, double theta, double phi);

// Equal superposition of the n weight-one basis states. n >= 2.
qcore::Ket w_state(std::size_t n);

// (1-p)|psi><psi| + p * I / 2^n.
qcore::DensityMatrix mix_white_noise(const qcore::Ket& pure, double p_noise);
qcore::DensityMatrix mix_white_noise(const qcore::DensityMatrix& rho, double p_noise);

// Haar-random ket: i.i.d. standard complex Gaussian amplitudes, normalized.
qcore::Ket random_pure(std::size_t n, qcore::Rng& rng);

// Ginibre-induced mixed state G G^dag / Tr(G G^dag); full rank almost surely.
qcore::DensityMatrix random_dm(std::size_t n, qcore::Rng& rng);

// rho_A (x) rho_B from independent random_dm draws, with part_a placed on its
// declared qubit indices.
qcore::DensityMatrix random_biseparable(std::size_t n, const Bipartition& partition,
                                        qcore::Rng& rng);

// Relabels basis indices: qubit i of rho becomes qubit perm[i] of the result.
qcore::DensityMatrix permute_qubits(const qcore::DensityMatrix& rho,
                                    const std::vector<int>& perm);

struct NoiseRanges {
    double theta_min = 0.0, theta_max = 0.0;
    double phi_min = 0.0, phi_max = 0.0;
    double p_min = 0.0, p_max = 0.0;
};

struct ClassSpec {
    StateClass cls = StateClass::Separable;
    std::size_t count = 0;
    NoiseRanges noise;                       // used by the noisy classes
    std::optional<Bipartition> partition;    // required for Separable
};

struct DatasetSpec {
    std::size_t n_qubits = 4;
    std::uint64_t seed = 1;
    std::vector<ClassSpec> classes;
};

struct GeneratedState {
    StateRecord record;
    qcore::DensityMatrix rho;
};

// Default per-class noise ranges: GHZ theta in [0, pi/3], phi in [0, 0.6*pi],
// p in [0, 0.1]; W p in [0, 0.5]; Bell p in [0, 1/3].
NoiseRanges default_ghz_ranges();
NoiseRanges default_w_ranges();
NoiseRanges default_bell_ranges();

// Generates records in class order. Each record draws from its own stream
// derived from (spec.seed, global index), so regeneration from the stored
// per-record seed is exact. Entangled-class draws that come out PPT on every
// bipartition (degenerate noise parameters) are dropped and redrawn.
std::vector<GeneratedState> make_dataset(const DatasetSpec& spec);

// Rebuilds the state for one record from its stored seed and parameters.
qcore::DensityMatrix regenerate_state(std::size_t n_qubits, const StateRecord& record);

}  // namespace elab::states

#endif
