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

#ifndef ENTANGLE_LAB_PAULI_PAULI_HPP
#define ENTANGLE_LAB_PAULI_PAULI_HPP

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "qcore/complex_matrix.hpp"
#include "qcore/density_matrix.hpp"

namespace elab::pauli {

// One letter per qubit, I=0, X=1, Y=2, Z=3. Text form "XIIX" puts qubit 0
// leftmost; that spelling is used verbatim in files and CLI flags.
class PauliString {
  public:
    explicit PauliString(std::string_view text);
    PauliString(std::vector<std::uint8_t> letters);

    static PauliString identity(std::size_t n);

    std::size_t size() const { return letters_.size(); }
    std::uint8_t letter(std::size_t q) const { return letters_[q]; }
    const std::vector<std::uint8_t>& letters() const { return letters_; }

    std::size_t weight() const;  // number of non-identity letters
    bool is_identity() const { return weight() == 0; }
    std::vector<int> support() const;

    std::string str() const;

    auto operator<=>(const PauliString&) const = default;

  private:
    std::vector<std::uint8_t> letters_;
};

// Dense 2^n x 2^n realization (Hermitian, unitary).
qcore::ComplexMatrix pauli_matrix(const PauliString& p);

// Single-qubit Pauli as a 2x2 matrix; letter in {0..3}.
qcore::ComplexMatrix single_pauli_matrix(std::uint8_t letter);

// Tr(rho * O_p) without materializing O_p: each Pauli row has exactly one
// nonzero entry, so the trace reduces to one rho lookup per basis state.
// Result is clamped to [-1, 1] after checking the imaginary residual.
double expectation(const qcore::DensityMatrix& rho, const PauliString& p);

// All strings with weight in [1, k], in lexicographic order (I < X < Y < Z),
// identity excluded. That order is the feature-order contract used by every
// downstream consumer.
std::vector<PauliString> enumerate_k_local(std::size_t n, std::size_t k);

struct FeatureVector {
    std::vector<PauliString> observables;
    std::vector<double> values;
};

FeatureVector feature_vector(const qcore::DensityMatrix& rho,
                             const std::vector<PauliString>& observables);

// Relabels letters: result[perm[i]] = p[i]. perm must be a bijection.
PauliString permute_pauli(const PauliString& p, const std::vector<int>& perm);

// Checks that perm is a bijection of {0..n-1}; throws otherwise.
void check_permutation(const std::vector<int>& perm, std::size_t n, const char* what);

}  // namespace elab::pauli

#endif
