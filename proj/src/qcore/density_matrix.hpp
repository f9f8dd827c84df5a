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

#ifndef ENTANGLE_LAB_QCORE_DENSITY_MATRIX_HPP
#define ENTANGLE_LAB_QCORE_DENSITY_MATRIX_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "qcore/complex_matrix.hpp"
#include "qcore/ket.hpp"
#include "qcore/rng.hpp"

namespace elab::qcore {

// Mixed-state representation: Hermitian, PSD, trace-one 2^n x 2^n matrix.
//
// Index convention used by every module: qubit 0 is the most significant bit
// of a basis-state index, so |q0 q1 ... q_{n-1}> has index q0*2^{n-1} + ... +
// q_{n-1}.
class DensityMatrix {
  public:
    DensityMatrix(std::size_t n_qubits, ComplexMatrix matrix);

    static DensityMatrix from_pure(const Ket& psi);
    static DensityMatrix maximally_mixed(std::size_t n_qubits);

    std::size_t n_qubits() const { return n_qubits_; }
    std::size_t dim() const { return matrix_.rows(); }
    const ComplexMatrix& matrix() const { return matrix_; }

    // Full invariant check (Hermitian within 1e-10, trace one within 1e-10,
    // eigenvalues >= -1e-9). Runs on construction in debug builds; release
    // builds only do the cheap shape/trace checks.
    void validate() const;

  private:
    std::size_t n_qubits_;
    ComplexMatrix matrix_;
};

// Reduced state on the kept qubits (ascending original order).
// keep must be a nonempty subset of {0..n-1}.
DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& keep);

// Transpose of the subsystem_a indices: |kA,kB><lA,lB| -> |lA,kB><kA,lB|.
// Hermitian and trace-preserving but generally not PSD, hence a plain matrix.
ComplexMatrix partial_transpose(const DensityMatrix& rho, const std::vector<int>& subsystem_a);

// Draws one computational-basis outcome from diag(U rho U^dag). Returns the
// basis-state index (qubit 0 = MSB). basis_rotation must be unitary within
// 1e-8 and match the state dimension.
std::uint64_t born_sample(const DensityMatrix& rho, const ComplexMatrix& basis_rotation, Rng& rng);

// "0"/"1" characters, qubit 0 leftmost.
std::string bits_to_string(std::uint64_t index, std::size_t n_qubits);

}  // namespace elab::qcore

#endif
