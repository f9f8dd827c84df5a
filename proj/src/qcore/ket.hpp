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

#ifndef ENTANGLE_LAB_QCORE_KET_HPP
#define ENTANGLE_LAB_QCORE_KET_HPP

#include <cstddef>
#include <vector>

#include "qcore/complex_matrix.hpp"

namespace elab::qcore {

// Normalized pure-state vector. Construction enforces unit norm within 1e-10;
// use Ket::normalized for raw amplitude data.
class Ket {
  public:
    explicit Ket(std::vector<cdouble> amplitudes);

    // Rescales to unit norm first (throws on the zero vector).
    static Ket normalized(std::vector<cdouble> amplitudes);
    static Ket basis_state(std::size_t dim, std::size_t index);

    std::size_t dim() const { return amplitudes_.size(); }
    std::size_t n_qubits() const;  // dim must be a power of two
    const cdouble& amplitude(std::size_t i) const { return amplitudes_[i]; }
    const std::vector<cdouble>& amplitudes() const { return amplitudes_; }

    double norm() const;
    cdouble inner(const Ket& other) const;  // <this|other>
    ComplexMatrix projector() const;        // |psi><psi|

  private:
    std::vector<cdouble> amplitudes_;
};

}  // namespace elab::qcore

#endif
