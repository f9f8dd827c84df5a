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

#include "qcore/ket.hpp"

#include <cmath>
#include <stdexcept>

namespace elab::qcore {

Ket::Ket(std::vector<cdouble> amplitudes) : amplitudes_(std::move(amplitudes)) {
    if (amplitudes_.empty()) {
        throw std::invalid_argument("Ket: empty amplitude vector");
    }
    if (std::abs(norm() - 1.0) > 1e-10) {
        throw std::invalid_argument("Ket: amplitudes not normalized within 1e-10");
    }
}

Ket Ket::normalized(std::vector<cdouble> amplitudes) {
    double s = 0.0;
    for (const auto& a : amplitudes) {
        s += std::norm(a);
    }
    if (s <= 0.0) {
        throw std::invalid_argument("Ket::normalized: zero vector");
    }
    const double inv = 1.0 / std::sqrt(s);
    for (auto& a : amplitudes) {
        a *= inv;
    }
    return Ket(std::move(amplitudes));
}

Ket Ket::basis_state(std::size_t dim, std::size_t index) {
    if (index >= dim) {
        throw std::invalid_argument("Ket::basis_state: index out of range");
    }
    std::vector<cdouble> amps(dim);
    amps[index] = 1.0;
    return Ket(std::move(amps));
}

std::size_t Ket::n_qubits() const {
    std::size_t d = dim();
    if ((d & (d - 1)) != 0) {
        throw std::logic_error("Ket::n_qubits: dimension is not a power of two");
    }
    std::size_t n = 0;
    while (d > 1) {
        d >>= 1;
        ++n;
    }
    return n;
}

double Ket::norm() const {
    double s = 0.0;
    for (const auto& a : amplitudes_) {
        s += std::norm(a);
    }
    return std::sqrt(s);
}

cdouble Ket::inner(const Ket& other) const {
    if (dim() != other.dim()) {
        throw std::invalid_argument("Ket::inner: dimension mismatch");
    }
    cdouble s = 0.0;
    for (std::size_t i = 0; i < dim(); ++i) {
        s += std::conj(amplitudes_[i]) * other.amplitudes_[i];
    }
    return s;
}

ComplexMatrix Ket::projector() const {
    ComplexMatrix p(dim(), dim());
    for (std::size_t r = 0; r < dim(); ++r) {
        for (std::size_t c = 0; c < dim(); ++c) {
            p(r, c) = amplitudes_[r] * std::conj(amplitudes_[c]);
        }
    }
    return p;
}

}  // namespace elab::qcore
