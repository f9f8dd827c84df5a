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

#include "qcore/density_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qcore/eig.hpp"

namespace elab::qcore {

namespace {

// Validates an index set against n and returns it sorted.
std::vector<int> checked_sorted_subset(const std::vector<int>& qubits, std::size_t n,
                                       const char* what) {
    std::vector<int> sorted = qubits;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        if (sorted[i] < 0 || sorted[i] >= static_cast<int>(n)) {
            throw std::invalid_argument(std::string(what) + ": qubit index out of range");
        }
        if (i > 0 && sorted[i] == sorted[i - 1]) {
            throw std::invalid_argument(std::string(what) + ": duplicate qubit index");
        }
    }
    return sorted;
}

}  // namespace

DensityMatrix::DensityMatrix(std::size_t n_qubits, ComplexMatrix matrix)
    : n_qubits_(n_qubits), matrix_(std::move(matrix)) {
    const std::size_t d = std::size_t{1} << n_qubits_;
    if (matrix_.rows() != d || matrix_.cols() != d) {
        throw std::invalid_argument("DensityMatrix: matrix must be 2^n x 2^n");
    }
    if (std::abs(matrix_.trace() - cdouble{1.0, 0.0}) > 1e-10) {
        throw std::invalid_argument("DensityMatrix: trace must be one within 1e-10");
    }
#ifndef NDEBUG
    validate();
#endif
}

DensityMatrix DensityMatrix::from_pure(const Ket& psi) {
    return DensityMatrix(psi.n_qubits(), psi.projector());
}

DensityMatrix DensityMatrix::maximally_mixed(std::size_t n_qubits) {
    const std::size_t d = std::size_t{1} << n_qubits;
    ComplexMatrix m = ComplexMatrix::identity(d);
    m *= cdouble{1.0 / static_cast<double>(d), 0.0};
    return DensityMatrix(n_qubits, std::move(m));
}

void DensityMatrix::validate() const {
    if (!matrix_.is_hermitian(1e-10)) {
        throw std::invalid_argument("DensityMatrix: not Hermitian within 1e-10");
    }
    if (std::abs(matrix_.trace() - cdouble{1.0, 0.0}) > 1e-10) {
        throw std::invalid_argument("DensityMatrix: trace not one within 1e-10");
    }
    if (min_eigenvalue(matrix_) < -1e-9) {
        throw std::invalid_argument("DensityMatrix: negative eigenvalue beyond -1e-9");
    }
}

DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& keep) {
    const std::size_t n = rho.n_qubits();
    if (keep.empty()) {
        throw std::invalid_argument("partial_trace: keep set must be nonempty");
    }
    const std::vector<int> kept = checked_sorted_subset(keep, n, "partial_trace");
    const std::size_t n_keep = kept.size();

    std::vector<int> traced;
    for (std::size_t q = 0; q < n; ++q) {
        if (!std::binary_search(kept.begin(), kept.end(), static_cast<int>(q))) {
            traced.push_back(static_cast<int>(q));
        }
    }

    // Bit q of an n-qubit index sits at shift n-1-q (qubit 0 = MSB).
    auto compose = [&](std::size_t kept_bits, std::size_t traced_bits) {
        std::size_t idx = 0;
        for (std::size_t i = 0; i < kept.size(); ++i) {
            const std::size_t bit = (kept_bits >> (n_keep - 1 - i)) & 1;
            idx |= bit << (n - 1 - static_cast<std::size_t>(kept[i]));
        }
        for (std::size_t i = 0; i < traced.size(); ++i) {
            const std::size_t bit = (traced_bits >> (traced.size() - 1 - i)) & 1;
            idx |= bit << (n - 1 - static_cast<std::size_t>(traced[i]));
        }
        return idx;
    };

    const std::size_t d_keep = std::size_t{1} << n_keep;
    const std::size_t d_traced = std::size_t{1} << traced.size();
    ComplexMatrix out(d_keep, d_keep);
    for (std::size_t r = 0; r < d_keep; ++r) {
        for (std::size_t c = 0; c < d_keep; ++c) {
            cdouble sum = 0.0;
            for (std::size_t t = 0; t < d_traced; ++t) {
                sum += rho.matrix()(compose(r, t), compose(c, t));
            }
            out(r, c) = sum;
        }
    }
    return DensityMatrix(n_keep, std::move(out));
}

ComplexMatrix partial_transpose(const DensityMatrix& rho, const std::vector<int>& subsystem_a) {
    const std::size_t n = rho.n_qubits();
    const std::vector<int> part_a = checked_sorted_subset(subsystem_a, n, "partial_transpose");

    std::size_t a_mask = 0;
    for (int q : part_a) {
        a_mask |= std::size_t{1} << (n - 1 - static_cast<std::size_t>(q));
    }

    const std::size_t d = rho.dim();
    ComplexMatrix out(d, d);
    for (std::size_t r = 0; r < d; ++r) {
        for (std::size_t c = 0; c < d; ++c) {
            // Swap the subsystem-A bits between row and column.
            const std::size_t rr = (r & ~a_mask) | (c & a_mask);
            const std::size_t cc = (c & ~a_mask) | (r & a_mask);
            out(r, c) = rho.matrix()(rr, cc);
        }
    }
    return out;
}

std::uint64_t born_sample(const DensityMatrix& rho, const ComplexMatrix& basis_rotation, Rng& rng) {
    const std::size_t d = rho.dim();
    if (basis_rotation.rows() != d || basis_rotation.cols() != d) {
        throw std::invalid_argument("born_sample: rotation dimension mismatch");
    }
    if (!basis_rotation.is_unitary(1e-8)) {
        throw std::invalid_argument("born_sample: rotation not unitary within 1e-8");
    }

    // diag(U rho U^dag)[b] = u_b . rho . u_b^dag with u_b the b-th row of U.
    std::vector<double> probs(d);
    double total = 0.0;
    for (std::size_t b = 0; b < d; ++b) {
        cdouble acc = 0.0;
        for (std::size_t i = 0; i < d; ++i) {
            cdouble row = 0.0;
            for (std::size_t j = 0; j < d; ++j) {
                row += rho.matrix()(i, j) * std::conj(basis_rotation(b, j));
            }
            acc += basis_rotation(b, i) * row;
        }
        probs[b] = std::max(0.0, acc.real());
        total += probs[b];
    }
    if (std::abs(total - 1.0) > 1e-6) {
        throw std::runtime_error("born_sample: outcome probabilities do not sum to one");
    }

    const double r = rng.uniform() * total;
    double cum = 0.0;
    for (std::size_t b = 0; b < d; ++b) {
        cum += probs[b];
        if (r < cum) {
            return b;
        }
    }
    return d - 1;
}

std::string bits_to_string(std::uint64_t index, std::size_t n_qubits) {
    std::string s(n_qubits, '0');
    for (std::size_t q = 0; q < n_qubits; ++q) {
        if ((index >> (n_qubits - 1 - q)) & 1) {
            s[q] = '1';
        }
    }
    return s;
}

}  // namespace elab::qcore
