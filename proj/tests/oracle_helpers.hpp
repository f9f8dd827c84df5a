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

// Independent reference computations used as test oracles. Everything here
// deliberately takes the dense / brute-force route so it shares no code path
// with the implementation it checks.

#ifndef ENTANGLE_LAB_TESTS_ORACLE_HELPERS_HPP
#define ENTANGLE_LAB_TESTS_ORACLE_HELPERS_HPP

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "oracles/oracles.hpp"
#include "pauli/pauli.hpp"
#include "qcore/complex_matrix.hpp"
#include "qcore/density_matrix.hpp"
#include "qcore/eig.hpp"
#include "qcore/ket.hpp"
#include "qcore/rng.hpp"
#include "states/states.hpp"

namespace testing_oracles {

using elab::qcore::cdouble;
using elab::qcore::ComplexMatrix;
using elab::qcore::DensityMatrix;
using elab::qcore::Ket;
using elab::qcore::Rng;

// Dense-trace route: materialize the observable matrix and take Tr(rho * O).
inline double dense_expectation(const DensityMatrix& rho, const elab::pauli::PauliString& p) {
    const ComplexMatrix o = elab::pauli::pauli_matrix(p);
    return (rho.matrix() * o).trace().real();
}

// Brute-force count of nonidentity words with weight <= k over all 4^n words.
inline std::size_t brute_k_local_count(std::size_t n, std::size_t k) {
    std::size_t count = 0;
    const std::size_t total = std::size_t{1} << (2 * n);
    for (std::size_t word = 1; word < total; ++word) {
        std::size_t weight = 0;
        for (std::size_t q = 0; q < n; ++q) {
            weight += ((word >> (2 * q)) & 3) != 0;
        }
        if (weight <= k) {
            ++count;
        }
    }
    return count;
}

inline ComplexMatrix random_hermitian(std::size_t dim, Rng& rng) {
    ComplexMatrix h(dim, dim);
    for (std::size_t r = 0; r < dim; ++r) {
        h(r, r) = rng.normal();
        for (std::size_t c = r + 1; c < dim; ++c) {
            const cdouble v{rng.normal(), rng.normal()};
            h(r, c) = v;
            h(c, r) = std::conj(v);
        }
    }
    return h;
}

inline double total_variation(const std::vector<double>& a, const std::vector<double>& b) {
    double tv = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        tv += std::abs(a[i] - b[i]);
    }
    return 0.5 * tv;
}

// Reshapes |psi> into the matrix Psi with row index the part_a bits and
// column index the complement bits.
inline ComplexMatrix reshape_by_cut(const Ket& psi, const std::vector<int>& part_a) {
    const std::size_t n = psi.n_qubits();
    std::vector<int> part_b;
    for (std::size_t q = 0; q < n; ++q) {
        bool in_a = false;
        for (int a : part_a) {
            in_a = in_a || (a == static_cast<int>(q));
        }
        if (!in_a) {
            part_b.push_back(static_cast<int>(q));
        }
    }
    ComplexMatrix psi_mat(std::size_t{1} << part_a.size(), std::size_t{1} << part_b.size());
    for (std::size_t idx = 0; idx < psi.dim(); ++idx) {
        std::size_t ra = 0;
        for (std::size_t i = 0; i < part_a.size(); ++i) {
            ra = (ra << 1) | ((idx >> (n - 1 - static_cast<std::size_t>(part_a[i]))) & 1);
        }
        std::size_t cb = 0;
        for (std::size_t i = 0; i < part_b.size(); ++i) {
            cb = (cb << 1) | ((idx >> (n - 1 - static_cast<std::size_t>(part_b[i]))) & 1);
        }
        psi_mat(ra, cb) = psi.amplitude(idx);
    }
    return psi_mat;
}

// Maximum squared overlap between |psi> and pure product states across one
// cut, found by alternating power iteration on the reshaped amplitude matrix
// from random starts. Gradient-free and independent of the eigensolver.
inline double max_product_overlap(const Ket& psi, const std::vector<int>& part_a, int restarts,
                                  Rng& rng) {
    const ComplexMatrix m = reshape_by_cut(psi, part_a);
    const std::size_t da = m.rows();
    const std::size_t db = m.cols();
    double best = 0.0;
    for (int r = 0; r < restarts; ++r) {
        std::vector<cdouble> b(db);
        double norm_b = 0.0;
        for (auto& v : b) {
            v = cdouble{rng.normal(), rng.normal()};
            norm_b += std::norm(v);
        }
        norm_b = std::sqrt(norm_b);
        for (auto& v : b) {
            v /= norm_b;
        }
        std::vector<cdouble> a(da);
        for (int it = 0; it < 40; ++it) {
            // a <- M conj(b), normalized
            double na = 0.0;
            for (std::size_t i = 0; i < da; ++i) {
                cdouble s = 0.0;
                for (std::size_t j = 0; j < db; ++j) {
                    s += m(i, j) * std::conj(b[j]);
                }
                a[i] = s;
                na += std::norm(s);
            }
            na = std::sqrt(na);
            if (na == 0.0) {
                break;
            }
            for (auto& v : a) {
                v /= na;
            }
            // b <- conj(M^T a), normalized
            double nb = 0.0;
            for (std::size_t j = 0; j < db; ++j) {
                cdouble s = 0.0;
                for (std::size_t i = 0; i < da; ++i) {
                    s += std::conj(m(i, j)) * a[i];
                }
                b[j] = std::conj(s);
                nb += std::norm(s);
            }
            nb = std::sqrt(nb);
            if (nb == 0.0) {
                break;
            }
            for (auto& v : b) {
                v /= nb;
            }
        }
        cdouble overlap = 0.0;
        for (std::size_t i = 0; i < da; ++i) {
            for (std::size_t j = 0; j < db; ++j) {
                overlap += std::conj(a[i] * b[j]) * m(i, j);
            }
        }
        best = std::max(best, std::norm(overlap));
    }
    return best;
}

// Max over every cut; equals the fidelity-witness bound alpha for |psi>.
inline double max_biseparable_overlap(const Ket& psi, int restarts, Rng& rng) {
    double best = 0.0;
    for (const auto& cut : elab::oracles::all_bipartitions(psi.n_qubits())) {
        best = std::max(best, max_product_overlap(psi, cut.part_a(), restarts, rng));
    }
    return best;
}

}  // namespace testing_oracles

#endif
