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

#ifndef ENTANGLE_LAB_QCORE_EIG_HPP
#define ENTANGLE_LAB_QCORE_EIG_HPP

#include <vector>

#include "qcore/complex_matrix.hpp"

namespace elab::qcore {

struct HermitianEig {
    std::vector<double> values;  // ascending
    ComplexMatrix vectors;       // column k is the eigenvector of values[k]
};

// Cyclic Jacobi diagonalization of a complex Hermitian matrix. Sweeps until
// the off-diagonal Frobenius norm drops below 1e-12. Input must be Hermitian
// within 1e-8 (entrywise), otherwise std::invalid_argument.
HermitianEig hermitian_eig(const ComplexMatrix& a);

// Eigenvalues only, ascending.
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& a);

double min_eigenvalue(const ComplexMatrix& a);
double max_eigenvalue(const ComplexMatrix& a);

}  // namespace elab::qcore

#endif
