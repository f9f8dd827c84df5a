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

#ifndef ENTANGLE_LAB_QCORE_COMPLEX_MATRIX_HPP
#define ENTANGLE_LAB_QCORE_COMPLEX_MATRIX_HPP

#include <complex>
#include <cstddef>
#include <vector>

namespace elab::qcore {

using cdouble = std::complex<double>;

// Dense row-major complex matrix. Everything here is desk scale (dim <= 64),
// so plain O(n^3) kernels are fine and keep the code dependency-free.
class ComplexMatrix {
  public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), entries_(rows * cols) {}

    static ComplexMatrix identity(std::size_t dim);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    cdouble& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
    const cdouble& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

    const std::vector<cdouble>& entries() const { return entries_; }

    ComplexMatrix& operator+=(const ComplexMatrix& other);
    ComplexMatrix& operator-=(const ComplexMatrix& other);
    ComplexMatrix& operator*=(cdouble scalar);

    cdouble trace() const;
    double frobenius_norm() const;
    bool is_hermitian(double tol) const;
    bool is_unitary(double tol) const;

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cdouble> entries_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(cdouble scalar, ComplexMatrix a);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

// Kronecker product; the first factor lands on the more significant index
// bits, matching the qubit-0-is-MSB convention used throughout.
ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b);

// Conjugate transpose.
ComplexMatrix dagger(const ComplexMatrix& a);

// max_{r,c} |a(r,c) - b(r,c)|; infinity if shapes differ.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace elab::qcore

#endif
