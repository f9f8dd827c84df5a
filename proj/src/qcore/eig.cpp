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

#include "qcore/eig.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace elab::qcore {

namespace {

double off_diagonal_norm(const ComplexMatrix& a) {
    double s = 0.0;
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t c = 0; c < a.cols(); ++c) {
            if (r != c) {
                s += std::norm(a(r, c));
            }
        }
    }
    return std::sqrt(s);
}

}  // namespace

HermitianEig hermitian_eig(const ComplexMatrix& input) {
    if (!input.is_square()) {
        throw std::invalid_argument("hermitian_eig: matrix not square");
    }
    if (!input.is_hermitian(1e-8)) {
        throw std::invalid_argument("hermitian_eig: matrix not Hermitian within 1e-8");
    }
    const std::size_t n = input.rows();

    // Symmetrize to remove sub-tolerance asymmetry before iterating.
    ComplexMatrix a(n, n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            a(r, c) = 0.5 * (input(r, c) + std::conj(input(c, r)));
        }
    }

    ComplexMatrix v = ComplexMatrix::identity(n);
    constexpr double kOffTarget = 1e-12;
    constexpr int kMaxSweeps = 128;

    int sweep = 0;
    while (off_diagonal_norm(a) > kOffTarget && sweep < kMaxSweeps) {
        ++sweep;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const cdouble apq = a(p, q);
                const double m = std::abs(apq);
                if (m < 1e-300) {
                    continue;
                }
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const cdouble phase = apq / m;

                // Rotation angle for the phased 2x2 block; the smaller root of
                // t^2 - 2*theta*t - 1 = 0 keeps the update stable.
                const double theta = (aqq - app) / (2.0 * m);
                const double t = (theta >= 0.0 ? -1.0 : 1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                const cdouble sf = s * phase;              // acts on column q
                const cdouble sfc = s * std::conj(phase);  // acts on column p

                a(p, p) = app + t * m;
                a(q, q) = aqq - t * m;
                a(p, q) = 0.0;
                a(q, p) = 0.0;

                for (std::size_t k = 0; k < n; ++k) {
                    if (k == p || k == q) {
                        continue;
                    }
                    const cdouble akp = a(k, p);
                    const cdouble akq = a(k, q);
                    a(k, p) = akp * c + akq * sfc;
                    a(k, q) = -akp * sf + akq * c;
                    a(p, k) = std::conj(a(k, p));
                    a(q, k) = std::conj(a(k, q));
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const cdouble vkp = v(k, p);
                    const cdouble vkq = v(k, q);
                    v(k, p) = vkp * c + vkq * sfc;
                    v(k, q) = -vkp * sf + vkq * c;
                }
            }
        }
    }
    if (off_diagonal_norm(a) > 1e-9 * std::max(1.0, input.frobenius_norm())) {
        throw std::runtime_error("hermitian_eig: Jacobi sweep did not converge");
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&a](std::size_t i, std::size_t j) {
        return a(i, i).real() < a(j, j).real();
    });

    HermitianEig out;
    out.values.resize(n);
    out.vectors = ComplexMatrix(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        out.values[k] = a(order[k], order[k]).real();
        for (std::size_t r = 0; r < n; ++r) {
            out.vectors(r, k) = v(r, order[k]);
        }
    }
    return out;
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& a) {
    return hermitian_eig(a).values;
}

double min_eigenvalue(const ComplexMatrix& a) {
    return hermitian_eigenvalues(a).front();
}

double max_eigenvalue(const ComplexMatrix& a) {
    return hermitian_eigenvalues(a).back();
}

}  // namespace elab::qcore
