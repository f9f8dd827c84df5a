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

#include "pauli/pauli.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace elab::pauli {

using qcore::cdouble;
using qcore::ComplexMatrix;

namespace {

constexpr char kLetterChars[4] = {'I', 'X', 'Y', 'Z'};

std::uint8_t letter_from_char(char c) {
    switch (c) {
        case 'I': return 0;
        case 'X': return 1;
        case 'Y': return 2;
        case 'Z': return 3;
        default:
            throw std::invalid_argument(std::string("PauliString: invalid letter '") + c + "'");
    }
}

}  // namespace

PauliString::PauliString(std::string_view text) {
    if (text.empty()) {
        throw std::invalid_argument("PauliString: empty text");
    }
    letters_.reserve(text.size());
    for (char c : text) {
        letters_.push_back(letter_from_char(c));
    }
}

PauliString::PauliString(std::vector<std::uint8_t> letters) : letters_(std::move(letters)) {
    if (letters_.empty()) {
        throw std::invalid_argument("PauliString: empty letter vector");
    }
    for (auto l : letters_) {
        if (l > 3) {
            throw std::invalid_argument("PauliString: letter code out of range");
        }
    }
}

PauliString PauliString::identity(std::size_t n) {
    return PauliString(std::vector<std::uint8_t>(n, 0));
}

std::size_t PauliString::weight() const {
    std::size_t w = 0;
    for (auto l : letters_) {
        w += (l != 0);
    }
    return w;
}

std::vector<int> PauliString::support() const {
    std::vector<int> s;
    for (std::size_t q = 0; q < letters_.size(); ++q) {
        if (letters_[q] != 0) {
            s.push_back(static_cast<int>(q));
        }
    }
    return s;
}

std::string PauliString::str() const {
    std::string s(letters_.size(), 'I');
    for (std::size_t q = 0; q < letters_.size(); ++q) {
        s[q] = kLetterChars[letters_[q]];
    }
    return s;
}

ComplexMatrix single_pauli_matrix(std::uint8_t letter) {
    ComplexMatrix m(2, 2);
    switch (letter) {
        case 0:
            m(0, 0) = 1.0;
            m(1, 1) = 1.0;
            break;
        case 1:
            m(0, 1) = 1.0;
            m(1, 0) = 1.0;
            break;
        case 2:
            m(0, 1) = cdouble{0.0, -1.0};
            m(1, 0) = cdouble{0.0, 1.0};
            break;
        case 3:
            m(0, 0) = 1.0;
            m(1, 1) = -1.0;
            break;
        default:
            throw std::invalid_argument("single_pauli_matrix: letter out of range");
    }
    return m;
}

ComplexMatrix pauli_matrix(const PauliString& p) {
    ComplexMatrix out = single_pauli_matrix(p.letter(0));
    for (std::size_t q = 1; q < p.size(); ++q) {
        out = qcore::tensor(out, single_pauli_matrix(p.letter(q)));
    }
    return out;
}

double expectation(const qcore::DensityMatrix& rho, const PauliString& p) {
    const std::size_t n = rho.n_qubits();
    if (p.size() != n) {
        throw std::invalid_argument("expectation: observable size does not match register");
    }
    const std::size_t d = rho.dim();

    // Bit mask of qubits whose letter flips the basis state (X or Y).
    std::size_t flip = 0;
    for (std::size_t q = 0; q < n; ++q) {
        if (p.letter(q) == 1 || p.letter(q) == 2) {
            flip |= std::size_t{1} << (n - 1 - q);
        }
    }

    // Tr(rho O) = sum_r rho(r, c) * O(c, r) with c = r ^ flip; the per-qubit
    // factors of O(c, r) come straight from the 2x2 entries.
    cdouble sum = 0.0;
    for (std::size_t r = 0; r < d; ++r) {
        const std::size_t c = r ^ flip;
        cdouble w{1.0, 0.0};
        for (std::size_t q = 0; q < n; ++q) {
            const std::size_t r_bit = (r >> (n - 1 - q)) & 1;
            switch (p.letter(q)) {
                case 0:
                    break;
                case 1:
                    break;
                case 2:
                    // Y(c,r): c=0,r=1 -> -i; c=1,r=0 -> +i. Here c_bit = !r_bit.
                    w *= r_bit ? cdouble{0.0, -1.0} : cdouble{0.0, 1.0};
                    break;
                case 3:
                    if (r_bit) {
                        w = -w;
                    }
                    break;
            }
        }
        sum += rho.matrix()(r, c) * w;
    }
    if (std::abs(sum.imag()) > 1e-10) {
        throw std::runtime_error("expectation: imaginary residual exceeds 1e-10");
    }
    return std::clamp(sum.real(), -1.0, 1.0);
}

std::vector<PauliString> enumerate_k_local(std::size_t n, std::size_t k) {
    if (k < 1 || k > n) {
        throw std::invalid_argument("enumerate_k_local: k must satisfy 1 <= k <= n");
    }
    std::vector<PauliString> out;
    std::vector<std::uint8_t> word(n, 0);
    // Counting in base 4 with the leftmost letter most significant visits
    // words in lexicographic order.
    while (true) {
        std::size_t pos = n;
        while (pos > 0) {
            --pos;
            if (word[pos] < 3) {
                ++word[pos];
                std::fill(word.begin() + static_cast<std::ptrdiff_t>(pos) + 1, word.end(),
                          std::uint8_t{0});
                break;
            }
            if (pos == 0) {
                return out;
            }
        }
        std::size_t weight = 0;
        for (auto l : word) {
            weight += (l != 0);
        }
        if (weight >= 1 && weight <= k) {
            out.emplace_back(word);
        }
    }
}

FeatureVector feature_vector(const qcore::DensityMatrix& rho,
                             const std::vector<PauliString>& observables) {
    FeatureVector fv;
    fv.observables = observables;
    fv.values.reserve(observables.size());
    for (const auto& p : observables) {
        fv.values.push_back(expectation(rho, p));
    }
    return fv;
}

void check_permutation(const std::vector<int>& perm, std::size_t n, const char* what) {
    if (perm.size() != n) {
        throw std::invalid_argument(std::string(what) + ": permutation size mismatch");
    }
    std::vector<bool> seen(n, false);
    for (int v : perm) {
        if (v < 0 || v >= static_cast<int>(n) || seen[static_cast<std::size_t>(v)]) {
            throw std::invalid_argument(std::string(what) + ": not a bijection of {0..n-1}");
        }
        seen[static_cast<std::size_t>(v)] = true;
    }
}

PauliString permute_pauli(const PauliString& p, const std::vector<int>& perm) {
    check_permutation(perm, p.size(), "permute_pauli");
    std::vector<std::uint8_t> letters(p.size(), 0);
    for (std::size_t q = 0; q < p.size(); ++q) {
        letters[static_cast<std::size_t>(perm[q])] = p.letter(q);
    }
    return PauliString(std::move(letters));
}

}  // namespace elab::pauli
