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

#include "shadows/shadows.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace elab::shadows {

using pauli::PauliString;
using qcore::cdouble;
using qcore::ComplexMatrix;
using qcore::DensityMatrix;
using qcore::Rng;

namespace {

constexpr char kBasisChars[3] = {'X', 'Y', 'Z'};

// Basis-change unitaries: V |eigenstate(+1)> = |0>.
ComplexMatrix basis_change(char basis) {
    const double r = 1.0 / std::sqrt(2.0);
    ComplexMatrix v(2, 2);
    switch (basis) {
        case 'X':
            v(0, 0) = r;
            v(0, 1) = r;
            v(1, 0) = r;
            v(1, 1) = -r;
            break;
        case 'Y':
            v(0, 0) = r;
            v(0, 1) = cdouble{0.0, -r};
            v(1, 0) = r;
            v(1, 1) = cdouble{0.0, r};
            break;
        case 'Z':
            v = ComplexMatrix::identity(2);
            break;
        default:
            throw std::invalid_argument("basis_change: letter must be X, Y, or Z");
    }
    return v;
}

// Pauli letter codes (1=X, 2=Y, 3=Z) against basis chars.
bool letter_matches(std::uint8_t letter, char basis) {
    return (letter == 1 && basis == 'X') || (letter == 2 && basis == 'Y') ||
           (letter == 3 && basis == 'Z');
}

std::string word_basis_for(const PauliString& p) {
    std::string word(p.size(), 'Z');
    for (std::size_t q = 0; q < p.size(); ++q) {
        switch (p.letter(q)) {
            case 1: word[q] = 'X'; break;
            case 2: word[q] = 'Y'; break;
            default: break;  // Z for both Z and I positions
        }
    }
    return word;
}

// Cumulative outcome distribution of the register measured in the given
// basis word. Cached by callers keyed on the word.
std::vector<double> cumulative_probs(const DensityMatrix& rho, const std::string& word) {
    ComplexMatrix u = basis_change(word[0]);
    for (std::size_t q = 1; q < word.size(); ++q) {
        u = qcore::tensor(u, basis_change(word[q]));
    }
    const std::size_t d = rho.dim();
    std::vector<double> cum(d, 0.0);
    double total = 0.0;
    for (std::size_t b = 0; b < d; ++b) {
        cdouble acc = 0.0;
        for (std::size_t i = 0; i < d; ++i) {
            cdouble row = 0.0;
            for (std::size_t j = 0; j < d; ++j) {
                row += rho.matrix()(i, j) * std::conj(u(b, j));
            }
            acc += u(b, i) * row;
        }
        total += std::max(0.0, acc.real());
        cum[b] = total;
    }
    if (std::abs(total - 1.0) > 1e-6) {
        throw std::runtime_error("collect_shadow: outcome probabilities do not sum to one");
    }
    for (auto& c : cum) {
        c /= total;
    }
    return cum;
}

std::uint64_t sample_from_cumulative(const std::vector<double>& cum, Rng& rng) {
    const double r = rng.uniform();
    const auto it = std::upper_bound(cum.begin(), cum.end(), r);
    return static_cast<std::uint64_t>(std::min<std::ptrdiff_t>(
        it - cum.begin(), static_cast<std::ptrdiff_t>(cum.size()) - 1));
}

}  // namespace

MeasurementPlan sample_random_plan(std::size_t n, std::size_t r_rounds, Rng& rng) {
    if (n < 1 || r_rounds < 1) {
        throw std::invalid_argument("sample_random_plan: need n >= 1 and r_rounds >= 1");
    }
    MeasurementPlan plan;
    plan.n_qubits = n;
    plan.scheme = Scheme::Randomized;
    plan.rounds.reserve(r_rounds);
    for (std::size_t r = 0; r < r_rounds; ++r) {
        std::string word(n, 'Z');
        for (std::size_t q = 0; q < n; ++q) {
            word[q] = kBasisChars[rng.below(3)];
        }
        plan.rounds.push_back(std::move(word));
    }
    return plan;
}

MeasurementPlan derandomize_plan(const std::vector<PauliString>& observables,
                                 std::size_t r_rounds, double epsilon) {
    if (observables.empty()) {
        throw std::invalid_argument("derandomize_plan: observable list is empty");
    }
    if (r_rounds < 1) {
        throw std::invalid_argument("derandomize_plan: need r_rounds >= 1");
    }
    const std::size_t n = observables.front().size();
    for (const auto& o : observables) {
        if (o.size() != n) {
            throw std::invalid_argument("derandomize_plan: observables must share one register");
        }
        if (o.is_identity()) {
            throw std::invalid_argument("derandomize_plan: identity observable not allowed");
        }
    }
    const std::size_t m = observables.size();
    const double nu = 1.0 - std::exp(-epsilon * epsilon / 2.0);

    // Per observable: product of (1 - nu*hit) over completed rounds, and the
    // per-round hit probability before any letter is fixed.
    std::vector<double> done_prod(m, 1.0);
    std::vector<double> fresh_hit(m);
    for (std::size_t o = 0; o < m; ++o) {
        fresh_hit[o] = std::pow(1.0 / 3.0, static_cast<double>(observables[o].weight()));
    }

    MeasurementPlan plan;
    plan.n_qubits = n;
    plan.scheme = Scheme::Derandomized;
    plan.rounds.reserve(r_rounds);

    std::vector<bool> conflict(m);
    std::vector<int> undecided(m);
    std::vector<double> future_pow(m);

    for (std::size_t r = 0; r < r_rounds; ++r) {
        const double rounds_left = static_cast<double>(r_rounds - r - 1);
        for (std::size_t o = 0; o < m; ++o) {
            conflict[o] = false;
            undecided[o] = static_cast<int>(observables[o].weight());
            future_pow[o] = std::pow(1.0 - nu * fresh_hit[o], rounds_left);
        }

        std::string word(n, 'Z');
        for (std::size_t q = 0; q < n; ++q) {
            double best_cost = 0.0;
            char best_letter = 0;
            for (char candidate : {'Z', 'X', 'Y'}) {
                double cost = 0.0;
                for (std::size_t o = 0; o < m; ++o) {
                    const std::uint8_t letter = observables[o].letter(q);
                    bool conf = conflict[o];
                    int und = undecided[o];
                    if (letter != 0) {
                        if (letter_matches(letter, candidate)) {
                            --und;
                        } else {
                            conf = true;
                        }
                    }
                    const double hit_prob =
                        conf ? 0.0 : std::pow(1.0 / 3.0, static_cast<double>(und));
                    cost += done_prod[o] * (1.0 - nu * hit_prob) * future_pow[o];
                }
                if (best_letter == 0 || cost < best_cost) {
                    best_cost = cost;
                    best_letter = candidate;
                }
            }
            word[q] = best_letter;
            for (std::size_t o = 0; o < m; ++o) {
                const std::uint8_t letter = observables[o].letter(q);
                if (letter != 0) {
                    if (letter_matches(letter, best_letter)) {
                        --undecided[o];
                    } else {
                        conflict[o] = true;
                    }
                }
            }
        }

        for (std::size_t o = 0; o < m; ++o) {
            if (!conflict[o]) {
                done_prod[o] *= 1.0 - nu;  // full hit this round
            }
        }

        // The weights only matter up to a common scale; renormalize before
        // long runs drive every product into underflow and erase the
        // ranking.
        double top = 0.0;
        for (double w : done_prod) {
            top = std::max(top, w);
        }
        if (top < 1e-200) {
            const double scale = top > 0.0 ? 1.0 / top : 0.0;
            for (double& w : done_prod) {
                w = scale > 0.0 ? w * scale : 1.0;
            }
        }
        plan.rounds.push_back(std::move(word));
    }
    return plan;
}

ShadowSet collect_shadow(const DensityMatrix& rho, const MeasurementPlan& plan, Rng& rng) {
    if (plan.n_qubits != rho.n_qubits()) {
        throw std::invalid_argument("collect_shadow: plan register size mismatch");
    }
    const std::size_t n = rho.n_qubits();

    ShadowSet shadow;
    shadow.n_qubits = n;
    shadow.scheme = plan.scheme;
    shadow.snapshots.reserve(plan.rounds.size());

    // Only 3^n distinct basis words exist; cache each word's distribution.
    std::map<std::string, std::vector<double>> cache;
    const std::uint64_t base_seed = rng.u64();

    for (std::size_t r = 0; r < plan.rounds.size(); ++r) {
        const std::string& word = plan.rounds[r];
        if (word.size() != n) {
            throw std::invalid_argument("collect_shadow: basis word length mismatch");
        }
        auto it = cache.find(word);
        if (it == cache.end()) {
            it = cache.emplace(word, cumulative_probs(rho, word)).first;
        }
        Rng round_rng(qcore::derive_seed(base_seed, r));
        const std::uint64_t outcome = sample_from_cumulative(it->second, round_rng);
        shadow.snapshots.push_back(Snapshot{word, qcore::bits_to_string(outcome, n)});
    }
    return shadow;
}

PauliEstimate estimate_pauli(const ShadowSet& shadow, const PauliString& p) {
    if (shadow.snapshots.empty()) {
        throw std::invalid_argument("estimate_pauli: empty shadow");
    }
    if (p.size() != shadow.n_qubits) {
        throw std::invalid_argument("estimate_pauli: observable size mismatch");
    }
    if (p.is_identity()) {
        throw std::invalid_argument("estimate_pauli: identity observable not allowed");
    }
    const std::vector<int> support = p.support();

    double sum = 0.0;
    std::size_t hits = 0;
    for (const auto& snap : shadow.snapshots) {
        double value = 1.0;
        bool hit = true;
        for (int q : support) {
            const auto uq = static_cast<std::size_t>(q);
            if (!letter_matches(p.letter(uq), snap.bases[uq])) {
                hit = false;
                break;
            }
            if (snap.bits[uq] == '1') {
                value = -value;
            }
        }
        if (!hit) {
            continue;
        }
        ++hits;
        sum += value;
    }

    if (shadow.scheme == Scheme::Randomized) {
        // Inverse-channel factor 3 per support qubit; misses count as zero.
        const double scale = std::pow(3.0, static_cast<double>(support.size()));
        return PauliEstimate{scale * sum / static_cast<double>(shadow.snapshots.size()), hits == 0};
    }
    if (hits == 0) {
        return PauliEstimate{0.0, true};
    }
    return PauliEstimate{sum / static_cast<double>(hits), false};
}

std::vector<double> independent_estimate(const DensityMatrix& rho,
                                         const std::vector<PauliString>& observables,
                                         std::size_t total_samples, Rng& rng) {
    if (observables.empty()) {
        throw std::invalid_argument("independent_estimate: observable list is empty");
    }
    if (total_samples < observables.size()) {
        throw std::invalid_argument("independent_estimate: budget smaller than observable count");
    }
    const std::size_t n = rho.n_qubits();
    const std::size_t shots = total_samples / observables.size();

    std::vector<double> out;
    out.reserve(observables.size());
    for (const auto& p : observables) {
        if (p.size() != n) {
            throw std::invalid_argument("independent_estimate: observable size mismatch");
        }
        const std::vector<double> cum = cumulative_probs(rho, word_basis_for(p));
        const std::vector<int> support = p.support();
        double sum = 0.0;
        for (std::size_t s = 0; s < shots; ++s) {
            const std::uint64_t outcome = sample_from_cumulative(cum, rng);
            double value = 1.0;
            for (int q : support) {
                if ((outcome >> (n - 1 - static_cast<std::size_t>(q))) & 1) {
                    value = -value;
                }
            }
            sum += value;
        }
        out.push_back(sum / static_cast<double>(shots));
    }
    return out;
}

SquaredError avg_squared_error(std::span<const double> estimates, std::span<const double> truths) {
    if (estimates.size() != truths.size() || estimates.empty()) {
        throw std::invalid_argument("avg_squared_error: length mismatch or empty input");
    }
    SquaredError out;
    out.per_observable.reserve(estimates.size());
    for (std::size_t i = 0; i < estimates.size(); ++i) {
        const double d = estimates[i] - truths[i];
        out.per_observable.push_back(d * d);
        out.mean += d * d;
    }
    out.mean /= static_cast<double>(estimates.size());
    return out;
}

}  // namespace elab::shadows
