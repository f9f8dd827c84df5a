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

#include "states/states.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "oracles/oracles.hpp"
#include "pauli/pauli.hpp"

namespace elab::states {

using qcore::cdouble;
using qcore::ComplexMatrix;
using qcore::DensityMatrix;
using qcore::Ket;
using qcore::Rng;

Bipartition::Bipartition(std::size_t n_qubits, std::vector<int> part_a)
    : n_qubits_(n_qubits), part_a_(std::move(part_a)) {
    std::sort(part_a_.begin(), part_a_.end());
    if (part_a_.empty() || part_a_.size() >= n_qubits_) {
        throw std::invalid_argument("Bipartition: part_a must be a nonempty proper subset");
    }
    for (std::size_t i = 0; i < part_a_.size(); ++i) {
        if (part_a_[i] < 0 || part_a_[i] >= static_cast<int>(n_qubits_)) {
            throw std::invalid_argument("Bipartition: qubit index out of range");
        }
        if (i > 0 && part_a_[i] == part_a_[i - 1]) {
            throw std::invalid_argument("Bipartition: duplicate qubit index");
        }
    }
}

std::vector<int> Bipartition::part_b() const {
    std::vector<int> b;
    for (std::size_t q = 0; q < n_qubits_; ++q) {
        if (!std::binary_search(part_a_.begin(), part_a_.end(), static_cast<int>(q))) {
            b.push_back(static_cast<int>(q));
        }
    }
    return b;
}

std::string state_class_name(StateClass c) {
    switch (c) {
        case StateClass::GhzNoisy: return "GHZ_NOISY";
        case StateClass::WNoisy: return "W_NOISY";
        case StateClass::BellNoisy: return "BELL_NOISY";
        case StateClass::Separable: return "SEPARABLE";
        case StateClass::Random: return "RANDOM";
    }
    throw std::logic_error("state_class_name: unknown class");
}

StateClass state_class_from_name(const std::string& name) {
    if (name == "GHZ_NOISY") return StateClass::GhzNoisy;
    if (name == "W_NOISY") return StateClass::WNoisy;
    if (name == "BELL_NOISY") return StateClass::BellNoisy;
    if (name == "SEPARABLE") return StateClass::Separable;
    if (name == "RANDOM") return StateClass::Random;
    throw std::invalid_argument("unknown state class: " + name);
}

Ket ghz(std::size_t n) {
    if (n < 2) {
        throw std::invalid_argument("ghz: need at least 2 qubits");
    }
    std::vector<cdouble> amps(std::size_t{1} << n);
    const double r = 1.0 / std::sqrt(2.0);
    amps.front() = r;
    amps.back() = r;
    return Ket(std::move(amps));
}

Ket ghz_coherent(std::size_t n, double theta, double phi) {
    if (n < 2) {
        throw std::invalid_argument("ghz_coherent: need at least 2 qubits");
    }
    std::vector<cdouble> amps(std::size_t{1} << n);
    amps.front() = std::cos(theta);
    amps.back() = std::polar(std::sin(theta), phi);
    return Ket::normalized(std::move(amps));
}

Ket w_state(std::size_t n) {
    if (n < 2) {
        throw std::invalid_argument("w_state: need at least 2 qubits");
    }
    std::vector<cdouble> amps(std::size_t{1} << n);
    const double r = 1.0 / std::sqrt(static_cast<double>(n));
    for (std::size_t q = 0; q < n; ++q) {
        amps[std::size_t{1} << q] = r;
    }
    return Ket(std::move(amps));
}

DensityMatrix mix_white_noise(const Ket& pure, double p_noise) {
    return mix_white_noise(DensityMatrix::from_pure(pure), p_noise);
}

DensityMatrix mix_white_noise(const DensityMatrix& rho, double p_noise) {
    if (p_noise < 0.0 || p_noise > 1.0) {
        throw std::invalid_argument("mix_white_noise: p_noise must be in [0, 1]");
    }
    const std::size_t d = rho.dim();
    ComplexMatrix m = rho.matrix();
    m *= cdouble{1.0 - p_noise, 0.0};
    const double diag = p_noise / static_cast<double>(d);
    for (std::size_t i = 0; i < d; ++i) {
        m(i, i) += diag;
    }
    return DensityMatrix(rho.n_qubits(), std::move(m));
}

Ket random_pure(std::size_t n, Rng& rng) {
    if (n < 1) {
        throw std::invalid_argument("random_pure: need at least 1 qubit");
    }
    std::vector<cdouble> amps(std::size_t{1} << n);
    for (auto& a : amps) {
        a = cdouble{rng.normal(), rng.normal()};
    }
    return Ket::normalized(std::move(amps));
}

DensityMatrix random_dm(std::size_t n, Rng& rng) {
    if (n < 1) {
        throw std::invalid_argument("random_dm: need at least 1 qubit");
    }
    const std::size_t d = std::size_t{1} << n;
    ComplexMatrix g(d, d);
    for (std::size_t r = 0; r < d; ++r) {
        for (std::size_t c = 0; c < d; ++c) {
            g(r, c) = cdouble{rng.normal(), rng.normal()};
        }
    }
    ComplexMatrix rho = g * qcore::dagger(g);
    const double tr = rho.trace().real();
    rho *= cdouble{1.0 / tr, 0.0};
    // Clean up rounding on the off-diagonal conjugate pairs.
    for (std::size_t r = 0; r < d; ++r) {
        rho(r, r) = rho(r, r).real();
        for (std::size_t c = r + 1; c < d; ++c) {
            const cdouble avg = 0.5 * (rho(r, c) + std::conj(rho(c, r)));
            rho(r, c) = avg;
            rho(c, r) = std::conj(avg);
        }
    }
    return DensityMatrix(n, std::move(rho));
}

DensityMatrix random_biseparable(std::size_t n, const Bipartition& partition, Rng& rng) {
    if (partition.n_qubits() != n) {
        throw std::invalid_argument("random_biseparable: partition size mismatch");
    }
    const std::vector<int> a = partition.part_a();
    const std::vector<int> b = partition.part_b();
    const DensityMatrix rho_a = random_dm(a.size(), rng);
    const DensityMatrix rho_b = random_dm(b.size(), rng);
    const DensityMatrix product(n, qcore::tensor(rho_a.matrix(), rho_b.matrix()));

    // The tensor product puts part_a on qubits 0..|A|-1; move everything to
    // its declared position.
    std::vector<int> perm(n, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        perm[i] = a[i];
    }
    for (std::size_t i = 0; i < b.size(); ++i) {
        perm[a.size() + i] = b[i];
    }
    return permute_qubits(product, perm);
}

DensityMatrix permute_qubits(const DensityMatrix& rho, const std::vector<int>& perm) {
    const std::size_t n = rho.n_qubits();
    pauli::check_permutation(perm, n, "permute_qubits");

    const std::size_t d = rho.dim();
    std::vector<std::size_t> map(d, 0);
    for (std::size_t idx = 0; idx < d; ++idx) {
        std::size_t out = 0;
        for (std::size_t q = 0; q < n; ++q) {
            const std::size_t bit = (idx >> (n - 1 - q)) & 1;
            out |= bit << (n - 1 - static_cast<std::size_t>(perm[q]));
        }
        map[idx] = out;
    }
    ComplexMatrix m(d, d);
    for (std::size_t r = 0; r < d; ++r) {
        for (std::size_t c = 0; c < d; ++c) {
            m(map[r], map[c]) = rho.matrix()(r, c);
        }
    }
    return DensityMatrix(n, std::move(m));
}

NoiseRanges default_ghz_ranges() {
    constexpr double kPi = 3.14159265358979323846;
    return NoiseRanges{0.0, kPi / 3.0, 0.0, 0.6 * kPi, 0.0, 0.1};
}

NoiseRanges default_w_ranges() { return NoiseRanges{0.0, 0.0, 0.0, 0.0, 0.0, 0.5}; }

NoiseRanges default_bell_ranges() { return NoiseRanges{0.0, 0.0, 0.0, 0.0, 0.0, 1.0 / 3.0}; }

namespace {

// Builds one record's state from an explicit parameter draw.
DensityMatrix build_entangled(StateClass cls, std::size_t n, const NoiseParams& p) {
    switch (cls) {
        case StateClass::GhzNoisy:
            return mix_white_noise(ghz_coherent(n, p.theta, p.phi), p.p_noise);
        case StateClass::WNoisy:
            return mix_white_noise(w_state(n), p.p_noise);
        case StateClass::BellNoisy:
            if (n != 2) {
                throw std::invalid_argument("BELL_NOISY requires a 2-qubit register");
            }
            return mix_white_noise(ghz(2), p.p_noise);
        default:
            throw std::logic_error("build_entangled: not an entangled class");
    }
}

GeneratedState generate_record(const ClassSpec& cs, std::size_t n, std::uint64_t record_seed) {
    Rng rng(record_seed);
    StateRecord rec;
    rec.cls = cs.cls;
    rec.seed = record_seed;
    rec.partition = cs.partition;

    switch (cs.cls) {
        case StateClass::Separable: {
            if (!cs.partition) {
                throw std::invalid_argument("make_dataset: SEPARABLE class needs a partition");
            }
            rec.label = +1;
            return GeneratedState{rec, random_biseparable(n, *cs.partition, rng)};
        }
        case StateClass::Random: {
            DensityMatrix rho = random_dm(n, rng);
            // Exact labeling for 2 qubits; for larger registers this labels
            // by the one-sided NPT certificate.
            rec.label = oracles::ppt_report(rho).npt_any ? -1 : +1;
            return GeneratedState{rec, std::move(rho)};
        }
        default: {
            rec.label = -1;
            // Redraw degenerate parameter draws (e.g. theta near 0) that
            // produce a state PPT on every cut; labeling those -1 would
            // poison training.
            for (int attempt = 0; attempt < 1000; ++attempt) {
                NoiseParams p;
                if (cs.cls == StateClass::GhzNoisy) {
                    p.theta = rng.uniform(cs.noise.theta_min, cs.noise.theta_max);
                    p.phi = rng.uniform(cs.noise.phi_min, cs.noise.phi_max);
                }
                p.p_noise = rng.uniform(cs.noise.p_min, cs.noise.p_max);
                DensityMatrix rho = build_entangled(cs.cls, n, p);
                if (oracles::ppt_report(rho).npt_any) {
                    rec.noise = p;
                    return GeneratedState{rec, std::move(rho)};
                }
            }
            throw std::runtime_error(
                "make_dataset: could not draw an NPT state after 1000 attempts; "
                "check the configured noise ranges");
        }
    }
}

}  // namespace

std::vector<GeneratedState> make_dataset(const DatasetSpec& spec) {
    if (spec.classes.empty()) {
        throw std::invalid_argument("make_dataset: class list is empty");
    }
    for (const auto& cs : spec.classes) {
        if (cs.count < 1) {
            throw std::invalid_argument("make_dataset: class count must be >= 1");
        }
    }
    std::vector<GeneratedState> out;
    std::size_t global_index = 0;
    for (const auto& cs : spec.classes) {
        for (std::size_t i = 0; i < cs.count; ++i, ++global_index) {
            out.push_back(generate_record(cs, spec.n_qubits,
                                          qcore::derive_seed(spec.seed, global_index)));
        }
    }
    return out;
}

DensityMatrix regenerate_state(std::size_t n_qubits, const StateRecord& record) {
    Rng rng(record.seed);
    switch (record.cls) {
        case StateClass::Separable:
            if (!record.partition) {
                throw std::invalid_argument("regenerate_state: record lacks a partition");
            }
            return random_biseparable(n_qubits, *record.partition, rng);
        case StateClass::Random:
            return random_dm(n_qubits, rng);
        default:
            // Entangled classes are fully determined by the accepted
            // parameters; no stream replay needed.
            return build_entangled(record.cls, n_qubits, record.noise);
    }
}

}  // namespace elab::states
