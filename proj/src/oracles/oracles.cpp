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

#include "oracles/oracles.hpp"

#include <cmath>
#include <stdexcept>

#include "pauli/pauli.hpp"
#include "qcore/eig.hpp"

namespace elab::oracles {

using pauli::PauliString;
using qcore::cdouble;
using qcore::ComplexMatrix;
using qcore::DensityMatrix;
using qcore::Ket;

std::vector<states::Bipartition> all_bipartitions(std::size_t n) {
    if (n < 2) {
        throw std::invalid_argument("all_bipartitions: need at least 2 qubits");
    }
    std::vector<states::Bipartition> cuts;
    // Fixing qubit 0 inside part_a picks one representative per unordered cut.
    const std::size_t rest = n - 1;
    for (std::size_t mask = 0; mask + 1 < (std::size_t{1} << rest); ++mask) {
        std::vector<int> part_a{0};
        for (std::size_t q = 0; q < rest; ++q) {
            if ((mask >> q) & 1) {
                part_a.push_back(static_cast<int>(q) + 1);
            }
        }
        cuts.emplace_back(n, std::move(part_a));
    }
    return cuts;
}

double ppt_min_eigenvalue(const DensityMatrix& rho, const states::Bipartition& partition) {
    if (partition.n_qubits() != rho.n_qubits()) {
        throw std::invalid_argument("ppt_min_eigenvalue: partition size mismatch");
    }
    return qcore::min_eigenvalue(partial_transpose(rho, partition.part_a()));
}

PptReport ppt_report(const DensityMatrix& rho) {
    PptReport report;
    report.npt_all = true;
    for (auto& cut : all_bipartitions(rho.n_qubits())) {
        const double ev = ppt_min_eigenvalue(rho, cut);
        const bool npt = ev < kNptThreshold;
        report.npt_any = report.npt_any || npt;
        report.npt_all = report.npt_all && npt;
        report.per_partition.push_back(PartitionEigenvalue{cut, ev});
    }
    return report;
}

double witness_value(const DensityMatrix& rho, const WitnessSpec& w) {
    if (w.alpha <= 0.0 || w.alpha >= 1.0) {
        throw std::invalid_argument("witness_value: alpha must lie in (0, 1)");
    }
    if (w.target.dim() != rho.dim()) {
        throw std::invalid_argument("witness_value: target dimension mismatch");
    }
    // <psi|rho|psi>
    cdouble fidelity = 0.0;
    for (std::size_t r = 0; r < rho.dim(); ++r) {
        cdouble row = 0.0;
        for (std::size_t c = 0; c < rho.dim(); ++c) {
            row += rho.matrix()(r, c) * w.target.amplitude(c);
        }
        fidelity += std::conj(w.target.amplitude(r)) * row;
    }
    return w.alpha - fidelity.real();
}

double ghz_witness_alpha() { return 0.5; }

double w_witness_alpha(std::size_t n) {
    if (n < 2) {
        throw std::invalid_argument("w_witness_alpha: need at least 2 qubits");
    }
    // Largest squared Schmidt coefficient of the W state over any cut.
    return static_cast<double>(n - 1) / static_cast<double>(n);
}

double ghz3_local_witness_value(const DensityMatrix& rho) {
    if (rho.n_qubits() != 3) {
        throw std::invalid_argument("ghz3_local_witness_value: 3-qubit states only");
    }
    auto e = [&rho](const char* word) { return pauli::expectation(rho, PauliString(word)); };
    return (3.0
            - e("XXX")
            - (e("IZZ") + e("ZIZ") + e("ZZI"))
            + (e("XYY") + e("YXY") + e("YYX"))) / 8.0;
}

double chsh_value(const DensityMatrix& rho) {
    if (rho.n_qubits() != 2) {
        throw std::invalid_argument("chsh_value: 2-qubit states only");
    }
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    auto e = [&rho](const char* word) { return pauli::expectation(rho, PauliString(word)); };
    // a=Z, a'=X, b=(X-Z)/sqrt(2), b'=(X+Z)/sqrt(2).
    const double ab = (e("ZX") - e("ZZ")) * inv_sqrt2;
    const double abp = (e("ZX") + e("ZZ")) * inv_sqrt2;
    const double apb = (e("XX") - e("XZ")) * inv_sqrt2;
    const double apbp = (e("XX") + e("XZ")) * inv_sqrt2;
    return std::abs(ab - abp + apb + apbp);
}

std::vector<Ket> bell_states() {
    const double r = 1.0 / std::sqrt(2.0);
    return {
        Ket({r, 0.0, 0.0, r}),    // Phi+
        Ket({r, 0.0, 0.0, -r}),   // Phi-
        Ket({0.0, r, r, 0.0}),    // Psi+
        Ket({0.0, r, -r, 0.0}),   // Psi-
    };
}

double unfaithfulness_chi2(const DensityMatrix& rho) {
    if (rho.n_qubits() != 2) {
        throw std::invalid_argument("unfaithfulness_chi2: 2-qubit states only");
    }
    const DensityMatrix rho_a = partial_trace(rho, {0});
    const DensityMatrix rho_b = partial_trace(rho, {1});
    const ComplexMatrix eye2 = ComplexMatrix::identity(2);

    ComplexMatrix chi = rho.matrix();
    chi -= cdouble{0.5, 0.0} * qcore::tensor(rho_a.matrix(), eye2);
    chi -= cdouble{0.5, 0.0} * qcore::tensor(eye2, rho_b.matrix());
    chi += cdouble{0.5, 0.0} * ComplexMatrix::identity(4);
    return qcore::max_eigenvalue(chi);
}

}  // namespace elab::oracles
