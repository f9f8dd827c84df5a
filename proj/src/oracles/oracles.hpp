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

#ifndef ENTANGLE_LAB_ORACLES_ORACLES_HPP
#define ENTANGLE_LAB_ORACLES_ORACLES_HPP

#include <vector>

#include "qcore/density_matrix.hpp"
#include "qcore/ket.hpp"
#include "states/states.hpp"

namespace elab::oracles {

// Eigenvalues below this are treated as genuinely negative rather than
// eigensolver noise.
inline constexpr double kNptThreshold = -1e-9;

// alpha * 1 - |target><target|; a negative expectation certifies
// entanglement near the target.
struct WitnessSpec {
    double alpha;
    qcore::Ket target;
};

struct PartitionEigenvalue {
    states::Bipartition partition;
    double min_eigenvalue;
};

struct PptReport {
    std::vector<PartitionEigenvalue> per_partition;  // one entry per cut
    bool npt_any = false;  // entangled across at least one cut
    bool npt_all = false;  // entangled across every cut
};

// Every bipartition of {0..n-1} up to complement symmetry (part_a always
// contains qubit 0): 2^{n-1} - 1 cuts.
std::vector<states::Bipartition> all_bipartitions(std::size_t n);

// Smallest eigenvalue of the partial transpose across the given cut.
double ppt_min_eigenvalue(const qcore::DensityMatrix& rho, const states::Bipartition& partition);

PptReport ppt_report(const qcore::DensityMatrix& rho);

// alpha - <target|rho|target>.
double witness_value(const qcore::DensityMatrix& rho, const WitnessSpec& w);

// Standard projector-witness bounds: 1/2 for the GHZ family (any n >= 2,
// including the Bell pair) and (n-1)/n for the W family.
double ghz_witness_alpha();
double w_witness_alpha(std::size_t n);

// Same witness as witness_value(alpha=1/2, GHZ_3) but evaluated through its
// 8-term local Pauli decomposition. 3-qubit states only.
double ghz3_local_witness_value(const qcore::DensityMatrix& rho);

// |<ab> - <ab'> + <a'b> + <a'b'>| with a=Z, a'=X, b=(X-Z)/sqrt(2),
// b'=(X+Z)/sqrt(2). Values above 2 certify entanglement. 2-qubit states only.
double chsh_value(const qcore::DensityMatrix& rho);

// The four canonical Bell pairs, in the order Phi+, Phi-, Psi+, Psi-.
std::vector<qcore::Ket> bell_states();

// Maximum eigenvalue of rho - (rho_A (x) I + I (x) rho_B)/2 + I/2.
// Values above 1/2 mean some fidelity witness can detect the state
// (faithful); at or below 1/2 none can. 2-qubit states only.
double unfaithfulness_chi2(const qcore::DensityMatrix& rho);

}  // namespace elab::oracles

#endif
