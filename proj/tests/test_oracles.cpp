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

#include <cmath>

#include "doctest.h"
#include "oracle_helpers.hpp"
#include "oracles/oracles.hpp"
#include "states/states.hpp"

using namespace elab::oracles;
using elab::qcore::ComplexMatrix;
using elab::qcore::DensityMatrix;
using elab::qcore::Ket;
using elab::qcore::Rng;
using elab::states::Bipartition;
using elab::states::ghz;
using elab::states::mix_white_noise;
using elab::states::random_biseparable;
using elab::states::random_dm;
using elab::states::w_state;

namespace {

// Bisection on the white-noise weight where the detector changes sign.
template <typename Fn>
double noise_threshold(Fn&& detector) {
    double lo = 0.0, hi = 1.0;
    REQUIRE(detector(lo) < 0.0);
    REQUIRE(detector(hi) >= 0.0);
    while (hi - lo > 1e-9) {
        const double mid = 0.5 * (lo + hi);
        (detector(mid) < 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("bipartition enumeration") {
    CHECK(all_bipartitions(2).size() == 1);
    CHECK(all_bipartitions(3).size() == 3);
    CHECK(all_bipartitions(4).size() == 7);
    for (const auto& cut : all_bipartitions(4)) {
        CHECK(cut.part_a().front() == 0);  // complement representative
    }
}

TEST_CASE("ppt criterion") {
    const DensityMatrix bell = DensityMatrix::from_pure(ghz(2));
    CHECK(ppt_min_eigenvalue(bell, Bipartition(2, {0})) == doctest::Approx(-0.5).epsilon(1e-9));

    Rng rng(3);
    for (int i = 0; i < 20; ++i) {
        const Bipartition cut(3, {0, 2});
        CHECK(ppt_min_eigenvalue(random_biseparable(3, cut, rng), cut) >= -1e-9);
    }

    // White-noise GHZ_3 turns PPT on every cut above 0.8.
    CHECK_FALSE(ppt_report(mix_white_noise(ghz(3), 0.85)).npt_any);
    CHECK(ppt_report(mix_white_noise(ghz(3), 0.75)).npt_all);

    Rng prod_rng(5);
    const DensityMatrix product(
        3, elab::qcore::tensor(random_dm(1, prod_rng).matrix(),
                               elab::qcore::tensor(random_dm(1, prod_rng).matrix(),
                                                   random_dm(1, prod_rng).matrix())));
    CHECK_FALSE(ppt_report(product).npt_any);

    CHECK(ppt_report(mix_white_noise(w_state(4), 0.5)).npt_all);
}

TEST_CASE("ppt report is stable under qubit relabeling") {
    Rng rng(7);
    const DensityMatrix rho = random_dm(3, rng);
    const std::vector<int> perm{1, 2, 0};
    const DensityMatrix moved = elab::states::permute_qubits(rho, perm);
    for (const auto& cut : all_bipartitions(3)) {
        std::vector<int> moved_cut;
        for (int q : cut.part_a()) {
            moved_cut.push_back(perm[static_cast<std::size_t>(q)]);
        }
        const double before = ppt_min_eigenvalue(rho, cut);
        const double after = ppt_min_eigenvalue(moved, Bipartition(3, moved_cut));
        CHECK(before == doctest::Approx(after).epsilon(1e-10));
    }
}

TEST_CASE("projector fidelity witness") {
    const Ket g3 = ghz(3);
    const WitnessSpec ghz3_witness{ghz_witness_alpha(), g3};
    CHECK(witness_value(DensityMatrix::from_pure(g3), ghz3_witness) ==
          doctest::Approx(-0.5).epsilon(1e-12));

    SUBCASE("white-noise thresholds match the closed forms") {
        const double p_ghz3 = noise_threshold([&](double p) {
            return witness_value(mix_white_noise(g3, p), ghz3_witness);
        });
        CHECK(p_ghz3 == doctest::Approx(4.0 / 7.0).epsilon(1e-6));

        const Ket w3 = w_state(3);
        const double p_w3 = noise_threshold([&](double p) {
            return witness_value(mix_white_noise(w3, p), WitnessSpec{w_witness_alpha(3), w3});
        });
        CHECK(p_w3 == doctest::Approx(8.0 / 21.0).epsilon(1e-6));

        const Ket w4 = w_state(4);
        const double p_w4 = noise_threshold([&](double p) {
            return witness_value(mix_white_noise(w4, p), WitnessSpec{w_witness_alpha(4), w4});
        });
        CHECK(p_w4 == doctest::Approx(4.0 / 15.0).epsilon(1e-6));
    }

    SUBCASE("alpha bounds are the maximal product-state overlaps") {
        // Independent route: alternating power iteration over product kets.
        Rng rng(11);
        CHECK(testing_oracles::max_biseparable_overlap(g3, 40, rng) ==
              doctest::Approx(0.5).epsilon(1e-6));
        CHECK(testing_oracles::max_biseparable_overlap(ghz(4), 40, rng) ==
              doctest::Approx(0.5).epsilon(1e-6));
        CHECK(testing_oracles::max_biseparable_overlap(w_state(3), 40, rng) ==
              doctest::Approx(2.0 / 3.0).epsilon(1e-6));
        CHECK(testing_oracles::max_biseparable_overlap(w_state(4), 40, rng) ==
              doctest::Approx(3.0 / 4.0).epsilon(1e-6));
    }

    SUBCASE("argument checks") {
        CHECK_THROWS_AS(witness_value(DensityMatrix::from_pure(g3), WitnessSpec{1.5, g3}),
                        std::invalid_argument);
        CHECK_THROWS_AS(witness_value(DensityMatrix::from_pure(ghz(2)), ghz3_witness),
                        std::invalid_argument);
    }
}

TEST_CASE("local decomposition of the 3-qubit witness") {
    CHECK(ghz3_local_witness_value(DensityMatrix::from_pure(ghz(3))) ==
          doctest::Approx(-0.5).epsilon(1e-12));
    CHECK(ghz3_local_witness_value(DensityMatrix::maximally_mixed(3)) ==
          doctest::Approx(3.0 / 8.0).epsilon(1e-12));

    const WitnessSpec projector{0.5, ghz(3)};
    Rng rng(13);
    for (int i = 0; i < 200; ++i) {
        const DensityMatrix rho = random_dm(3, rng);
        CHECK(std::abs(ghz3_local_witness_value(rho) - witness_value(rho, projector)) < 1e-10);
    }

    CHECK_THROWS_AS(ghz3_local_witness_value(DensityMatrix::maximally_mixed(2)),
                    std::invalid_argument);
}

TEST_CASE("chsh") {
    // Brute force over the four Bell pairs picks out the maximal violation.
    double best = 0.0;
    for (const auto& bell : bell_states()) {
        best = std::max(best, chsh_value(DensityMatrix::from_pure(bell)));
    }
    CHECK(best == doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-12));

    CHECK(chsh_value(DensityMatrix::maximally_mixed(2)) == doctest::Approx(0.0));

    SUBCASE("white-noise violation window closes at 1 - 1/sqrt(2)") {
        Ket maximizer = bell_states()[0];
        double best_val = 0.0;
        for (const auto& bell : bell_states()) {
            const double v = chsh_value(DensityMatrix::from_pure(bell));
            if (v > best_val) {
                best_val = v;
                maximizer = bell;
            }
        }
        const double p_star = noise_threshold([&](double p) {
            return 2.0 - chsh_value(mix_white_noise(maximizer, p));
        });
        CHECK(p_star == doctest::Approx(1.0 - 1.0 / std::sqrt(2.0)).epsilon(1e-6));
    }

    CHECK_THROWS_AS(chsh_value(DensityMatrix::maximally_mixed(3)), std::invalid_argument);
}

TEST_CASE("two-qubit unfaithfulness") {
    CHECK(unfaithfulness_chi2(DensityMatrix::maximally_mixed(2)) ==
          doctest::Approx(0.25).epsilon(1e-10));
    CHECK(unfaithfulness_chi2(DensityMatrix::from_pure(ghz(2))) ==
          doctest::Approx(1.0).epsilon(1e-10));

    SUBCASE("faithful implies NPT over a large random sample") {
        Rng rng(17);
        int faithful_and_ppt = 0;
        int unfaithful_and_npt = 0;
        for (int i = 0; i < 10000; ++i) {
            const DensityMatrix rho = random_dm(2, rng);
            const bool faithful = unfaithfulness_chi2(rho) > 0.5 + 1e-9;
            const bool npt = ppt_min_eigenvalue(rho, Bipartition(2, {0})) < -1e-9;
            faithful_and_ppt += (faithful && !npt);
            unfaithful_and_npt += (!faithful && npt);
        }
        CHECK(faithful_and_ppt == 0);
        CHECK(unfaithful_and_npt > 0);
    }

    CHECK_THROWS_AS(unfaithfulness_chi2(DensityMatrix::maximally_mixed(3)),
                    std::invalid_argument);
}

TEST_CASE("separable soundness across detectors") {
    Rng rng(19);
    const Bipartition cut(2, {0});
    const WitnessSpec bell_witness{ghz_witness_alpha(), ghz(2)};
    for (int i = 0; i < 10000; ++i) {
        const DensityMatrix rho = random_biseparable(2, cut, rng);
        CHECK(ppt_min_eigenvalue(rho, cut) >= -1e-9);
        CHECK(witness_value(rho, bell_witness) >= -1e-9);
    }
}
