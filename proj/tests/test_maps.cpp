// Copyright 2026 The qmaps Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <random>

#include "qmaps/channels.hpp"
#include "qmaps/errors.hpp"
#include "qmaps/maps.hpp"
#include "qmaps/random.hpp"
#include "qmaps/states.hpp"
#include "test_support.hpp"

namespace qmaps {
namespace {

using testing::kSeed;
constexpr Complex kI{0.0, 1.0};

QuantumMap transpose_map() { return QuantumMap::from_bform(swap_gate(2), 2, 2); }

// Values from the numpy oracle: solve tr(D_i^dag rho_j) = delta_ij directly.
TEST(DualBasis, MatchesOracleForPlusYZeroMinus) {
  const std::vector<ComplexMatrix> basis{pi_plus(), pi_plus_i(), pi0(), pi_minus()};
  const auto duals = dual_basis(basis);
  ASSERT_EQ(duals.size(), 4u);
  const ComplexMatrix d1 = 0.5 * ComplexMatrix{{0.0, 1.0 + kI}, {1.0 - kI, 2.0}};
  const ComplexMatrix d2{{0.0, -kI}, {kI, 0.0}};
  const ComplexMatrix d3{{1.0, 0.0}, {0.0, -1.0}};
  const ComplexMatrix d4 = 0.5 * ComplexMatrix{{0.0, -1.0 + kI}, {-1.0 - kI, 2.0}};
  EXPECT_MATRIX_NEAR(duals[0], d1, 1e-12);
  EXPECT_MATRIX_NEAR(duals[1], d2, 1e-12);
  EXPECT_MATRIX_NEAR(duals[2], d3, 1e-12);
  EXPECT_MATRIX_NEAR(duals[3], d4, 1e-12);
}

TEST(DualBasis, BiorthogonalForGeneratedFrames) {
  for (std::size_t d : {2u, 3u, 4u}) {
    const auto basis = state_basis(d);
    const auto duals = dual_basis(basis);
    for (std::size_t i = 0; i < basis.size(); ++i)
      for (std::size_t j = 0; j < basis.size(); ++j)
        EXPECT_NEAR(std::abs(hs_inner(duals[i], basis[j]) - (i == j ? 1.0 : 0.0)), 0.0, 1e-10)
            << "d=" << d << " i=" << i << " j=" << j;
  }
}

TEST(DualBasis, RejectsDependentSet) {
  const std::vector<ComplexMatrix> dependent{pi0(), pi1(), pi_plus(), pi_minus()};
  EXPECT_THROW(dual_basis(dependent), ValidationError);
}

TEST(Convert, IdentityKrausToBformIsMaximallyEntangled) {
  const QuantumMap b = convert(identity_channel(2), Representation::bform);
  const ComplexMatrix v = vec(ComplexMatrix::identity(2));
  EXPECT_MATRIX_NEAR(b.as<BForm>().matrix, v * v.adjoint(), 1e-15);
}

TEST(Convert, DepolarizingHasFourKrausOperators) {
  const QuantumMap b = convert(depolarizing_channel(2, 0.5), Representation::bform);
  const QuantumMap k = convert(b, Representation::kraus);
  EXPECT_EQ(k.as<OperatorSumRep>().left.size(), 4u);
  EXPECT_TRUE(k.as<OperatorSumRep>().is_kraus());
  EXPECT_EQ(kraus_rank(b), 4u);
}

TEST(Convert, AformReshufflesToBform) {
  Rng rng(kSeed);
  const QuantumMap m = random_cptp(rng, 2, 3);
  const ComplexMatrix a = to_aform(m);
  const ComplexMatrix b = to_bform(m);
  EXPECT_MATRIX_NEAR(reshuffle(a, 3, 2), b, 1e-12);
  EXPECT_MATRIX_NEAR(to_bform(QuantumMap::from_aform(a, 2, 3)), b, 1e-12);
}

TEST(Convert, CyclesPreserveAction) {
  Rng rng(kSeed + 1);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t d = trial % 2 ? 3 : 2;
    const QuantumMap m = random_cptp(rng, d, d);
    const QuantumMap tomo = convert(m, Representation::tomographic);
    const QuantumMap b = convert(tomo, Representation::bform);
    const QuantumMap k = convert(b, Representation::kraus);
    const QuantumMap a = convert(k, Representation::aform);
    const QuantumMap back = convert(convert(a, Representation::bform), Representation::tomographic);
    for (int s = 0; s < 5; ++s) {
      const ComplexMatrix rho = random_state(rng, d);
      const ComplexMatrix expected = apply(m, rho);
      for (const QuantumMap* q : {&tomo, &b, &k, &a, &back})
        EXPECT_MATRIX_NEAR(apply(*q, rho), expected, 1e-9);
    }
  }
}

TEST(Convert, OperatorSumOfNonCpMapReproducesAction) {
  const QuantumMap k = convert(transpose_map(), Representation::kraus);
  EXPECT_FALSE(k.as<OperatorSumRep>().is_kraus());
  Rng rng(kSeed + 2);
  const ComplexMatrix rho = random_state(rng, 2);
  EXPECT_MATRIX_NEAR(apply(k, rho), rho.transpose(), 1e-12);
}

TEST(Properties, TransposeIsTpHpButNotCp) {
  const QuantumMap t = transpose_map();
  EXPECT_TRUE(check_tp(t).ok);
  EXPECT_TRUE(check_hp(t));
  const auto cp = check_cp(t);
  EXPECT_FALSE(cp.ok);
  EXPECT_NEAR(cp.min_eigenvalue, -1.0, 1e-12);
  EXPECT_THROW(kraus_rank(t), ValidationError);
}

TEST(Properties, TraceDecreasingMapIsNotTp) {
  const QuantumMap m = QuantumMap::from_kraus({std::sqrt(0.5) * ComplexMatrix::identity(2)});
  const auto tp = check_tp(m);
  EXPECT_FALSE(tp.ok);
  EXPECT_GT(tp.residual, 0.1);
  EXPECT_TRUE(check_cp(m).ok);
}

TEST(Properties, LeftRightPhaseMapIsNotHp) {
  const QuantumMap m = QuantumMap::from_operator_sum({ComplexMatrix::identity(2)},
                                                     {kI * ComplexMatrix::identity(2)});
  EXPECT_FALSE(check_hp(m));
  EXPECT_GT(hp_residual(m), 0.1);
  EXPECT_FALSE(check_cp(m).ok);
}

TEST(Properties, VerdictsAgreeAcrossRepresentations) {
  Rng rng(kSeed + 3);
  std::vector<QuantumMap> maps{transpose_map(),
                               QuantumMap::from_kraus({std::sqrt(0.5) * pauli_x()}),
                               QuantumMap::from_operator_sum({ComplexMatrix::identity(2)},
                                                             {kI * ComplexMatrix::identity(2)})};
  for (int i = 0; i < 10; ++i) maps.push_back(random_cptp(rng, 2, 2));
  for (const auto& m : maps) {
    const bool tp = check_tp(m).ok;
    const bool hp = check_hp(m);
    const bool cp = check_cp(m).ok;
    for (auto r : {Representation::tomographic, Representation::kraus, Representation::aform,
                   Representation::bform}) {
      const QuantumMap c = convert(m, r);
      EXPECT_EQ(check_tp(c).ok, tp) << to_string(r);
      EXPECT_EQ(check_hp(c), hp) << to_string(r);
      EXPECT_EQ(check_cp(c).ok, cp) << to_string(r);
    }
  }
}

TEST(Properties, KrausRankOfUnitaryIsOne) {
  EXPECT_EQ(kraus_rank(unitary_channel(hadamard())), 1u);
  EXPECT_EQ(kraus_rank(identity_channel(3)), 1u);
}

TEST(Maps, ConstructionRejectsBadShapes) {
  EXPECT_THROW(QuantumMap::from_bform(ComplexMatrix(3, 3), 2, 2), DimensionError);
  EXPECT_THROW(QuantumMap::from_kraus({}), DimensionError);
}

TEST(Maps, RepresentationNames) {
  EXPECT_EQ(representation_from_string("choi"), Representation::bform);
  EXPECT_EQ(to_string(Representation::aform), "aform");
  EXPECT_THROW(representation_from_string("liouville"), ValidationError);
}

}  // namespace
}  // namespace qmaps
