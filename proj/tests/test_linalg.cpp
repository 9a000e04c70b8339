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
#include <numbers>
#include <random>

#include "qmaps/errors.hpp"
#include "qmaps/linalg.hpp"
#include "qmaps/random.hpp"
#include "qmaps/states.hpp"
#include "test_support.hpp"

namespace qmaps {
namespace {

using testing::kSeed;

TEST(Linalg, TensorProductOrdersFirstFactorMostSignificant) {
  const ComplexMatrix k01 = tensor_product(ket(2, 0), ket(2, 1));
  EXPECT_EQ(k01(1, 0), Complex(1.0));
  EXPECT_EQ(k01.frobenius_norm(), 1.0);
}

TEST(Linalg, VecIsRowMajor) {
  const ComplexMatrix m{{1.0, 2.0}, {3.0, 4.0}};
  const ComplexMatrix v = vec(m);
  ASSERT_EQ(v.rows(), 4u);
  EXPECT_EQ(v(1, 0), Complex(2.0));
  EXPECT_EQ(v(2, 0), Complex(3.0));
  EXPECT_EQ(unvec(v, 2, 2), m);
}

TEST(Linalg, ReshuffleIsAnInvolution) {
  Rng rng(kSeed);
  const ComplexMatrix a = random_ginibre(rng, 6, 6);  // d_out = 2, d_in = 3
  const ComplexMatrix b = reshuffle(a, 2, 3);
  EXPECT_MATRIX_NEAR(reshuffle(b, 2, 3), a, 0.0);
}

TEST(Linalg, PartialTraceOfProduct) {
  Rng rng(kSeed + 1);
  const ComplexMatrix a = random_state(rng, 2);
  const ComplexMatrix b = random_state(rng, 3);
  const ComplexMatrix ab = tensor_product(a, b);
  const std::size_t dims[] = {2, 3};
  const std::size_t keep_a[] = {0};
  const std::size_t keep_b[] = {1};
  EXPECT_MATRIX_NEAR(partial_trace(ab, dims, keep_a), a, 1e-14);
  EXPECT_MATRIX_NEAR(partial_trace(ab, dims, keep_b), b, 1e-14);
}

TEST(Linalg, PermuteSubsystemsSwapsFactors) {
  Rng rng(kSeed + 2);
  const ComplexMatrix a = random_ginibre(rng, 2, 2);
  const ComplexMatrix b = random_ginibre(rng, 3, 3);
  const std::size_t dims[] = {2, 3};
  const std::size_t perm[] = {1, 0};
  EXPECT_MATRIX_NEAR(permute_subsystems(tensor_product(a, b), dims, perm), tensor_product(b, a),
                     1e-14);
}

TEST(Linalg, HermEigKnownSpectrum) {
  const auto ev = herm_eigvals(2.0 * pi0() - pi_plus());
  ASSERT_EQ(ev.size(), 2u);
  EXPECT_NEAR(ev[0], (1.0 + std::sqrt(5.0)) / 2.0, 1e-10);
  EXPECT_NEAR(ev[1], (1.0 - std::sqrt(5.0)) / 2.0, 1e-10);
}

TEST(Linalg, HermEigReconstructsRandomMatrices) {
  Rng rng(kSeed + 3);
  for (std::size_t d : {2u, 3u, 5u, 8u, 16u}) {
    const ComplexMatrix h = random_hermitian(rng, d);
    const auto r = herm_eig(h);
    std::vector<double> vals = r.eigenvalues;
    const ComplexMatrix rebuilt =
        r.eigenvectors * ComplexMatrix::diagonal(vals) * r.eigenvectors.adjoint();
    EXPECT_MATRIX_NEAR(rebuilt, h, 1e-11) << "d = " << d;
    EXPECT_TRUE(is_unitary(r.eigenvectors, 1e-11));
    for (std::size_t i = 1; i < d; ++i) EXPECT_GE(vals[i - 1], vals[i]);
  }
}

TEST(Linalg, HermEigRejectsNonHermitian) {
  const ComplexMatrix m{{0.0, 1.0}, {0.0, 0.0}};
  EXPECT_THROW(herm_eig(m), ValidationError);
}

TEST(Linalg, SvdReconstructsRectangular) {
  Rng rng(kSeed + 4);
  for (auto [r, c] : {std::pair<std::size_t, std::size_t>{3, 5}, {5, 3}, {4, 4}}) {
    const ComplexMatrix m = random_ginibre(rng, r, c);
    const auto s = svd(m);
    const ComplexMatrix rebuilt =
        s.left * ComplexMatrix::diagonal(s.singular_values) * s.right.adjoint();
    EXPECT_MATRIX_NEAR(rebuilt, m, 1e-11);
  }
}

TEST(Linalg, SolveAndInverse) {
  Rng rng(kSeed + 5);
  const ComplexMatrix a = random_ginibre(rng, 4, 4);
  EXPECT_MATRIX_NEAR(a * inverse(a), ComplexMatrix::identity(4), 1e-11);
  const ComplexMatrix b = random_ginibre(rng, 4, 2);
  EXPECT_MATRIX_NEAR(a * solve(a, b), b, 1e-11);
  EXPECT_THROW(inverse(ComplexMatrix(2, 2)), ValidationError);
}

TEST(Linalg, MatrixFunctions) {
  Rng rng(kSeed + 6);
  const ComplexMatrix rho = random_state(rng, 3);
  const ComplexMatrix s = matrix_sqrt(rho);
  EXPECT_MATRIX_NEAR(s * s, rho, 1e-12);
  EXPECT_MATRIX_NEAR(matrix_inverse_sqrt(rho) * s, ComplexMatrix::identity(3), 1e-9);
  EXPECT_EQ(numerical_rank(pi0()), 1u);
}

TEST(Linalg, TraceDistanceKnownValues) {
  EXPECT_NEAR(trace_distance(pi0(), pi_plus()), 1.0 / std::sqrt(2.0), 1e-10);
  EXPECT_NEAR(trace_distance(pi0(), pi1()), 1.0, 1e-12);
  EXPECT_NEAR(trace_distance(pi_plus(), pi_plus()), 0.0, 1e-15);
}

TEST(Linalg, RelativeEntropyKnownValues) {
  const ComplexMatrix mixed = 0.5 * ComplexMatrix::identity(2);
  EXPECT_NEAR(relative_entropy(pi0(), mixed), std::numbers::ln2, 1e-9);
  EXPECT_NEAR(relative_entropy(mixed, mixed), 0.0, 1e-12);
  EXPECT_TRUE(std::isinf(relative_entropy(pi_plus(), pi0())));
}

TEST(Linalg, SingularValuesMatchGramSpectrum) {
  Rng rng(kSeed + 7);
  for (int trial = 0; trial < 10; ++trial) {
    const ComplexMatrix m = random_ginibre(rng, 4, 3);
    const auto s = svd(m).singular_values;
    const auto ev = herm_eigvals(m.adjoint() * m);
    ASSERT_EQ(s.size(), ev.size());
    for (std::size_t i = 0; i < s.size(); ++i) EXPECT_NEAR(s[i], std::sqrt(ev[i]), 1e-9);
  }
}

TEST(Linalg, TraceDistanceTriangleInequality) {
  Rng rng(kSeed + 8);
  for (int trial = 0; trial < 20; ++trial) {
    const ComplexMatrix a = random_hermitian(rng, 3);
    const ComplexMatrix b = random_hermitian(rng, 3);
    const ComplexMatrix c = random_hermitian(rng, 3);
    EXPECT_LE(trace_distance(a, c), trace_distance(a, b) + trace_distance(b, c) + 1e-10);
  }
}

TEST(Linalg, KleinInequality) {
  Rng rng(kSeed + 9);
  for (int trial = 0; trial < 20; ++trial) {
    const ComplexMatrix a = random_state(rng, 3, 1 + trial % 3);
    const ComplexMatrix b = random_state(rng, 3);
    EXPECT_GE(relative_entropy(a, b), -1e-9);
  }
}

TEST(Linalg, ContractChoiActsAsChannel) {
  // Choi of the identity on a qubit is |I>><<I|.
  const ComplexMatrix id = vec(ComplexMatrix::identity(2));
  const ComplexMatrix choi = id * id.adjoint();
  EXPECT_MATRIX_NEAR(contract_choi(choi, 2, pi_plus()), pi_plus(), 1e-15);
}

}  // namespace
}  // namespace qmaps
