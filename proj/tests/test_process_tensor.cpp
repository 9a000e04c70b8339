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
#include <limits>
#include <numbers>
#include <random>

#include "qmaps/channels.hpp"
#include "qmaps/errors.hpp"
#include "qmaps/process_tensor.hpp"
#include "qmaps/random.hpp"
#include "qmaps/states.hpp"
#include "qmaps/tomography.hpp"
#include "test_support.hpp"

namespace qmaps {
namespace {

using testing::kSeed;

Dilation random_fresh_environment(Rng& rng, std::size_t k) {
  std::vector<ComplexMatrix> steps;
  for (std::size_t j = 0; j < k; ++j) steps.push_back(random_unitary(rng, 4));
  return fresh_environment_dilation(random_state(rng, 2), random_state(rng, 2), steps);
}

ComplexMatrix choi_from_kraus(const std::vector<ComplexMatrix>& ops) {
  ComplexMatrix out(ops.front().size(), ops.front().size());
  for (const auto& k : ops) {
    const ComplexMatrix v = vec(k);
    out += v * v.adjoint();
  }
  return out;
}

TEST(ProcessTensor, LegOrderString) {
  EXPECT_EQ(ProcessTensor::leg_order(1), "out_1,in_0,out_0");
  EXPECT_EQ(ProcessTensor::leg_order(2), "out_2,in_1,out_1,in_0,out_0");
}

TEST(ProcessTensor, ResourceBound) {
  EXPECT_NO_THROW(check_resource_bound(3, 2));
  EXPECT_THROW(check_resource_bound(4, 2), ResourceError);
  EXPECT_THROW(check_resource_bound(2, 3), ResourceError);
  EXPECT_THROW(build_process_tensor(swap_memory_dilation(4)), ResourceError);
}

TEST(ProcessTensor, ChoiMatchesKrausContraction) {
  Rng rng(kSeed);
  for (std::size_t k : {1u, 2u, 3u}) {
    const Dilation dil = random_dilation(rng, 2, 2, k, false);
    const ProcessTensor pt = build_process_tensor(dil);
    EXPECT_MATRIX_NEAR(pt.choi(), choi_from_kraus(process_tensor_kraus(dil)), 1e-10) << "k=" << k;
    EXPECT_NO_THROW(pt.validate());
    EXPECT_NEAR(pt.choi().trace().real(), std::pow(2.0, static_cast<double>(k)), 1e-10);
  }
}

TEST(ProcessTensor, CausalityUnderTruncation) {
  Rng rng(kSeed + 1);
  for (std::size_t k : {2u, 3u})
    for (std::size_t d_e : {2u, 3u}) {
      const Dilation dil = random_dilation(rng, 2, d_e, k, false);
      const ProcessTensor pt = build_process_tensor(dil);
      const ProcessTensor shorter = build_process_tensor(dil.truncated(k - 1));
      const auto dims = pt.leg_dims();
      std::vector<std::size_t> keep;
      for (std::size_t l = 1; l < dims.size(); ++l) keep.push_back(l);
      const ComplexMatrix reduced = partial_trace(pt.choi(), dims, keep);
      EXPECT_MATRIX_NEAR(reduced, tensor_product(ComplexMatrix::identity(2), shorter.choi()), 1e-9);
    }
}

TEST(ProcessTensor, ActionMatchesDirectSimulation) {
  Rng rng(kSeed + 2);
  const Dilation dil = random_dilation(rng, 2, 3, 2, false);
  const ProcessTensor pt = build_process_tensor(dil);
  for (int i = 0; i < 5; ++i) {
    const auto seq = OperationSequence::product(
        {random_operation(rng, 2, TraceClass::non_increasing),
         random_operation(rng, 2, TraceClass::preserving)});
    EXPECT_MATRIX_NEAR(apply_process_tensor(pt, seq), simulate_sequence(dil, seq).output_state,
                       1e-10);
  }
}

TEST(ProcessTensor, CorrelatedSequenceMatchesSimulation) {
  Rng rng(kSeed + 3);
  const Dilation dil = random_dilation(rng, 2, 2, 2, false);
  const ProcessTensor pt = build_process_tensor(dil);
  const ComplexMatrix g = random_ginibre(rng, 16, 2);
  const auto seq = OperationSequence::correlated(0.1 * g * g.adjoint(), 2, 2);
  EXPECT_MATRIX_NEAR(apply_process_tensor(pt, seq), simulate_sequence(dil, seq).output_state,
                     1e-10);
  EXPECT_THROW(OperationSequence::correlated(-1.0 * ComplexMatrix::identity(16), 2, 2),
               ValidationError);
}

TEST(ProcessTensor, MarginalsOfFreshEnvironment) {
  Rng rng(kSeed + 4);
  std::vector<ComplexMatrix> steps{random_unitary(rng, 4), random_unitary(rng, 4)};
  const ComplexMatrix rho = random_state(rng, 2);
  const ComplexMatrix tau = random_state(rng, 2);
  const ProcessTensor pt = build_process_tensor(fresh_environment_dilation(rho, tau, steps));
  EXPECT_MATRIX_NEAR(initial_state(pt), rho, 1e-12);
  for (std::size_t j = 1; j <= 2; ++j)
    EXPECT_MATRIX_NEAR(step_map(pt, j), to_bform(channel_from_dilation(tau, steps[j - 1])), 1e-12);
  EXPECT_THROW(step_map(pt, 0), ValidationError);
}

TEST(ProcessTensor, AformIsReshuffledChoi) {
  const ProcessTensor pt = build_process_tensor(swap_memory_dilation(1));
  EXPECT_MATRIX_NEAR(reshuffle(aform(pt), 2, 4), bform(pt), 0.0);
}

TEST(NonMarkovianity, FreshEnvironmentIsMarkov) {
  Rng rng(kSeed + 5);
  for (std::size_t k : {2u, 3u}) {
    const ProcessTensor pt = build_process_tensor(random_fresh_environment(rng, k));
    EXPECT_LT(non_markovianity(pt, Distance::trace).value, 1e-9);
    EXPECT_LT(std::abs(non_markovianity(pt, Distance::relative_entropy).value), 1e-9);
    EXPECT_TRUE(is_markov(pt, 1e-9));
    for (const auto& term : chi_decomposition(pt, k + 1))
      if (term.slots.size() >= 2) EXPECT_LT(term.norm, 1e-9);
  }
}

// Frozen from the numpy oracle (brute-force contraction of both Choi states).
TEST(NonMarkovianity, SwapMemoryOracleValues) {
  const ProcessTensor pt2 = build_process_tensor(swap_memory_dilation(2));
  EXPECT_NEAR(non_markovianity(pt2, Distance::trace).value, 0.75, 1e-9);
  EXPECT_NEAR(non_markovianity(pt2, Distance::relative_entropy).value, 1.3862943611198904, 1e-9);
  EXPECT_FALSE(is_markov(pt2, 1e-9));
  const ProcessTensor pt3 = build_process_tensor(swap_memory_dilation(3));
  EXPECT_NEAR(non_markovianity(pt3, Distance::trace).value, 0.9375, 1e-9);
  EXPECT_NEAR(non_markovianity(pt3, Distance::relative_entropy).value, 2.7725887222397807, 1e-9);
}

TEST(Chi, ExpansionIsCompleteForTwoSteps) {
  Rng rng(kSeed + 6);
  const ProcessTensor pt = build_process_tensor(random_dilation(rng, 2, 2, 2, false));
  ComplexMatrix sum = markov_product(pt).choi();
  for (const auto& term : chi_decomposition(pt, 3)) {
    if (term.slots.size() >= 2) sum += term.embedded;
    if (term.slots.size() >= 2) EXPECT_NEAR(std::abs(term.block.trace()), 0.0, 1e-12);
  }
  EXPECT_MATRIX_NEAR(sum, pt.choi(), 1e-10);
}

TEST(Chi, SwapHasStepToStepCorrelation) {
  const ProcessTensor pt = build_process_tensor(swap_memory_dilation(2));
  double max_norm = 0.0;
  for (const auto& term : chi_decomposition(pt, 2)) max_norm = std::max(max_norm, term.norm);
  EXPECT_GT(max_norm, 0.1);
  EXPECT_THROW(chi_decomposition(pt, 4), ValidationError);
}

TEST(Surprise, Values) {
  EXPECT_EQ(surprise(1, std::numbers::ln2), 0.5);
  EXPECT_NEAR(surprise(10, 0.1), std::exp(-1.0), 1e-15);
  EXPECT_EQ(surprise(5, std::numeric_limits<double>::infinity()), 0.0);
  EXPECT_THROW(surprise(0, 0.1), ValidationError);
  EXPECT_THROW(surprise(1, -0.1), ValidationError);
}

}  // namespace
}  // namespace qmaps
