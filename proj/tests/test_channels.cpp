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

TEST(Channels, StandardChannelsAreCptp) {
  const std::vector<QuantumMap> maps{identity_channel(3),
                                     unitary_channel(hadamard()),
                                     depolarizing_channel(3, 0.3),
                                     amplitude_damping_channel(0.4),
                                     bit_flip_channel(0.2),
                                     phase_flip_channel(0.7),
                                     measure_prepare_channel({pi_plus(), pi_minus()})};
  for (const auto& m : maps) {
    EXPECT_TRUE(check_tp(m).ok);
    EXPECT_TRUE(check_cp(m).ok);
  }
}

TEST(Channels, DepolarizingActionIsMixture) {
  const QuantumMap m = depolarizing_channel(2, 0.5);
  const ComplexMatrix expected = 0.5 * pi0() + 0.25 * ComplexMatrix::identity(2);
  EXPECT_MATRIX_NEAR(apply(m, pi0()), expected, 1e-14);
}

TEST(Channels, AmplitudeDampingDecaysExcitedState) {
  const QuantumMap m = amplitude_damping_channel(0.25);
  EXPECT_MATRIX_NEAR(apply(m, pi1()), 0.25 * pi0() + 0.75 * pi1(), 1e-14);
}

TEST(Channels, RejectsOutOfRangeProbability) {
  EXPECT_THROW(depolarizing_channel(2, 1.5), ValidationError);
  EXPECT_THROW(bit_flip_channel(-0.1), ValidationError);
  EXPECT_THROW(unitary_channel(2.0 * pauli_x()), ValidationError);
}

TEST(Channels, StandardChannelByName) {
  ChannelSpec spec;
  spec.kind = "phase_flip";
  spec.p = 1.0;
  EXPECT_MATRIX_NEAR(apply(standard_channel(spec), pi_plus()), pi_minus(), 1e-14);
  spec.kind = "teleport";
  EXPECT_THROW(standard_channel(spec), ValidationError);
}

TEST(Stinespring, RoundTripOnRandomChannels) {
  Rng rng(kSeed);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t d = trial % 2 ? 3 : 2;
    const QuantumMap m = random_cptp(rng, d, d, 1 + trial % 4);
    const Dilation dil = stinespring_dilate(m);
    EXPECT_TRUE(is_unitary(dil.unitaries.front(), 1e-10));
    const QuantumMap back = channel_from_dilation(dil.environment_marginal(), dil.unitaries.front());
    EXPECT_MATRIX_NEAR(to_bform(back), to_bform(m), 1e-9);
    EXPECT_TRUE(check_tp(back).ok);
    EXPECT_TRUE(check_cp(back).ok);
  }
}

TEST(Stinespring, CompletionChoiceChangesUnitaryNotChannel) {
  const QuantumMap m = amplitude_damping_channel(0.3);
  const Dilation a = stinespring_dilate(m, IsometryCompletion::ascending);
  const Dilation b = stinespring_dilate(m, IsometryCompletion::descending);
  EXPECT_GT(distance(a.unitaries.front(), b.unitaries.front()), 1e-3);
  EXPECT_MATRIX_NEAR(to_bform(channel_from_dilation(b.environment_marginal(), b.unitaries.front())),
                     to_bform(m), 1e-9);
}

TEST(Stinespring, RejectsNonCpAndNonTp) {
  EXPECT_THROW(stinespring_dilate(QuantumMap::from_bform(swap_gate(2), 2, 2)), ValidationError);
  EXPECT_THROW(stinespring_dilate(QuantumMap::from_kraus({0.5 * ComplexMatrix::identity(2)})),
               ValidationError);
}

TEST(Dilation, MixedEnvironmentGivesMixtureOfUnitaries) {
  // CNOT with the environment as control, environment maximally mixed: a
  // bit flip with probability one half.
  const ComplexMatrix u = tensor_product(ComplexMatrix::identity(2), pi0()) +
                          tensor_product(pauli_x(), pi1());
  const QuantumMap m = channel_from_dilation(0.5 * ComplexMatrix::identity(2), u);
  EXPECT_MATRIX_NEAR(to_bform(m), to_bform(bit_flip_channel(0.5)), 1e-12);
}

TEST(Dilation, ValidateAndTruncate) {
  Rng rng(kSeed + 1);
  const Dilation d = random_dilation(rng, 2, 3, 3, true);
  EXPECT_TRUE(d.has_product_initial_state());
  EXPECT_EQ(d.truncated(2).steps(), 2u);
  EXPECT_THROW(d.truncated(4), ValidationError);
  Dilation bad = d;
  bad.unitaries[1] = 2.0 * bad.unitaries[1];
  EXPECT_THROW(bad.validate(), ValidationError);
  bad = d;
  bad.initial_se = 2.0 * bad.initial_se;
  EXPECT_THROW(bad.validate(), ValidationError);
  EXPECT_FALSE(random_dilation(rng, 2, 2, 1, false).has_product_initial_state());
}

}  // namespace
}  // namespace qmaps
