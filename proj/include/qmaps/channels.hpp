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

// Standard channels and Stinespring dilations.
//
// Joint system-environment operators are ordered system (x) environment.

#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "qmaps/linalg.hpp"
#include "qmaps/maps.hpp"

namespace qmaps {

/// Initial system-environment state and one joint unitary per step.
struct Dilation {
  std::size_t d_s = 0;
  std::size_t d_e = 0;
  ComplexMatrix initial_se;
  std::vector<ComplexMatrix> unitaries;

  std::size_t steps() const noexcept { return unitaries.size(); }

  /// Throws ValidationError or DimensionError unless the state is a density
  /// operator and every step is unitary (both within 1e-9).
  void validate() const;

  /// The first k steps of this dilation.
  Dilation truncated(std::size_t k) const;

  /// Whether initial_se equals the product of its marginals within tol.
  bool has_product_initial_state(double tol = 1e-9) const;
  ComplexMatrix system_marginal() const;
  ComplexMatrix environment_marginal() const;
};

/// rho -> tr_e(U (rho (x) tau_e) U^dagger), returned in Kraus form.
QuantumMap channel_from_dilation(const ComplexMatrix& tau_e, const ComplexMatrix& u);

enum class IsometryCompletion {
  ascending,   // Gram-Schmidt over standard basis vectors in index order
  descending,  // same, highest index first (yields a different dilation)
};

/// Single-step dilation of a CPTP map with d_in == d_out, environment
/// dimension max(kraus_rank, 2) and tau_e = |0><0|. The initial system state is
/// set to the maximally mixed state.
Dilation stinespring_dilate(const QuantumMap& map,
                            IsometryCompletion completion = IsometryCompletion::ascending);

QuantumMap identity_channel(std::size_t d);
QuantumMap unitary_channel(const ComplexMatrix& u);
/// (1 - p) rho + p tr(rho) 1/d.
QuantumMap depolarizing_channel(std::size_t d, double p);
QuantumMap amplitude_damping_channel(double gamma);
QuantumMap bit_flip_channel(double p);
QuantumMap phase_flip_channel(double p);
/// Measures in the computational basis and prepares prepared[k] on outcome k.
QuantumMap measure_prepare_channel(const std::vector<ComplexMatrix>& prepared);

/// Parameters for standard_channel(); which fields are read depends on kind.
struct ChannelSpec {
  std::string kind;  // identity, unitary, depolarizing, amplitude_damping,
                     // bit_flip, phase_flip, measure_prepare
  std::size_t d = 2;
  double p = 0.0;  // probability, or gamma for amplitude damping
  ComplexMatrix unitary;
  std::vector<ComplexMatrix> prepared;
};

/// Throws ValidationError for unknown kinds or out-of-range parameters.
QuantumMap standard_channel(const ChannelSpec& spec);

}  // namespace qmaps
