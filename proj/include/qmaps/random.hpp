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

// Seeded random states, unitaries, channels and dilations.

#pragma once

#include <cstddef>
#include <random>

#include "qmaps/channels.hpp"
#include "qmaps/linalg.hpp"
#include "qmaps/maps.hpp"
#include "qmaps/superchannel.hpp"

namespace qmaps {

using Rng = std::mt19937_64;

/// Entries i.i.d. standard complex Gaussian.
ComplexMatrix random_ginibre(Rng& rng, std::size_t rows, std::size_t cols);
ComplexMatrix random_hermitian(Rng& rng, std::size_t d);
/// Haar-like unitary from Gram-Schmidt on a Ginibre matrix.
ComplexMatrix random_unitary(Rng& rng, std::size_t d);
/// Density operator G G^dagger / tr with G of shape d x rank.
ComplexMatrix random_state(Rng& rng, std::size_t d, std::size_t rank = 0);

/// Gaussian Kraus operators made trace preserving with (sum K^dagger K)^{-1/2}.
/// n_kraus = 0 picks d_in * d_out.
QuantumMap random_cptp(Rng& rng, std::size_t d_in, std::size_t d_out, std::size_t n_kraus = 0);

/// Random CP operation; trace non-increasing ones are scaled by a random
/// factor in (0.2, 0.9).
ControlOperation random_operation(Rng& rng, std::size_t d, TraceClass trace_class);

/// k-step dilation with random unitaries. The initial state is a random
/// product rho_s (x) tau_e when `product` is set, otherwise a random joint state.
Dilation random_dilation(Rng& rng, std::size_t d_s, std::size_t d_e, std::size_t k, bool product);

}  // namespace qmaps
