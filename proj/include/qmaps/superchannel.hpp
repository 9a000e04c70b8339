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

// Control operations and the one-step superchannel.
//
// A superchannel maps the experimenter's operation on the system to the final
// system state, absorbing any initial system-environment correlations. It is
// stored as a Choi state on three legs (out, op-out, op-in) and acts on an
// operation's B form by contraction.

#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "qmaps/channels.hpp"
#include "qmaps/linalg.hpp"
#include "qmaps/maps.hpp"

namespace qmaps {

enum class TraceClass { preserving, non_increasing };

std::string to_string(TraceClass c);
/// "tp" or "tni".
TraceClass trace_class_from_string(const std::string& name);

/// A CP, trace non-increasing operation on a d-dimensional system, stored as
/// its B form (out (x) in).
struct ControlOperation {
  std::size_t d = 0;
  ComplexMatrix bform;
  TraceClass trace_class = TraceClass::preserving;

  /// Throws ValidationError unless bform is PSD and tr_out(bform) <= 1 (with
  /// equality for trace preserving operations), all within 1e-9.
  void validate() const;

  static ControlOperation from_kraus(const std::vector<ComplexMatrix>& ops);
  /// Classifies the trace class from the map itself.
  static ControlOperation from_map(const QuantumMap& map);
  /// As from_map, but without validation. Used for linear combinations of
  /// operations, which need not be CP.
  static ControlOperation from_bform_unchecked(ComplexMatrix bform, std::size_t d);

  QuantumMap as_map() const;
};

ControlOperation identity_operation(std::size_t d);
/// rho -> P rho P for a projector (or any contraction) P.
ControlOperation projection_operation(const ComplexMatrix& p);

struct Superchannel {
  std::size_t d_s = 0;
  ComplexMatrix choi;  // legs (out, op-out, op-in)
};

Superchannel build_superchannel(const Dilation& dilation);

/// mu_{eps x} = sqrt(lambda_x) <eps| U (x)_s |Psi_x>^{T_s}, as d_s x d_s^2
/// matrices acting on vec of the operation's B form. Eigenvectors of the
/// initial state with lambda < 1e-12 are skipped.
std::vector<ComplexMatrix> superchannel_kraus(const Dilation& dilation);

/// Output state (trace = probability that the operation occurs).
ComplexMatrix apply_superchannel(const Superchannel& sc, const ControlOperation& op);

}  // namespace qmaps
