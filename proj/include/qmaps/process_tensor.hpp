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

// Multi-time process tensors.
//
// A k-step process tensor is stored as its Choi state on 2k + 1 legs of
// dimension d_s, ordered
//
//     out_k, in_{k-1}, out_{k-1}, ..., in_0, out_0
//
// out_j is the system handed to the experimenter at time t_j (out_0 is the
// initial, pre-preparation slot) and in_j is what the operation at t_j feeds
// back. Leg out_j sits at position 2(k - j) and in_j at 2(k - j) - 1.
//
// The operation applied at t_j has B form legs (op-out, op-in) = (in_j, out_j),
// so the joint B form A_{k-1} (x) ... (x) A_0 lines up with every leg after
// out_k and the action is a single contract_choi call.

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "qmaps/channels.hpp"
#include "qmaps/linalg.hpp"
#include "qmaps/superchannel.hpp"

namespace qmaps {

/// Largest Choi dimension d_s^(2k+1) any operation will build (k <= 3 for qubits).
inline constexpr std::size_t kMaxChoiDimension = 128;

/// Throws ResourceError when a k-step process on d_s-dimensional legs exceeds
/// kMaxChoiDimension.
void check_resource_bound(std::size_t k, std::size_t d_s);

class ProcessTensor {
 public:
  ProcessTensor(std::size_t k, std::size_t d_s, ComplexMatrix choi);

  std::size_t steps() const noexcept { return k_; }
  std::size_t d_s() const noexcept { return d_s_; }
  const ComplexMatrix& choi() const noexcept { return choi_; }
  /// 2k + 1 copies of d_s.
  std::vector<std::size_t> leg_dims() const;

  /// "out_2,in_1,out_1,in_0,out_0" for k = 2.
  static std::string leg_order(std::size_t k);

  /// Hermiticity and positivity of the Choi state within tol.
  void validate(double tol = 1e-9) const;

 private:
  std::size_t k_;
  std::size_t d_s_;
  ComplexMatrix choi_;
};

/// Operations at t_0, ..., t_{k-1}: either one ControlOperation per time or a
/// single joint B form on legs (in_{k-1}, out_{k-1}, ..., in_0, out_0) for
/// correlated sequences.
struct OperationSequence {
  std::vector<ControlOperation> ops;
  std::optional<ComplexMatrix> joint;
  std::size_t joint_steps = 0;

  static OperationSequence product(std::vector<ControlOperation> ops);
  static OperationSequence correlated(ComplexMatrix joint_bform, std::size_t k, std::size_t d);

  std::size_t steps() const noexcept { return joint ? joint_steps : ops.size(); }
  /// A_{k-1} (x) ... (x) A_0, or the joint form as given.
  ComplexMatrix joint_bform() const;
};

ProcessTensor build_process_tensor(const Dilation& dilation);

/// Kraus operators T_{eps x} (d_s x d_s^{2k}) with Choi = sum vec(T) vec(T)^dagger,
/// built by propagating pure-state components of the initial state through
/// elementary operation sequences. Independent of build_process_tensor.
std::vector<ComplexMatrix> process_tensor_kraus(const Dilation& dilation);

ComplexMatrix apply_process_tensor(const ProcessTensor& pt, const OperationSequence& seq);

ComplexMatrix bform(const ProcessTensor& pt);
/// Reshuffle of the B form with out = out_k and in = all remaining legs.
ComplexMatrix aform(const ProcessTensor& pt);

/// B form (out_j (x) in_{j-1}) of the averaged step map, 1 <= j <= k.
ComplexMatrix step_map(const ProcessTensor& pt, std::size_t j);
/// Reduced initial system state on leg out_0.
ComplexMatrix initial_state(const ProcessTensor& pt);

/// E^{k:k-1} (x) ... (x) E^{1:0} (x) rho^0 from the marginals of pt.
ProcessTensor markov_product(const ProcessTensor& pt);

/// Correlation term for a set of time slots. Slot 0 is leg out_0 and slot
/// j >= 1 is the pair (out_j, in_{j-1}).
struct ChiTerm {
  std::vector<std::size_t> slots;  // ascending
  ComplexMatrix block;     // on the legs of `slots`, in canonical leg order, unit-trace scale
  ComplexMatrix embedded;  // block (x) complementary marginals, scaled to tr of the Choi state
  double norm;             // Frobenius norm of block
};

/// Cumulant expansion of the normalised Choi state over time slots, up to the
/// given order (number of slots per term, 1 <= order <= k + 1).
std::vector<ChiTerm> chi_decomposition(const ProcessTensor& pt, std::size_t order);

enum class Distance { trace, relative_entropy };

std::string to_string(Distance d);
Distance distance_from_string(const std::string& name);

struct NonMarkovianity {
  double value;            // +infinity on relative-entropy support failure
  std::string diagnostic;  // empty unless something needs reporting
};

/// Distance between the normalised Choi state and its normalised Markov product.
NonMarkovianity non_markovianity(const ProcessTensor& pt, Distance distance);

bool is_markov(const ProcessTensor& pt, double tol);

/// exp(-n N). Throws ValidationError for n < 1 or N < 0.
double surprise(int n, double N);

}  // namespace qmaps
