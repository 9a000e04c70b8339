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

#include "qmaps/superchannel.hpp"

#include <cmath>
#include <string>

#include "qmaps/errors.hpp"
#include "qmaps/process_tensor.hpp"

namespace qmaps {

std::string to_string(TraceClass c) {
  return c == TraceClass::preserving ? "tp" : "tni";
}

TraceClass trace_class_from_string(const std::string& name) {
  if (name == "tp") return TraceClass::preserving;
  if (name == "tni") return TraceClass::non_increasing;
  throw ValidationError("unknown trace class '" + name + "' (expected tp or tni)");
}

void ControlOperation::validate() const {
  if (d == 0) throw DimensionError("control operation: dimension must be positive");
  if (bform.rows() != d * d || bform.cols() != d * d) {
    throw DimensionError("control operation: B form must be " + std::to_string(d * d) + "x" +
                         std::to_string(d * d));
  }
  if (!bform.all_finite()) throw ValidationError("control operation: non-finite B form");
  if (hermiticity_residual(bform) > 1e-9) {
    throw ValidationError("control operation: B form is not Hermitian");
  }
  const double min_eig = min_eigenvalue(0.5 * (bform + bform.adjoint()));
  if (min_eig < -1e-9) {
    throw ValidationError("control operation is not CP (min eigenvalue " +
                          std::to_string(min_eig) + ")");
  }
  const std::size_t dims[] = {d, d};
  const std::size_t keep[] = {1};
  const ComplexMatrix marginal = partial_trace(bform, dims, keep);
  const ComplexMatrix slack = ComplexMatrix::identity(d) - marginal;
  if (min_eigenvalue(0.5 * (slack + slack.adjoint())) < -1e-9) {
    throw ValidationError("control operation increases trace");
  }
  if (trace_class == TraceClass::preserving &&
      distance(marginal, ComplexMatrix::identity(d)) > 1e-9) {
    throw ValidationError("control operation marked tp is not trace preserving");
  }
}

ControlOperation ControlOperation::from_kraus(const std::vector<ComplexMatrix>& ops) {
  return from_map(QuantumMap::from_kraus(ops));
}

ControlOperation ControlOperation::from_map(const QuantumMap& map) {
  if (map.d_in() != map.d_out()) {
    throw DimensionError("control operation must map a system to itself");
  }
  ControlOperation op;
  op.d = map.d_in();
  op.bform = to_bform(map);
  op.trace_class = check_tp(map).ok ? TraceClass::preserving : TraceClass::non_increasing;
  op.validate();
  return op;
}

ControlOperation ControlOperation::from_bform_unchecked(ComplexMatrix bform, std::size_t d) {
  ControlOperation op;
  op.d = d;
  op.bform = std::move(bform);
  op.trace_class = TraceClass::non_increasing;
  if (op.bform.rows() != d * d || op.bform.cols() != d * d) {
    throw DimensionError("control operation: B form has wrong shape");
  }
  return op;
}

QuantumMap ControlOperation::as_map() const { return QuantumMap::from_bform(bform, d, d); }

ControlOperation identity_operation(std::size_t d) {
  return ControlOperation::from_kraus({ComplexMatrix::identity(d)});
}

ControlOperation projection_operation(const ComplexMatrix& p) {
  return ControlOperation::from_kraus({p});
}

Superchannel build_superchannel(const Dilation& dilation) {
  if (dilation.steps() != 1) {
    throw ValidationError("build_superchannel: dilation must have exactly one step, got " +
                          std::to_string(dilation.steps()));
  }
  const ProcessTensor pt = build_process_tensor(dilation);
  return Superchannel{pt.d_s(), pt.choi()};
}

std::vector<ComplexMatrix> superchannel_kraus(const Dilation& dilation) {
  if (dilation.steps() != 1) {
    throw ValidationError("superchannel_kraus: dilation must have exactly one step");
  }
  return process_tensor_kraus(dilation);
}

ComplexMatrix apply_superchannel(const Superchannel& sc, const ControlOperation& op) {
  if (op.d != sc.d_s) {
    throw DimensionError("apply_superchannel: operation acts on dimension " +
                         std::to_string(op.d) + ", superchannel on " + std::to_string(sc.d_s));
  }
  return contract_choi(sc.choi, sc.d_s, op.bform);
}

}  // namespace qmaps
