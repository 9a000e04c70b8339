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

// Linear maps on operator space in four interchangeable representations.
//
// Index conventions (see linalg.hpp for vec and tensor ordering):
//
//   A form:  A[(r d_out + s), (r' d_in + s')], vec(E[rho]) = A vec(rho)
//   B form:  B[(r d_in + r'), (s d_in + s')] = A[(r, s), (r', s')], legs out (x) in
//
// The B form equals the Choi matrix sum_kl E[|k><l|] (x) |k><l| built with the
// unnormalised |I> = sum_k |kk>, so a trace preserving map has tr B = d_in.

#pragma once

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "qmaps/linalg.hpp"

namespace qmaps {

/// Outputs of the map on a basis of inputs, together with the dual set.
struct TomographicRep {
  std::vector<ComplexMatrix> inputs;
  std::vector<ComplexMatrix> duals;
  std::vector<ComplexMatrix> outputs;
};

/// E[rho] = sum_a L_a rho R_a^dagger. A CP map in Kraus form has left == right.
struct OperatorSumRep {
  std::vector<ComplexMatrix> left;
  std::vector<ComplexMatrix> right;

  static OperatorSumRep kraus(std::vector<ComplexMatrix> ops);
  bool is_kraus() const { return left == right; }
};

struct AForm {
  ComplexMatrix matrix;
};

struct BForm {
  ComplexMatrix matrix;
};

enum class Representation { tomographic, kraus, aform, bform };

std::string to_string(Representation r);
/// Accepts "tomographic", "kraus" (alias "operator_sum"), "aform", "bform".
Representation representation_from_string(const std::string& name);

class QuantumMap {
 public:
  using Payload = std::variant<TomographicRep, OperatorSumRep, AForm, BForm>;

  /// Validates shapes against (d_in, d_out); throws DimensionError.
  QuantumMap(std::size_t d_in, std::size_t d_out, Payload payload);

  static QuantumMap from_kraus(std::vector<ComplexMatrix> ops);
  static QuantumMap from_operator_sum(std::vector<ComplexMatrix> left,
                                      std::vector<ComplexMatrix> right);
  /// Duals are computed with dual_basis().
  static QuantumMap from_tomographic(std::vector<ComplexMatrix> inputs,
                                     std::vector<ComplexMatrix> outputs);
  static QuantumMap from_aform(ComplexMatrix a, std::size_t d_in, std::size_t d_out);
  static QuantumMap from_bform(ComplexMatrix b, std::size_t d_in, std::size_t d_out);

  std::size_t d_in() const noexcept { return d_in_; }
  std::size_t d_out() const noexcept { return d_out_; }
  Representation representation() const noexcept;
  const Payload& payload() const noexcept { return payload_; }

  template <typename T>
  const T& as() const {
    return std::get<T>(payload_);
  }

 private:
  std::size_t d_in_;
  std::size_t d_out_;
  Payload payload_;
};

/// Dual set with tr(D_i^dagger rho_j) = delta_ij, obtained by expanding the
/// basis in the Hermitian Gell-Mann frame and inverting the coefficient matrix.
/// Throws ValidationError when the basis is linearly dependent (smallest
/// singular value of the stacked vec'd basis below 1e-8 of the largest).
std::vector<ComplexMatrix> dual_basis(const std::vector<ComplexMatrix>& basis);

ComplexMatrix apply(const QuantumMap& map, const ComplexMatrix& rho);

ComplexMatrix to_bform(const QuantumMap& map);
ComplexMatrix to_aform(const QuantumMap& map);
/// Canonical Kraus operators when the B form is positive; signed pairs
/// (R = +-L) when it is only Hermitian; singular-vector pairs otherwise.
OperatorSumRep to_operator_sum(const QuantumMap& map);
TomographicRep to_tomographic(const QuantumMap& map, const std::vector<ComplexMatrix>& basis);

/// Re-encodes the map in the requested representation. The tomographic target
/// uses state_basis(d_in).
QuantumMap convert(const QuantumMap& map, Representation target);

struct TpCheck {
  bool ok;
  double residual;
};
struct CpCheck {
  bool ok;
  double min_eigenvalue;  // of the Hermitian part of the B form
};

inline constexpr double kPropertyTolerance = 1e-9;

/// Evaluated with the criterion native to the map's representation.
TpCheck check_tp(const QuantumMap& map, double tol = kPropertyTolerance);
bool check_hp(const QuantumMap& map, double tol = kPropertyTolerance);
/// Frobenius norm of B - B^dagger.
double hp_residual(const QuantumMap& map);
CpCheck check_cp(const QuantumMap& map, double tol = kPropertyTolerance);
/// Number of B-form eigenvalues above 1e-10. Throws ValidationError for
/// non-CP maps.
std::size_t kraus_rank(const QuantumMap& map);

/// Whether both operator sums define the same map (B forms agree within 1e-9).
bool same_map(const OperatorSumRep& a, const OperatorSumRep& b, double tol = kPropertyTolerance);

}  // namespace qmaps
