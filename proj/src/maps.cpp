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

#include "qmaps/maps.hpp"

#include <cmath>
#include <string>

#include "qmaps/errors.hpp"
#include "qmaps/states.hpp"

namespace qmaps {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require_shape(const ComplexMatrix& m, std::size_t rows, std::size_t cols,
                   const std::string& what) {
  if (m.rows() != rows || m.cols() != cols) {
    throw DimensionError(what + ": expected " + std::to_string(rows) + "x" +
                         std::to_string(cols) + ", got " + std::to_string(m.rows()) + "x" +
                         std::to_string(m.cols()));
  }
}

ComplexMatrix hermitian_part(const ComplexMatrix& m) {
  return 0.5 * (m + m.adjoint());
}

}  // namespace

OperatorSumRep OperatorSumRep::kraus(std::vector<ComplexMatrix> ops) {
  OperatorSumRep rep;
  rep.right = ops;
  rep.left = std::move(ops);
  return rep;
}

std::string to_string(Representation r) {
  switch (r) {
    case Representation::tomographic:
      return "tomographic";
    case Representation::kraus:
      return "kraus";
    case Representation::aform:
      return "aform";
    case Representation::bform:
      return "bform";
  }
  return "unknown";
}

Representation representation_from_string(const std::string& name) {
  if (name == "tomographic") return Representation::tomographic;
  if (name == "kraus" || name == "operator_sum") return Representation::kraus;
  if (name == "aform") return Representation::aform;
  if (name == "bform" || name == "choi") return Representation::bform;
  throw ValidationError("unknown representation '" + name + "'");
}

// --- QuantumMap ----------------------------------------------------------------------

QuantumMap::QuantumMap(std::size_t d_in, std::size_t d_out, Payload payload)
    : d_in_(d_in), d_out_(d_out), payload_(std::move(payload)) {
  if (d_in_ == 0 || d_out_ == 0) throw DimensionError("map dimensions must be positive");
  std::visit(Overloaded{
                 [&](const TomographicRep& t) {
                   const std::size_t n = d_in_ * d_in_;
                   if (t.inputs.size() != n || t.duals.size() != n || t.outputs.size() != n) {
                     throw DimensionError("tomographic representation needs " +
                                          std::to_string(n) +
                                          " inputs, duals and outputs");
                   }
                   for (std::size_t i = 0; i < n; ++i) {
                     require_shape(t.inputs[i], d_in_, d_in_, "tomographic input");
                     require_shape(t.duals[i], d_in_, d_in_, "tomographic dual");
                     require_shape(t.outputs[i], d_out_, d_out_, "tomographic output");
                   }
                 },
                 [&](const OperatorSumRep& o) {
                   if (o.left.size() != o.right.size()) {
                     throw DimensionError("operator sum: left and right lists differ in length");
                   }
                   for (std::size_t i = 0; i < o.left.size(); ++i) {
                     require_shape(o.left[i], d_out_, d_in_, "operator-sum left operator");
                     require_shape(o.right[i], d_out_, d_in_, "operator-sum right operator");
                   }
                 },
                 [&](const AForm& a) {
                   require_shape(a.matrix, d_out_ * d_out_, d_in_ * d_in_, "A form");
                 },
                 [&](const BForm& b) {
                   require_shape(b.matrix, d_out_ * d_in_, d_out_ * d_in_, "B form");
                 },
             },
             payload_);
  const bool finite = std::visit(
      Overloaded{
          [](const TomographicRep& t) {
            for (const auto* list : {&t.inputs, &t.duals, &t.outputs})
              for (const auto& m : *list)
                if (!m.all_finite()) return false;
            return true;
          },
          [](const OperatorSumRep& o) {
            for (const auto* list : {&o.left, &o.right})
              for (const auto& m : *list)
                if (!m.all_finite()) return false;
            return true;
          },
          [](const AForm& a) { return a.matrix.all_finite(); },
          [](const BForm& b) { return b.matrix.all_finite(); },
      },
      payload_);
  if (!finite) throw ValidationError("map contains non-finite entries");
}

QuantumMap QuantumMap::from_kraus(std::vector<ComplexMatrix> ops) {
  if (ops.empty()) throw DimensionError("from_kraus: empty operator list");
  const std::size_t d_out = ops.front().rows();
  const std::size_t d_in = ops.front().cols();
  return QuantumMap(d_in, d_out, OperatorSumRep::kraus(std::move(ops)));
}

QuantumMap QuantumMap::from_operator_sum(std::vector<ComplexMatrix> left,
                                         std::vector<ComplexMatrix> right) {
  if (left.empty()) throw DimensionError("from_operator_sum: empty operator list");
  const std::size_t d_out = left.front().rows();
  const std::size_t d_in = left.front().cols();
  return QuantumMap(d_in, d_out, OperatorSumRep{std::move(left), std::move(right)});
}

QuantumMap QuantumMap::from_tomographic(std::vector<ComplexMatrix> inputs,
                                        std::vector<ComplexMatrix> outputs) {
  if (inputs.empty() || outputs.empty()) {
    throw DimensionError("from_tomographic: empty basis");
  }
  const std::size_t d_in = inputs.front().rows();
  const std::size_t d_out = outputs.front().rows();
  auto duals = dual_basis(inputs);
  return QuantumMap(d_in, d_out,
                    TomographicRep{std::move(inputs), std::move(duals), std::move(outputs)});
}

QuantumMap QuantumMap::from_aform(ComplexMatrix a, std::size_t d_in, std::size_t d_out) {
  return QuantumMap(d_in, d_out, AForm{std::move(a)});
}

QuantumMap QuantumMap::from_bform(ComplexMatrix b, std::size_t d_in, std::size_t d_out) {
  return QuantumMap(d_in, d_out, BForm{std::move(b)});
}

Representation QuantumMap::representation() const noexcept {
  return static_cast<Representation>(payload_.index());
}

// --- duals -------------------------------------------------------------------------

std::vector<ComplexMatrix> dual_basis(const std::vector<ComplexMatrix>& basis) {
  if (basis.empty()) throw DimensionError("dual_basis: empty basis");
  const std::size_t d = basis.front().rows();
  const std::size_t n = d * d;
  if (basis.size() != n) {
    throw DimensionError("dual_basis: need " + std::to_string(n) + " matrices of size " +
                         std::to_string(d) + ", got " + std::to_string(basis.size()));
  }
  ComplexMatrix stacked(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    require_shape(basis[i], d, d, "dual_basis element");
    for (std::size_t k = 0; k < n; ++k) stacked(i, k) = basis[i].data()[k];
  }
  const auto sv = svd(stacked).singular_values;
  if (sv.back() <= 1e-8 * sv.front()) {
    throw ValidationError("dual_basis: basis is linearly dependent (singular value ratio " +
                          std::to_string(sv.back() / sv.front()) + ")");
  }

  // rho_i = sum_j h_ij G_j with h_ij = tr(G_j rho_i) / 2.
  const auto gamma = gell_mann_basis(d);
  ComplexMatrix h(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) h(i, j) = 0.5 * hs_inner(gamma[j], basis[i]);

  // D_i = (1/2) sum_j f_ij G_j with F^dagger = H^{-1}.
  const ComplexMatrix f = inverse(h).adjoint();
  std::vector<ComplexMatrix> duals;
  duals.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    ComplexMatrix dual(d, d);
    for (std::size_t j = 0; j < n; ++j) dual += (0.5 * f(i, j)) * gamma[j];
    duals.push_back(std::move(dual));
  }
  return duals;
}

// --- action and conversions -------------------------------------------------------------

ComplexMatrix apply(const QuantumMap& map, const ComplexMatrix& rho) {
  require_shape(rho, map.d_in(), map.d_in(), "apply: input state");
  const std::size_t d_out = map.d_out();
  return std::visit(
      Overloaded{
          [&](const TomographicRep& t) {
            ComplexMatrix out(d_out, d_out);
            for (std::size_t i = 0; i < t.outputs.size(); ++i)
              out += hs_inner(t.duals[i], rho) * t.outputs[i];
            return out;
          },
          [&](const OperatorSumRep& o) {
            ComplexMatrix out(d_out, d_out);
            for (std::size_t i = 0; i < o.left.size(); ++i)
              out += o.left[i] * rho * o.right[i].adjoint();
            return out;
          },
          [&](const AForm& a) { return unvec(a.matrix * vec(rho), d_out, d_out); },
          [&](const BForm& b) { return contract_choi(b.matrix, d_out, rho); },
      },
      map.payload());
}

ComplexMatrix to_bform(const QuantumMap& map) {
  const std::size_t d_in = map.d_in();
  const std::size_t d_out = map.d_out();
  return std::visit(Overloaded{
                        [&](const TomographicRep& t) {
                          ComplexMatrix b(d_out * d_in, d_out * d_in);
                          for (std::size_t i = 0; i < t.outputs.size(); ++i)
                            b += tensor_product(t.outputs[i], t.duals[i].conjugate());
                          return b;
                        },
                        [&](const OperatorSumRep& o) {
                          ComplexMatrix b(d_out * d_in, d_out * d_in);
                          for (std::size_t i = 0; i < o.left.size(); ++i)
                            b += outer(vec(o.left[i]), vec(o.right[i]));
                          return b;
                        },
                        [&](const AForm& a) { return reshuffle(a.matrix, d_out, d_in); },
                        [&](const BForm& b) { return b.matrix; },
                    },
                    map.payload());
}

ComplexMatrix to_aform(const QuantumMap& map) {
  const std::size_t d_in = map.d_in();
  const std::size_t d_out = map.d_out();
  return std::visit(Overloaded{
                        [&](const TomographicRep& t) {
                          ComplexMatrix a(d_out * d_out, d_in * d_in);
                          for (std::size_t i = 0; i < t.outputs.size(); ++i)
                            a += outer(vec(t.outputs[i]), vec(t.duals[i]));
                          return a;
                        },
                        [&](const OperatorSumRep& o) {
                          ComplexMatrix a(d_out * d_out, d_in * d_in);
                          for (std::size_t i = 0; i < o.left.size(); ++i)
                            a += tensor_product(o.left[i], o.right[i].conjugate());
                          return a;
                        },
                        [&](const AForm& a) { return a.matrix; },
                        [&](const BForm& b) { return reshuffle(b.matrix, d_out, d_in); },
                    },
                    map.payload());
}

OperatorSumRep to_operator_sum(const QuantumMap& map) {
  const std::size_t d_in = map.d_in();
  const std::size_t d_out = map.d_out();
  const ComplexMatrix b = to_bform(map);
  OperatorSumRep rep;

  if (hermiticity_residual(b) <= kPropertyTolerance) {
    const auto eig = herm_eig(hermitian_part(b));
    const bool positive = eig.eigenvalues.back() >= -kPropertyTolerance;
    for (std::size_t a = 0; a < eig.eigenvalues.size(); ++a) {
      const double lambda = eig.eigenvalues[a];
      if (std::abs(lambda) <= kSupportThreshold) continue;
      if (positive && lambda < 0.0) continue;
      ComplexMatrix l = std::sqrt(std::abs(lambda)) * unvec(eig.eigenvectors.col(a), d_out, d_in);
      ComplexMatrix r = lambda < 0.0 ? -l : l;
      rep.left.push_back(std::move(l));
      rep.right.push_back(std::move(r));
    }
  } else {
    const auto s = svd(b);
    for (std::size_t a = 0; a < s.singular_values.size(); ++a) {
      const double sigma = s.singular_values[a];
      if (sigma <= kSupportThreshold) continue;
      rep.left.push_back(sigma * unvec(s.left.col(a), d_out, d_in));
      rep.right.push_back(unvec(s.right.col(a), d_out, d_in));
    }
  }
  if (rep.left.empty()) {
    // The zero map; keep the shapes so that callers can still apply it.
    rep.left.push_back(ComplexMatrix(d_out, d_in));
    rep.right.push_back(ComplexMatrix(d_out, d_in));
  }
  return rep;
}

TomographicRep to_tomographic(const QuantumMap& map, const std::vector<ComplexMatrix>& basis) {
  TomographicRep rep;
  rep.duals = dual_basis(basis);
  rep.inputs = basis;
  rep.outputs.reserve(basis.size());
  for (const auto& rho : basis) rep.outputs.push_back(apply(map, rho));
  return rep;
}

QuantumMap convert(const QuantumMap& map, Representation target) {
  const std::size_t d_in = map.d_in();
  const std::size_t d_out = map.d_out();
  switch (target) {
    case Representation::tomographic:
      return QuantumMap(d_in, d_out, to_tomographic(map, state_basis(d_in)));
    case Representation::kraus:
      return QuantumMap(d_in, d_out, to_operator_sum(map));
    case Representation::aform:
      return QuantumMap(d_in, d_out, AForm{to_aform(map)});
    case Representation::bform:
      return QuantumMap(d_in, d_out, BForm{to_bform(map)});
  }
  throw ValidationError("convert: unknown target representation");
}

// --- properties ----------------------------------------------------------------------

TpCheck check_tp(const QuantumMap& map, double tol) {
  const std::size_t d_in = map.d_in();
  const std::size_t d_out = map.d_out();
  const ComplexMatrix id = ComplexMatrix::identity(d_in);
  const double residual = std::visit(
      Overloaded{
          [&](const TomographicRep& t) {
            // sum_i tr(rho'_i) D_i^* = 1
            ComplexMatrix s(d_in, d_in);
            for (std::size_t i = 0; i < t.outputs.size(); ++i)
              s += t.outputs[i].trace() * t.duals[i].conjugate();
            return distance(s, id);
          },
          [&](const OperatorSumRep& o) {
            // sum_a R_a^dagger L_a = 1
            ComplexMatrix s(d_in, d_in);
            for (std::size_t i = 0; i < o.left.size(); ++i) s += o.right[i].adjoint() * o.left[i];
            return distance(s, id);
          },
          [&](const AForm& a) {
            // sum_r A[(r r), :] = vec(1)^T
            ComplexMatrix s(1, d_in * d_in);
            for (std::size_t r = 0; r < d_out; ++r)
              for (std::size_t c = 0; c < d_in * d_in; ++c) s(0, c) += a.matrix(r * d_out + r, c);
            return distance(s, vec(id).transpose());
          },
          [&](const BForm& b) {
            const std::size_t dims[] = {d_out, d_in};
            const std::size_t keep[] = {1};
            return distance(partial_trace(b.matrix, dims, keep), id);
          },
      },
      map.payload());
  return TpCheck{residual <= tol, residual};
}

double hp_residual(const QuantumMap& map) { return hermiticity_residual(to_bform(map)); }

bool check_hp(const QuantumMap& map, double tol) { return hp_residual(map) <= tol; }

CpCheck check_cp(const QuantumMap& map, double tol) {
  const ComplexMatrix b = to_bform(map);
  const double min_eig = min_eigenvalue(hermitian_part(b));
  const bool hermitian = hermiticity_residual(b) <= tol;
  return CpCheck{hermitian && min_eig >= -tol, min_eig};
}

std::size_t kraus_rank(const QuantumMap& map) {
  const auto cp = check_cp(map);
  if (!cp.ok) {
    throw ValidationError("kraus_rank: map is not completely positive (min eigenvalue " +
                          std::to_string(cp.min_eigenvalue) + ")");
  }
  std::size_t rank = 0;
  for (double x : herm_eigvals(hermitian_part(to_bform(map))))
    if (x > kSupportThreshold) ++rank;
  return rank;
}

bool same_map(const OperatorSumRep& a, const OperatorSumRep& b, double tol) {
  if (a.left.empty() || b.left.empty()) throw DimensionError("same_map: empty operator sum");
  const std::size_t d_out = a.left.front().rows();
  const std::size_t d_in = a.left.front().cols();
  if (b.left.front().rows() != d_out || b.left.front().cols() != d_in) {
    throw DimensionError("same_map: operator sums act between different spaces");
  }
  const QuantumMap ma(d_in, d_out, a);
  const QuantumMap mb(d_in, d_out, b);
  return distance(to_bform(ma), to_bform(mb)) <= tol;
}

}  // namespace qmaps
