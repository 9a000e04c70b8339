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

#include "qmaps/states.hpp"

#include <cmath>

#include "qmaps/errors.hpp"

namespace qmaps {

namespace {
constexpr Complex kI{0.0, 1.0};
}  // namespace

ComplexMatrix ket(std::size_t d, std::size_t k) {
  if (k >= d) throw DimensionError("ket index out of range");
  return ComplexMatrix::unit(d, 1, k, 0);
}

ComplexMatrix projector(const ComplexMatrix& v) { return outer(v, v); }

ComplexMatrix pi0() { return {{1.0, 0.0}, {0.0, 0.0}}; }
ComplexMatrix pi1() { return {{0.0, 0.0}, {0.0, 1.0}}; }
ComplexMatrix pi_plus() { return {{0.5, 0.5}, {0.5, 0.5}}; }
ComplexMatrix pi_minus() { return {{0.5, -0.5}, {-0.5, 0.5}}; }
ComplexMatrix pi_plus_i() { return {{0.5, -0.5 * kI}, {0.5 * kI, 0.5}}; }

ComplexMatrix pauli_x() { return {{0.0, 1.0}, {1.0, 0.0}}; }
ComplexMatrix pauli_y() { return {{0.0, -kI}, {kI, 0.0}}; }
ComplexMatrix pauli_z() { return {{1.0, 0.0}, {0.0, -1.0}}; }

ComplexMatrix hadamard() {
  const double h = 1.0 / std::sqrt(2.0);
  return {{h, h}, {h, -h}};
}

ComplexMatrix cnot() {
  return tensor_product(pi0(), ComplexMatrix::identity(2)) + tensor_product(pi1(), pauli_x());
}

ComplexMatrix swap_gate(std::size_t d) {
  ComplexMatrix s(d * d, d * d);
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b) s(b * d + a, a * d + b) = 1.0;
  return s;
}

std::vector<ComplexMatrix> gell_mann_basis(std::size_t d) {
  if (d == 0) throw DimensionError("gell_mann_basis: d must be positive");
  std::vector<ComplexMatrix> out;
  out.reserve(d * d);
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t k = j + 1; k < d; ++k) {
      ComplexMatrix g(d, d);
      g(j, k) = 1.0;
      g(k, j) = 1.0;
      out.push_back(std::move(g));
    }
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t k = j + 1; k < d; ++k) {
      ComplexMatrix g(d, d);
      g(j, k) = -kI;
      g(k, j) = kI;
      out.push_back(std::move(g));
    }
  for (std::size_t l = 1; l < d; ++l) {
    const double scale = std::sqrt(2.0 / static_cast<double>(l * (l + 1)));
    ComplexMatrix g(d, d);
    for (std::size_t m = 0; m < l; ++m) g(m, m) = scale;
    g(l, l) = -scale * static_cast<double>(l);
    out.push_back(std::move(g));
  }
  out.push_back(std::sqrt(2.0 / static_cast<double>(d)) * ComplexMatrix::identity(d));
  return out;
}

std::vector<ComplexMatrix> state_basis(std::size_t d) {
  if (d < 2) throw DimensionError("state_basis: d must be at least 2");
  if (d == 2) return {pi_plus(), pi_plus_i(), pi0(), pi_minus()};
  std::vector<ComplexMatrix> out;
  out.reserve(d * d);
  for (std::size_t k = 0; k < d; ++k) out.push_back(projector(ket(d, k)));
  const double h = 1.0 / std::sqrt(2.0);
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t k = j + 1; k < d; ++k) {
      ComplexMatrix v(d, 1);
      v(j, 0) = h;
      v(k, 0) = h;
      out.push_back(projector(v));
    }
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t k = j + 1; k < d; ++k) {
      ComplexMatrix v(d, 1);
      v(j, 0) = h;
      v(k, 0) = h * kI;
      out.push_back(projector(v));
    }
  return out;
}

ComplexMatrix unitary_with_first_column(const ComplexMatrix& v) {
  if (v.cols() != 1) throw DimensionError("unitary_with_first_column: expected a column");
  const double norm = v.frobenius_norm();
  if (norm < 1e-12) throw ValidationError("unitary_with_first_column: zero vector");
  const std::size_t d = v.rows();
  ComplexMatrix u(d, d);
  for (std::size_t r = 0; r < d; ++r) u(r, 0) = v(r, 0) / norm;
  std::size_t next = 1;
  for (std::size_t e = 0; e < d && next < d; ++e) {
    ComplexMatrix cand = ket(d, e);
    for (int pass = 0; pass < 2; ++pass)
      for (std::size_t c = 0; c < next; ++c) {
        Complex p{0.0, 0.0};
        for (std::size_t r = 0; r < d; ++r) p += std::conj(u(r, c)) * cand(r, 0);
        for (std::size_t r = 0; r < d; ++r) cand(r, 0) -= p * u(r, c);
      }
    const double n = cand.frobenius_norm();
    if (n < 1e-8) continue;
    for (std::size_t r = 0; r < d; ++r) u(r, next) = cand(r, 0) / n;
    ++next;
  }
  return u;
}

}  // namespace qmaps
