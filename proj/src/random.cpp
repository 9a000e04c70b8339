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

#include "qmaps/random.hpp"

#include <cmath>

#include "qmaps/errors.hpp"

namespace qmaps {

ComplexMatrix random_ginibre(Rng& rng, std::size_t rows, std::size_t cols) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix m(rows, cols);
  for (auto& z : m.data()) {
    const double re = normal(rng);
    const double im = normal(rng);
    z = Complex{re, im};
  }
  return m;
}

ComplexMatrix random_hermitian(Rng& rng, std::size_t d) {
  const ComplexMatrix g = random_ginibre(rng, d, d);
  return 0.5 * (g + g.adjoint());
}

ComplexMatrix random_unitary(Rng& rng, std::size_t d) {
  ComplexMatrix q = random_ginibre(rng, d, d);
  for (std::size_t c = 0; c < d; ++c) {
    for (int pass = 0; pass < 2; ++pass)
      for (std::size_t p = 0; p < c; ++p) {
        Complex proj{0.0, 0.0};
        for (std::size_t r = 0; r < d; ++r) proj += std::conj(q(r, p)) * q(r, c);
        for (std::size_t r = 0; r < d; ++r) q(r, c) -= proj * q(r, p);
      }
    const double norm = q.col(c).frobenius_norm();
    for (std::size_t r = 0; r < d; ++r) q(r, c) /= norm;
  }
  return q;
}

ComplexMatrix random_state(Rng& rng, std::size_t d, std::size_t rank) {
  if (rank == 0) rank = d;
  const ComplexMatrix g = random_ginibre(rng, d, rank);
  ComplexMatrix rho = g * g.adjoint();
  rho *= 1.0 / rho.trace().real();
  return 0.5 * (rho + rho.adjoint());
}

QuantumMap random_cptp(Rng& rng, std::size_t d_in, std::size_t d_out, std::size_t n_kraus) {
  if (n_kraus == 0) n_kraus = d_in * d_out;
  std::vector<ComplexMatrix> ops;
  ComplexMatrix sum(d_in, d_in);
  for (std::size_t a = 0; a < n_kraus; ++a) {
    ops.push_back(random_ginibre(rng, d_out, d_in));
    sum += ops.back().adjoint() * ops.back();
  }
  const ComplexMatrix norm = matrix_inverse_sqrt(0.5 * (sum + sum.adjoint()));
  for (auto& k : ops) k = k * norm;
  return QuantumMap::from_kraus(std::move(ops));
}

ControlOperation random_operation(Rng& rng, std::size_t d, TraceClass trace_class) {
  const QuantumMap channel = random_cptp(rng, d, d, 2);
  auto ops = channel.as<OperatorSumRep>().left;
  if (trace_class == TraceClass::non_increasing) {
    std::uniform_real_distribution<double> uniform(0.2, 0.9);
    const double scale = std::sqrt(uniform(rng));
    for (auto& k : ops) k *= scale;
  }
  ControlOperation op = ControlOperation::from_kraus(ops);
  op.trace_class = trace_class;
  return op;
}

Dilation random_dilation(Rng& rng, std::size_t d_s, std::size_t d_e, std::size_t k,
                         bool product) {
  Dilation out;
  out.d_s = d_s;
  out.d_e = d_e;
  out.initial_se = product
                       ? tensor_product(random_state(rng, d_s), random_state(rng, d_e))
                       : random_state(rng, d_s * d_e);
  for (std::size_t j = 0; j < k; ++j) out.unitaries.push_back(random_unitary(rng, d_s * d_e));
  out.validate();
  return out;
}

}  // namespace qmaps
