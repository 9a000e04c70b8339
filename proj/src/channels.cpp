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

#include "qmaps/channels.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qmaps/errors.hpp"
#include "qmaps/states.hpp"

namespace qmaps {

namespace {

void require_probability(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw ValidationError(std::string(what) + ": parameter " + std::to_string(p) +
                          " outside [0, 1]");
  }
}

}  // namespace

// --- Dilation ------------------------------------------------------------------------

void Dilation::validate() const {
  if (d_s == 0 || d_e == 0) throw DimensionError("dilation dimensions must be positive");
  const std::size_t n = d_s * d_e;
  if (initial_se.rows() != n || initial_se.cols() != n) {
    throw DimensionError("dilation: initial state must be " + std::to_string(n) + "x" +
                         std::to_string(n));
  }
  if (!initial_se.all_finite()) throw ValidationError("dilation: non-finite initial state");
  if (hermiticity_residual(initial_se) > 1e-9) {
    throw ValidationError("dilation: initial state is not Hermitian");
  }
  const double min_eig = min_eigenvalue(0.5 * (initial_se + initial_se.adjoint()));
  if (min_eig < -1e-9) {
    throw ValidationError("dilation: initial state has negative eigenvalue " +
                          std::to_string(min_eig));
  }
  if (std::abs(initial_se.trace() - Complex{1.0, 0.0}) > 1e-9) {
    throw ValidationError("dilation: initial state does not have unit trace");
  }
  for (std::size_t j = 0; j < unitaries.size(); ++j) {
    const auto& u = unitaries[j];
    if (u.rows() != n || u.cols() != n) {
      throw DimensionError("dilation: unitary " + std::to_string(j) + " has wrong shape");
    }
    if (!u.all_finite() || !is_unitary(u, 1e-9)) {
      throw ValidationError("dilation: step " + std::to_string(j) + " is not unitary");
    }
  }
}

Dilation Dilation::truncated(std::size_t k) const {
  if (k > unitaries.size()) {
    throw ValidationError("cannot truncate a " + std::to_string(unitaries.size()) +
                          "-step dilation to " + std::to_string(k) + " steps");
  }
  Dilation out = *this;
  out.unitaries.resize(k);
  return out;
}

ComplexMatrix Dilation::system_marginal() const {
  const std::size_t dims[] = {d_s, d_e};
  const std::size_t keep[] = {0};
  return partial_trace(initial_se, dims, keep);
}

ComplexMatrix Dilation::environment_marginal() const {
  const std::size_t dims[] = {d_s, d_e};
  const std::size_t keep[] = {1};
  return partial_trace(initial_se, dims, keep);
}

bool Dilation::has_product_initial_state(double tol) const {
  return distance(initial_se, tensor_product(system_marginal(), environment_marginal())) <= tol;
}

// --- dilation <-> channel ---------------------------------------------------------------

QuantumMap channel_from_dilation(const ComplexMatrix& tau_e, const ComplexMatrix& u) {
  if (!tau_e.is_square() || tau_e.rows() == 0 || u.rows() % tau_e.rows() != 0) {
    throw DimensionError("channel_from_dilation: environment state does not divide unitary");
  }
  const std::size_t d_e = tau_e.rows();
  const std::size_t d_s = u.rows() / d_e;
  Dilation check{d_s, d_e, tensor_product(ComplexMatrix::identity(d_s) * (1.0 / d_s), tau_e),
                 {u}};
  check.validate();

  const auto env = herm_eig(0.5 * (tau_e + tau_e.adjoint()));
  std::vector<ComplexMatrix> kraus;
  for (std::size_t x = 0; x < d_e; ++x) {
    const double p = env.eigenvalues[x];
    if (p <= 1e-12) continue;
    const double w = std::sqrt(p);
    for (std::size_t eps = 0; eps < d_e; ++eps) {
      // K[r, s] = sqrt(p) sum_e U[(r, eps), (s, e)] phi_x[e]
      ComplexMatrix k(d_s, d_s);
      for (std::size_t r = 0; r < d_s; ++r)
        for (std::size_t s = 0; s < d_s; ++s) {
          Complex acc{0.0, 0.0};
          for (std::size_t e = 0; e < d_e; ++e)
            acc += u(r * d_e + eps, s * d_e + e) * env.eigenvectors(e, x);
          k(r, s) = w * acc;
        }
      kraus.push_back(std::move(k));
    }
  }
  return QuantumMap::from_kraus(std::move(kraus));
}

Dilation stinespring_dilate(const QuantumMap& map, IsometryCompletion completion) {
  if (map.d_in() != map.d_out()) {
    throw DimensionError("stinespring_dilate: map must have d_in == d_out");
  }
  const auto cp = check_cp(map);
  if (!cp.ok) {
    throw ValidationError("stinespring_dilate: map is not completely positive (min eigenvalue " +
                          std::to_string(cp.min_eigenvalue) + ")");
  }
  const auto tp = check_tp(map);
  if (!tp.ok) {
    throw ValidationError("stinespring_dilate: map is not trace preserving (residual " +
                          std::to_string(tp.residual) + ")");
  }
  const std::size_t d = map.d_in();
  const auto kraus = to_operator_sum(map).left;
  const std::size_t d_e = std::max<std::size_t>(kraus.size(), 2);
  const std::size_t n = d * d_e;

  // V = sum_a K_a (x) |a>, placed in the columns (s, e = 0) of U.
  ComplexMatrix u(n, n);
  std::vector<bool> filled(n, false);
  for (std::size_t s = 0; s < d; ++s) {
    for (std::size_t a = 0; a < kraus.size(); ++a)
      for (std::size_t r = 0; r < d; ++r) u(r * d_e + a, s * d_e) = kraus[a](r, s);
    filled[s * d_e] = true;
  }

  // Remaining columns: Gram-Schmidt over the standard basis.
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) {
    order[i] = completion == IsometryCompletion::ascending ? i : n - 1 - i;
  }
  std::vector<std::size_t> done;
  for (std::size_t c = 0; c < n; ++c)
    if (filled[c]) done.push_back(c);
  std::size_t candidate = 0;
  for (std::size_t c = 0; c < n; ++c) {
    if (filled[c]) continue;
    while (candidate < n) {
      ComplexMatrix v = ComplexMatrix::unit(n, 1, order[candidate++], 0);
      for (int pass = 0; pass < 2; ++pass)
        for (auto k : done) {
          Complex proj{0.0, 0.0};
          for (std::size_t r = 0; r < n; ++r) proj += std::conj(u(r, k)) * v(r, 0);
          for (std::size_t r = 0; r < n; ++r) v(r, 0) -= proj * u(r, k);
        }
      const double norm = v.frobenius_norm();
      if (norm < 1e-8) continue;
      for (std::size_t r = 0; r < n; ++r) u(r, c) = v(r, 0) / norm;
      done.push_back(c);
      break;
    }
  }
  if (done.size() != n) throw ValidationError("stinespring_dilate: isometry completion failed");

  Dilation out;
  out.d_s = d;
  out.d_e = d_e;
  out.initial_se = tensor_product((1.0 / static_cast<double>(d)) * ComplexMatrix::identity(d),
                                  projector(ket(d_e, 0)));
  out.unitaries = {std::move(u)};
  return out;
}

// --- standard channels ------------------------------------------------------------------

QuantumMap identity_channel(std::size_t d) {
  return QuantumMap::from_kraus({ComplexMatrix::identity(d)});
}

QuantumMap unitary_channel(const ComplexMatrix& u) {
  if (!is_unitary(u)) throw ValidationError("unitary_channel: operator is not unitary");
  return QuantumMap::from_kraus({u});
}

QuantumMap depolarizing_channel(std::size_t d, double p) {
  require_probability(p, "depolarizing_channel");
  if (d == 0) throw DimensionError("depolarizing_channel: d must be positive");
  std::vector<ComplexMatrix> ops;
  if (p < 1.0) ops.push_back(std::sqrt(1.0 - p) * ComplexMatrix::identity(d));
  if (p > 0.0) {
    const double w = std::sqrt(p / static_cast<double>(d));
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) ops.push_back(w * ComplexMatrix::unit(d, d, i, j));
  }
  return QuantumMap::from_kraus(std::move(ops));
}

QuantumMap amplitude_damping_channel(double gamma) {
  require_probability(gamma, "amplitude_damping_channel");
  ComplexMatrix k0{{1.0, 0.0}, {0.0, std::sqrt(1.0 - gamma)}};
  ComplexMatrix k1{{0.0, std::sqrt(gamma)}, {0.0, 0.0}};
  return QuantumMap::from_kraus({k0, k1});
}

QuantumMap bit_flip_channel(double p) {
  require_probability(p, "bit_flip_channel");
  return QuantumMap::from_kraus(
      {std::sqrt(1.0 - p) * ComplexMatrix::identity(2), std::sqrt(p) * pauli_x()});
}

QuantumMap phase_flip_channel(double p) {
  require_probability(p, "phase_flip_channel");
  return QuantumMap::from_kraus(
      {std::sqrt(1.0 - p) * ComplexMatrix::identity(2), std::sqrt(p) * pauli_z()});
}

QuantumMap measure_prepare_channel(const std::vector<ComplexMatrix>& prepared) {
  const std::size_t d = prepared.size();
  if (d == 0) throw DimensionError("measure_prepare_channel: no prepared states");
  std::vector<ComplexMatrix> ops;
  for (std::size_t k = 0; k < d; ++k) {
    const auto& sigma = prepared[k];
    if (sigma.rows() != d || sigma.cols() != d) {
      throw DimensionError("measure_prepare_channel: prepared state has wrong shape");
    }
    if (hermiticity_residual(sigma) > 1e-9 ||
        std::abs(sigma.trace() - Complex{1.0, 0.0}) > 1e-9) {
      throw ValidationError("measure_prepare_channel: prepared state is not a density operator");
    }
    const auto eig = herm_eig(0.5 * (sigma + sigma.adjoint()));
    if (eig.eigenvalues.back() < -1e-9) {
      throw ValidationError("measure_prepare_channel: prepared state is not positive");
    }
    const ComplexMatrix bra = ket(d, k).adjoint();
    for (std::size_t a = 0; a < d; ++a) {
      const double lambda = eig.eigenvalues[a];
      if (lambda <= 1e-12) continue;
      ops.push_back(std::sqrt(lambda) * (eig.eigenvectors.col(a) * bra));
    }
  }
  return QuantumMap::from_kraus(std::move(ops));
}

QuantumMap standard_channel(const ChannelSpec& spec) {
  if (spec.kind == "identity") return identity_channel(spec.d);
  if (spec.kind == "unitary") return unitary_channel(spec.unitary);
  if (spec.kind == "depolarizing") return depolarizing_channel(spec.d, spec.p);
  if (spec.kind == "amplitude_damping") return amplitude_damping_channel(spec.p);
  if (spec.kind == "bit_flip") return bit_flip_channel(spec.p);
  if (spec.kind == "phase_flip") return phase_flip_channel(spec.p);
  if (spec.kind == "measure_prepare") return measure_prepare_channel(spec.prepared);
  throw ValidationError("unknown channel kind '" + spec.kind + "'");
}

}  // namespace qmaps
