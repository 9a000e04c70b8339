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

#include "qmaps/tomography.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qmaps/errors.hpp"
#include "qmaps/states.hpp"

namespace qmaps {

namespace {

std::size_t ipow(std::size_t base, std::size_t exp) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < exp; ++i) r *= base;
  return r;
}

// One step of the dilated dynamics: operation on the system, then U.
ComplexMatrix step(const ComplexMatrix& state, const Dilation& dilation,
                   const ComplexMatrix& op_bform, std::size_t j) {
  const std::size_t dims[] = {dilation.d_s, dilation.d_e};
  const ComplexMatrix after_op = apply_bform_on_subsystem(state, dims, op_bform, 0);
  const auto& u = dilation.unitaries[j];
  return u * after_op * u.adjoint();
}

ComplexMatrix system_part(const ComplexMatrix& state, const Dilation& dilation) {
  const std::size_t dims[] = {dilation.d_s, dilation.d_e};
  const std::size_t keep[] = {0};
  return partial_trace(state, dims, keep);
}

ComplexMatrix propagate(const Dilation& dilation, const std::vector<ComplexMatrix>& bforms) {
  ComplexMatrix state = dilation.initial_se;
  for (std::size_t j = 0; j < bforms.size(); ++j) state = step(state, dilation, bforms[j], j);
  return system_part(state, dilation);
}

TomographyRecord make_record(std::string label, ComplexMatrix output) {
  TomographyRecord r;
  r.prepared = std::move(label);
  r.success_probability = output.trace().real();
  r.output_state = std::move(output);
  return r;
}

ComplexMatrix top_eigenvector_of_pure(const ComplexMatrix& state) {
  const auto eig = herm_eig(0.5 * (state + state.adjoint()));
  if (std::abs(eig.eigenvalues.front() - 1.0) > 1e-9 ||
      (eig.eigenvalues.size() > 1 && std::abs(eig.eigenvalues[1]) > 1e-9)) {
    throw ValidationError("preparation by rotation needs rank-1 projector targets");
  }
  return eig.eigenvectors.col(0);
}

}  // namespace

// --- operation bases ---------------------------------------------------------------

OperationBasis operation_basis(std::size_t d) { return operation_basis(state_basis(d)); }

OperationBasis operation_basis(const std::vector<ComplexMatrix>& frame) {
  if (frame.empty()) throw DimensionError("operation_basis: empty frame");
  const std::size_t d = frame.front().rows();
  if (d < 2 || frame.size() != d * d) {
    throw DimensionError("operation_basis: need d^2 states of dimension d >= 2");
  }
  OperationBasis basis;
  basis.d = d;
  basis.states = frame;
  std::vector<ComplexMatrix> bforms;
  for (std::size_t i = 0; i < d * d; ++i) {
    const ComplexMatrix effect = frame[i].transpose();
    for (std::size_t j = 0; j < d * d; ++j) {
      ControlOperation op =
          ControlOperation::from_bform_unchecked(tensor_product(frame[j], effect), d);
      op.validate();
      bforms.push_back(op.bform);
      basis.elements.push_back(std::move(op));
    }
  }
  basis.duals = dual_basis(bforms);
  return basis;
}

// --- simulation ------------------------------------------------------------------------

TomographyRecord simulate_sequence(const Dilation& dilation, const OperationSequence& seq) {
  dilation.validate();
  const std::size_t k = dilation.steps();
  const std::size_t d = dilation.d_s;
  if (seq.steps() != k) {
    throw DimensionError("sequence has " + std::to_string(seq.steps()) +
                         " steps, dilation has " + std::to_string(k));
  }
  if (!seq.joint) {
    std::vector<ComplexMatrix> bforms;
    for (const auto& op : seq.ops) {
      if (op.d != d) throw DimensionError("operation dimension does not match the system");
      bforms.push_back(op.bform);
    }
    return make_record("sequence", propagate(dilation, bforms));
  }

  // Correlated sequence: expand over elementary products |x><y| on the legs
  // (in_{k-1}, out_{k-1}, ..., in_0, out_0) and propagate each one.
  const ComplexMatrix& joint = *seq.joint;
  const std::size_t n = ipow(d, 2 * k);
  if (joint.rows() != n) throw DimensionError("joint B form has wrong dimension");
  std::vector<std::size_t> xs(2 * k);
  std::vector<std::size_t> ys(2 * k);
  auto digits = [&](std::size_t idx, std::vector<std::size_t>& out) {
    for (std::size_t p = 2 * k; p-- > 0;) {
      out[p] = idx % d;
      idx /= d;
    }
  };
  ComplexMatrix output(d, d);
  std::vector<ComplexMatrix> bforms(k);
  for (std::size_t x = 0; x < n; ++x) {
    digits(x, xs);
    for (std::size_t y = 0; y < n; ++y) {
      const Complex c = joint(x, y);
      if (std::abs(c) < 1e-15) continue;
      digits(y, ys);
      for (std::size_t j = 0; j < k; ++j) {
        const std::size_t p = 2 * (k - 1 - j);
        bforms[j] = ComplexMatrix::unit(d * d, d * d, xs[p] * d + xs[p + 1], ys[p] * d + ys[p + 1]);
      }
      output += c * propagate(dilation, bforms);
    }
  }
  return make_record("correlated sequence", std::move(output));
}

std::vector<TomographyRecord> prepare_by_projection(const Dilation& dilation,
                                                    const std::vector<ComplexMatrix>& basis) {
  if (dilation.steps() != 1) throw ValidationError("state preparation needs a single-step dilation");
  std::vector<TomographyRecord> records;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const auto seq = OperationSequence::product({projection_operation(basis[i])});
    auto rec = simulate_sequence(dilation, seq);
    rec.prepared = "basis[" + std::to_string(i) + "]";
    records.push_back(std::move(rec));
  }
  return records;
}

std::vector<TomographyRecord> prepare_by_projection_and_rotation(
    const Dilation& dilation, const std::vector<ComplexMatrix>& basis) {
  if (dilation.steps() != 1) throw ValidationError("state preparation needs a single-step dilation");
  const std::size_t d = dilation.d_s;
  const ComplexMatrix p0 = projector(ket(d, 0));
  std::vector<TomographyRecord> records;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const ComplexMatrix v = unitary_with_first_column(top_eigenvector_of_pure(basis[i]));
    const auto seq = OperationSequence::product({ControlOperation::from_kraus({v * p0})});
    auto rec = simulate_sequence(dilation, seq);
    rec.prepared = "basis[" + std::to_string(i) + "]";
    records.push_back(std::move(rec));
  }
  return records;
}

QuantumMap reconstruct_map(const std::vector<TomographyRecord>& records,
                           const std::vector<ComplexMatrix>& basis) {
  if (records.size() != basis.size()) {
    throw ValidationError("reconstruct_map: " + std::to_string(records.size()) +
                          " records for a basis of " + std::to_string(basis.size()));
  }
  std::vector<ComplexMatrix> outputs;
  for (const auto& r : records) {
    if (r.success_probability <= 1e-12) {
      throw ValidationError("reconstruct_map: preparation '" + r.prepared + "' never succeeds");
    }
    outputs.push_back((1.0 / r.success_probability) * r.output_state);
  }
  return QuantumMap::from_tomographic(basis, std::move(outputs));
}

ComplexMatrix ancilla_assisted(const Dilation& dilation) {
  dilation.validate();
  if (dilation.steps() != 1) throw ValidationError("ancilla_assisted: needs a single-step dilation");
  if (!dilation.has_product_initial_state()) {
    throw ValidationError(
        "ancilla_assisted: initial system-environment state is correlated, so the dynamics "
        "is not a channel on the system");
  }
  const std::size_t d = dilation.d_s;
  const std::size_t d_e = dilation.d_e;
  const ComplexMatrix phi = vec(ComplexMatrix::identity(d));
  const ComplexMatrix joint = tensor_product((1.0 / static_cast<double>(d)) * outer(phi, phi),
                                             dilation.environment_marginal());
  const std::size_t dims[] = {d, d, d_e};
  const std::size_t targets[] = {0, 2};
  const ComplexMatrix evolved = conjugate_subsystems(joint, dims, dilation.unitaries[0], targets);
  const std::size_t keep[] = {0, 1};
  return static_cast<double>(d) * partial_trace(evolved, dims, keep);
}

ProcessTensor reconstruct_process_tensor(const Dilation& dilation, const OperationBasis& basis) {
  dilation.validate();
  const std::size_t k = dilation.steps();
  const std::size_t d = dilation.d_s;
  check_resource_bound(k, d);
  if (basis.d != d) throw DimensionError("operation basis dimension does not match the system");

  const std::size_t m = basis.elements.size();
  const std::size_t n_seq = ipow(m, k);
  const std::size_t n_in = ipow(d, 2 * k);
  std::vector<ComplexMatrix> conj_duals;
  for (const auto& dual : basis.duals) conj_duals.push_back(dual.conjugate());

  ComplexMatrix choi(d * n_in, d * n_in);
  std::vector<std::size_t> idx(k);
  std::vector<ComplexMatrix> bforms(k);
  std::vector<ComplexMatrix> dual_factors(k);
  for (std::size_t s = 0; s < n_seq; ++s) {
    std::size_t rest = s;
    for (std::size_t j = 0; j < k; ++j) {
      idx[j] = rest % m;
      rest /= m;
    }
    for (std::size_t j = 0; j < k; ++j) {
      bforms[j] = basis.elements[idx[j]].bform;
      dual_factors[k - 1 - j] = conj_duals[idx[j]];  // D = Delta_{i_{k-1}} (x) ... (x) Delta_{i_0}
    }
    const ComplexMatrix out = propagate(dilation, bforms);
    choi += tensor_product(out, tensor_product(std::span<const ComplexMatrix>(dual_factors)));
  }
  return ProcessTensor(k, d, std::move(choi));
}

// --- scenarios ---------------------------------------------------------------------

Dilation fresh_environment_dilation(const ComplexMatrix& rho_s, const ComplexMatrix& tau,
                                    const std::vector<ComplexMatrix>& step_unitaries) {
  const std::size_t k = step_unitaries.size();
  if (k == 0) throw ValidationError("fresh_environment_dilation: no steps");
  const std::size_t d_s = rho_s.rows();
  const std::size_t d_f = tau.rows();
  Dilation out;
  out.d_s = d_s;
  out.d_e = ipow(d_f, k);
  std::vector<ComplexMatrix> factors{rho_s};
  for (std::size_t j = 0; j < k; ++j) factors.push_back(tau);
  out.initial_se = tensor_product(std::span<const ComplexMatrix>(factors));

  const std::vector<std::size_t> dims = [&] {
    std::vector<std::size_t> v{d_s};
    v.insert(v.end(), k, d_f);
    return v;
  }();
  for (std::size_t j = 0; j < k; ++j) {
    const auto& u = step_unitaries[j];
    if (u.rows() != d_s * d_f || u.cols() != d_s * d_f) {
      throw DimensionError("fresh_environment_dilation: step unitary has wrong shape");
    }
    // Subsystem order of u (x) 1: system, qubit j, then the other qubits.
    std::vector<std::size_t> current{0, 1 + j};
    for (std::size_t q = 0; q < k; ++q)
      if (q != j) current.push_back(1 + q);
    std::vector<std::size_t> current_dims;
    for (auto c : current) current_dims.push_back(dims[c]);
    std::vector<std::size_t> perm(current.size());
    for (std::size_t i = 0; i < current.size(); ++i)
      perm[i] = static_cast<std::size_t>(std::find(current.begin(), current.end(), i) -
                                         current.begin());
    const ComplexMatrix w = tensor_product(u, ComplexMatrix::identity(ipow(d_f, k - 1)));
    out.unitaries.push_back(permute_subsystems(w, current_dims, perm));
  }
  out.validate();
  return out;
}

Dilation swap_memory_dilation(std::size_t k) {
  if (k == 0) throw ValidationError("swap_memory_dilation: no steps");
  Dilation out;
  out.d_s = 2;
  out.d_e = 2;
  out.initial_se = tensor_product(pi0(), pi0());
  out.unitaries.assign(k, swap_gate(2));
  return out;
}

Dilation cnot_demo_dilation(double mu, double nu) {
  if (!std::isfinite(mu) || !std::isfinite(nu) || std::abs(mu * mu + nu * nu - 2.0) > 1e-9) {
    throw ValidationError("cnot demo: need mu^2 + nu^2 = 2, got " +
                          std::to_string(mu * mu + nu * nu));
  }
  ComplexMatrix psi(4, 1);
  psi(0, 0) = mu / std::sqrt(2.0);
  psi(3, 0) = nu / std::sqrt(2.0);
  Dilation out;
  out.d_s = 2;
  out.d_e = 2;
  out.initial_se = projector(psi);
  // Environment (second factor) controls, system (first factor) is the target.
  out.unitaries = {tensor_product(ComplexMatrix::identity(2), pi0()) +
                   tensor_product(pauli_x(), pi1())};
  return out;
}

NcpReport ncp_demo(double mu, double nu, PreparationProtocol protocol) {
  const Dilation dilation = cnot_demo_dilation(mu, nu);
  NcpReport report;
  report.mu = mu;
  report.nu = nu;
  report.protocol = protocol;
  report.cnot_orientation = "control=environment,target=system";
  report.labels = {"Pi0", "Pi1", "Pi+", "Pi+i", "Pi-"};
  const std::vector<ComplexMatrix> states{pi0(), pi1(), pi_plus(), pi_plus_i(), pi_minus()};
  report.records = protocol == PreparationProtocol::projection
                       ? prepare_by_projection(dilation, states)
                       : prepare_by_projection_and_rotation(dilation, states);
  for (std::size_t i = 0; i < states.size(); ++i) {
    auto& rec = report.records[i];
    rec.prepared = report.labels[i];
  }

  const std::vector<ComplexMatrix> basis(states.begin(), states.begin() + 4);
  const std::vector<TomographyRecord> fit(report.records.begin(), report.records.begin() + 4);
  report.reconstruction = reconstruct_map(fit, basis);
  report.predicted_minus = apply(report.reconstruction, pi_minus());
  report.predicted_minus_eigenvalues =
      herm_eigvals(0.5 * (report.predicted_minus + report.predicted_minus.adjoint()));
  const auto cp = check_cp(report.reconstruction);
  report.map_min_eigenvalue = cp.min_eigenvalue;
  report.map_cp = cp.ok;
  report.map_hp = check_hp(report.reconstruction);

  const Superchannel sc = build_superchannel(dilation);
  report.superchannel_choi = sc.choi;
  report.superchannel_min_eigenvalue = min_eigenvalue(0.5 * (sc.choi + sc.choi.adjoint()));
  report.superchannel_cp = report.superchannel_min_eigenvalue >= -kPropertyTolerance;
  const ComplexMatrix minus_out = apply_superchannel(sc, projection_operation(pi_minus()));
  const double p_minus = minus_out.trace().real();
  if (p_minus <= 1e-12) throw ValidationError("cnot demo: projection onto Pi- never succeeds");
  report.superchannel_minus = (1.0 / p_minus) * minus_out;
  report.superchannel_minus_deviation = distance(report.superchannel_minus, pi_minus());

  auto conditional_env = [&](const ComplexMatrix& p) {
    const ComplexMatrix proj = tensor_product(p, ComplexMatrix::identity(2));
    const ComplexMatrix post = proj * dilation.initial_se * proj;
    const std::size_t dims[] = {2, 2};
    const std::size_t keep[] = {1};
    const ComplexMatrix env = partial_trace(post, dims, keep);
    const double w = env.trace().real();
    return w > 1e-12 ? (1.0 / w) * env : env;
  };
  report.tau_e0 = conditional_env(pi0());
  report.tau_e1 = conditional_env(pi1());
  report.tau_overlap = hs_inner(report.tau_e0, report.tau_e1).real();
  return report;
}

}  // namespace qmaps
