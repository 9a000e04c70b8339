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

#include "qmaps/process_tensor.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <string>

#include "qmaps/errors.hpp"

namespace qmaps {

namespace {

std::size_t ipow(std::size_t base, std::size_t exp) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < exp; ++i) r *= base;
  return r;
}

double real_trace(const ComplexMatrix& m) { return m.trace().real(); }

// Legs of a time slot in canonical order.
std::vector<std::size_t> slot_legs(std::size_t slot, std::size_t k) {
  if (slot == 0) return {2 * k};
  const std::size_t p = 2 * (k - slot);
  return {p, p + 1};
}

// Tensor product of blocks given in arbitrary leg order, reordered so that the
// legs appear in ascending (canonical) position.
ComplexMatrix canonical_product(const std::vector<ComplexMatrix>& blocks,
                                const std::vector<std::vector<std::size_t>>& block_legs,
                                std::size_t d) {
  std::vector<std::size_t> legs;
  for (const auto& b : block_legs) legs.insert(legs.end(), b.begin(), b.end());
  const ComplexMatrix prod = tensor_product(std::span<const ComplexMatrix>(blocks));
  std::vector<std::size_t> sorted = legs;
  std::sort(sorted.begin(), sorted.end());
  std::vector<std::size_t> perm(legs.size());
  for (std::size_t i = 0; i < sorted.size(); ++i)
    perm[i] = static_cast<std::size_t>(std::find(legs.begin(), legs.end(), sorted[i]) -
                                       legs.begin());
  const std::vector<std::size_t> dims(legs.size(), d);
  return permute_subsystems(prod, dims, perm);
}

// All partitions of `items` into at least two non-empty blocks.
void proper_partitions(const std::vector<std::size_t>& items,
                       std::vector<std::vector<std::vector<std::size_t>>>& out) {
  std::vector<std::vector<std::size_t>> current;
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == items.size()) {
      if (current.size() >= 2) out.push_back(current);
      return;
    }
    // Indexed access: deeper calls push onto `current` and may reallocate it.
    for (std::size_t b = 0; b < current.size(); ++b) {
      current[b].push_back(items[i]);
      rec(i + 1);
      current[b].pop_back();
    }
    current.push_back({items[i]});
    rec(i + 1);
    current.pop_back();
  };
  rec(0);
}

}  // namespace

void check_resource_bound(std::size_t k, std::size_t d_s) {
  if (k == 0) throw ValidationError("process tensor needs at least one step");
  double dim = 1.0;
  for (std::size_t i = 0; i < 2 * k + 1; ++i) dim *= static_cast<double>(d_s);
  if (dim > static_cast<double>(kMaxChoiDimension)) {
    throw ResourceError("a " + std::to_string(k) + "-step process on dimension " +
                        std::to_string(d_s) + " needs a Choi state of dimension " +
                        std::to_string(static_cast<long long>(dim)) + " (limit " +
                        std::to_string(kMaxChoiDimension) + ")");
  }
}

// --- ProcessTensor -----------------------------------------------------------------

ProcessTensor::ProcessTensor(std::size_t k, std::size_t d_s, ComplexMatrix choi)
    : k_(k), d_s_(d_s), choi_(std::move(choi)) {
  if (d_s_ == 0) throw DimensionError("process tensor: d_s must be positive");
  check_resource_bound(k_, d_s_);
  const std::size_t n = ipow(d_s_, 2 * k_ + 1);
  if (choi_.rows() != n || choi_.cols() != n) {
    throw DimensionError("process tensor: Choi state must be " + std::to_string(n) + "x" +
                         std::to_string(n));
  }
  if (!choi_.all_finite()) throw ValidationError("process tensor: non-finite Choi state");
}

std::vector<std::size_t> ProcessTensor::leg_dims() const {
  return std::vector<std::size_t>(2 * k_ + 1, d_s_);
}

std::string ProcessTensor::leg_order(std::size_t k) {
  std::string s = "out_" + std::to_string(k);
  for (std::size_t j = k; j-- > 0;) {
    s += ",in_" + std::to_string(j) + ",out_" + std::to_string(j);
  }
  return s;
}

void ProcessTensor::validate(double tol) const {
  if (hermiticity_residual(choi_) > tol) {
    throw ValidationError("process tensor: Choi state is not Hermitian");
  }
  const double min_eig = min_eigenvalue(0.5 * (choi_ + choi_.adjoint()));
  if (min_eig < -tol) {
    throw ValidationError("process tensor: Choi state is not positive (min eigenvalue " +
                          std::to_string(min_eig) + ")");
  }
}

// --- OperationSequence ---------------------------------------------------------------

OperationSequence OperationSequence::product(std::vector<ControlOperation> ops) {
  if (ops.empty()) throw ValidationError("operation sequence is empty");
  for (const auto& op : ops) {
    if (op.d != ops.front().d) throw DimensionError("operations act on different dimensions");
  }
  OperationSequence seq;
  seq.ops = std::move(ops);
  return seq;
}

OperationSequence OperationSequence::correlated(ComplexMatrix joint_bform, std::size_t k,
                                                std::size_t d) {
  const std::size_t n = ipow(d, 2 * k);
  if (k == 0 || joint_bform.rows() != n || joint_bform.cols() != n) {
    throw DimensionError("joint operation B form must be " + std::to_string(n) + "x" +
                         std::to_string(n));
  }
  if (hermiticity_residual(joint_bform) > 1e-9 ||
      min_eigenvalue(0.5 * (joint_bform + joint_bform.adjoint())) < -1e-9) {
    throw ValidationError("joint operation B form is not positive");
  }
  OperationSequence seq;
  seq.joint = std::move(joint_bform);
  seq.joint_steps = k;
  return seq;
}

ComplexMatrix OperationSequence::joint_bform() const {
  if (joint) return *joint;
  std::vector<ComplexMatrix> factors;
  for (auto it = ops.rbegin(); it != ops.rend(); ++it) factors.push_back(it->bform);
  return tensor_product(std::span<const ComplexMatrix>(factors));
}

// --- construction ---------------------------------------------------------------------

ProcessTensor build_process_tensor(const Dilation& dilation) {
  dilation.validate();
  const std::size_t k = dilation.steps();
  const std::size_t d = dilation.d_s;
  const std::size_t d_e = dilation.d_e;
  check_resource_bound(k, d);

  // x lives on (s, e, legs) where legs = (in_{j-1}, out_{j-1}, ..., out_0).
  ComplexMatrix x = dilation.initial_se;
  std::size_t n_legs = 1;
  for (std::size_t j = 0; j < k; ++j) {
    // The current system becomes leg out_j; the operation's output enters the
    // system maximally correlated with the new leg in_j.
    const std::size_t old_n = d * d_e * n_legs;
    const std::size_t new_legs = d * d * n_legs;
    ComplexMatrix next(d * d_e * new_legs, d * d_e * new_legs);
    auto index = [&](std::size_t s, std::size_t e, std::size_t in, std::size_t out,
                     std::size_t l) {
      return ((s * d_e + e) * d + in) * d * n_legs + out * n_legs + l;
    };
    for (std::size_t row = 0; row < old_n; ++row) {
      const std::size_t o = row / (d_e * n_legs);
      const std::size_t e = (row / n_legs) % d_e;
      const std::size_t l = row % n_legs;
      for (std::size_t col = 0; col < old_n; ++col) {
        const Complex v = x(row, col);
        if (v == Complex{}) continue;
        const std::size_t op = col / (d_e * n_legs);
        const std::size_t ep = (col / n_legs) % d_e;
        const std::size_t lp = col % n_legs;
        for (std::size_t i = 0; i < d; ++i)
          for (std::size_t ip = 0; ip < d; ++ip)
            next(index(i, e, i, o, l), index(ip, ep, ip, op, lp)) = v;
      }
    }
    n_legs = new_legs;
    const std::size_t dims[] = {d, d_e, n_legs};
    const std::size_t targets[] = {0, 1};
    x = conjugate_subsystems(next, dims, dilation.unitaries[j], targets);
  }
  const std::size_t dims[] = {d, d_e, n_legs};
  const std::size_t keep[] = {0, 2};
  return ProcessTensor(k, d, partial_trace(x, dims, keep));
}

std::vector<ComplexMatrix> process_tensor_kraus(const Dilation& dilation) {
  dilation.validate();
  const std::size_t k = dilation.steps();
  const std::size_t d = dilation.d_s;
  const std::size_t d_e = dilation.d_e;
  check_resource_bound(k, d);
  const std::size_t n = d * d_e;
  const std::size_t n_in = ipow(d, 2 * k);

  const auto eig = herm_eig(0.5 * (dilation.initial_se + dilation.initial_se.adjoint()));
  std::vector<ComplexMatrix> out;
  std::vector<std::size_t> digits(2 * k);
  for (std::size_t x = 0; x < n; ++x) {
    const double lambda = eig.eigenvalues[x];
    if (lambda < 1e-12) continue;
    const double w = std::sqrt(lambda);
    std::vector<ComplexMatrix> ops(d_e, ComplexMatrix(d, n_in));
    for (std::size_t idx = 0; idx < n_in; ++idx) {
      std::size_t rest = idx;
      for (std::size_t p = 2 * k; p-- > 0;) {
        digits[p] = rest % d;
        rest /= d;
      }
      ComplexMatrix v = eig.eigenvectors.col(x);
      for (std::size_t j = 0; j < k; ++j) {
        const std::size_t a = digits[2 * (k - 1 - j)];
        const std::size_t b = digits[2 * (k - 1 - j) + 1];
        // (|a><b| (x) 1) v
        ComplexMatrix moved(n, 1);
        for (std::size_t e = 0; e < d_e; ++e) moved(a * d_e + e, 0) = v(b * d_e + e, 0);
        v = dilation.unitaries[j] * moved;
      }
      for (std::size_t eps = 0; eps < d_e; ++eps)
        for (std::size_t o = 0; o < d; ++o) ops[eps](o, idx) = w * v(o * d_e + eps, 0);
    }
    for (auto& op : ops) out.push_back(std::move(op));
  }
  return out;
}

ComplexMatrix apply_process_tensor(const ProcessTensor& pt, const OperationSequence& seq) {
  if (seq.steps() != pt.steps()) {
    throw DimensionError("sequence has " + std::to_string(seq.steps()) +
                         " steps, process tensor has " + std::to_string(pt.steps()));
  }
  for (const auto& op : seq.ops) {
    if (op.d != pt.d_s()) throw DimensionError("operation dimension does not match process");
  }
  return contract_choi(pt.choi(), pt.d_s(), seq.joint_bform());
}

ComplexMatrix bform(const ProcessTensor& pt) { return pt.choi(); }

ComplexMatrix aform(const ProcessTensor& pt) {
  return reshuffle(pt.choi(), pt.d_s(), ipow(pt.d_s(), 2 * pt.steps()));
}

ComplexMatrix step_map(const ProcessTensor& pt, std::size_t j) {
  const std::size_t k = pt.steps();
  if (j < 1 || j > k) {
    throw ValidationError("step_map: step " + std::to_string(j) + " outside [1, " +
                          std::to_string(k) + "]");
  }
  const auto dims = pt.leg_dims();
  const auto legs = slot_legs(j, k);
  const double scale = 1.0 / static_cast<double>(ipow(pt.d_s(), k - 1));
  return scale * partial_trace(pt.choi(), dims, legs);
}

ComplexMatrix initial_state(const ProcessTensor& pt) {
  const std::size_t k = pt.steps();
  const auto dims = pt.leg_dims();
  const std::size_t keep[] = {2 * k};
  const double scale = 1.0 / static_cast<double>(ipow(pt.d_s(), k));
  return scale * partial_trace(pt.choi(), dims, keep);
}

ProcessTensor markov_product(const ProcessTensor& pt) {
  const std::size_t k = pt.steps();
  std::vector<ComplexMatrix> factors;
  for (std::size_t j = k; j >= 1; --j) factors.push_back(step_map(pt, j));
  factors.push_back(initial_state(pt));
  return ProcessTensor(k, pt.d_s(), tensor_product(std::span<const ComplexMatrix>(factors)));
}

// --- correlations and non-Markovianity ---------------------------------------------

std::vector<ChiTerm> chi_decomposition(const ProcessTensor& pt, std::size_t order) {
  const std::size_t k = pt.steps();
  const std::size_t n_slots = k + 1;
  if (order < 1 || order > n_slots) {
    throw ValidationError("chi_decomposition: order must lie in [1, " +
                          std::to_string(n_slots) + "]");
  }
  const double tr = real_trace(pt.choi());
  if (!(tr > 0.0)) throw ValidationError("chi_decomposition: Choi state has no weight");
  const ComplexMatrix normalized = (1.0 / tr) * pt.choi();
  const auto dims = pt.leg_dims();
  const std::size_t d = pt.d_s();

  auto legs_of = [&](const std::vector<std::size_t>& slots) {
    std::vector<std::size_t> legs;
    for (auto s : slots) {
      const auto l = slot_legs(s, k);
      legs.insert(legs.end(), l.begin(), l.end());
    }
    std::sort(legs.begin(), legs.end());
    return legs;
  };

  std::vector<ComplexMatrix> marginal(n_slots);
  for (std::size_t s = 0; s < n_slots; ++s)
    marginal[s] = partial_trace(normalized, dims, slot_legs(s, k));

  std::map<std::vector<std::size_t>, ComplexMatrix> chi;
  std::vector<ChiTerm> terms;
  for (std::size_t size = 1; size <= order; ++size) {
    // Subsets of the given size, enumerated by bitmask in lexicographic order.
    std::vector<std::vector<std::size_t>> subsets;
    for (std::size_t mask = 1; mask < (std::size_t{1} << n_slots); ++mask) {
      std::vector<std::size_t> s;
      for (std::size_t b = 0; b < n_slots; ++b)
        if (mask & (std::size_t{1} << b)) s.push_back(b);
      if (s.size() == size) subsets.push_back(std::move(s));
    }
    std::sort(subsets.begin(), subsets.end());
    for (const auto& subset : subsets) {
      ComplexMatrix block = partial_trace(normalized, dims, legs_of(subset));
      if (size >= 2) {
        std::vector<std::vector<std::vector<std::size_t>>> partitions;
        proper_partitions(subset, partitions);
        for (const auto& partition : partitions) {
          std::vector<ComplexMatrix> blocks;
          std::vector<std::vector<std::size_t>> block_legs;
          for (auto part : partition) {
            std::sort(part.begin(), part.end());
            blocks.push_back(chi.at(part));
            block_legs.push_back(legs_of(part));
          }
          block -= canonical_product(blocks, block_legs, d);
        }
      }
      chi[subset] = block;

      std::vector<ComplexMatrix> parts{block};
      std::vector<std::vector<std::size_t>> part_legs{legs_of(subset)};
      for (std::size_t s = 0; s < n_slots; ++s) {
        if (std::find(subset.begin(), subset.end(), s) != subset.end()) continue;
        parts.push_back(marginal[s]);
        part_legs.push_back(slot_legs(s, k));
      }
      ChiTerm term;
      term.slots = subset;
      term.norm = block.frobenius_norm();
      term.embedded = tr * canonical_product(parts, part_legs, d);
      term.block = std::move(block);
      terms.push_back(std::move(term));
    }
  }
  return terms;
}

std::string to_string(Distance d) {
  return d == Distance::trace ? "trace" : "relative_entropy";
}

Distance distance_from_string(const std::string& name) {
  if (name == "trace") return Distance::trace;
  if (name == "relative_entropy" || name == "relative-entropy") return Distance::relative_entropy;
  throw ValidationError("unknown distance '" + name + "' (expected trace or relative_entropy)");
}

NonMarkovianity non_markovianity(const ProcessTensor& pt, Distance distance) {
  const ProcessTensor mk = markov_product(pt);
  const double tr_a = real_trace(pt.choi());
  const double tr_b = real_trace(mk.choi());
  if (!(tr_a > 0.0) || !(tr_b > 0.0)) {
    throw ValidationError("non_markovianity: Choi state has no weight");
  }
  const ComplexMatrix a = (1.0 / tr_a) * pt.choi();
  const ComplexMatrix b = (1.0 / tr_b) * mk.choi();
  if (distance == Distance::trace) return {trace_distance(a, b), ""};
  const double s = relative_entropy(a, b);
  if (std::isinf(s)) {
    return {s,
            "support of the process Choi state is not contained in the support of its Markov "
            "product; relative entropy is infinite"};
  }
  return {s, ""};
}

bool is_markov(const ProcessTensor& pt, double tol) {
  return non_markovianity(pt, Distance::trace).value <= tol;
}

double surprise(int n, double N) {
  if (n < 1) throw ValidationError("surprise: n must be at least 1");
  if (N < 0.0 || std::isnan(N)) throw ValidationError("surprise: N must be non-negative");
  return std::exp(-static_cast<double>(n) * N);
}

}  // namespace qmaps
