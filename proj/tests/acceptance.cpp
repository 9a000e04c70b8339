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

// Acceptance gate: one PASS/FAIL line per criterion; non-zero exit if any fail.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "qmaps/channels.hpp"
#include "qmaps/errors.hpp"
#include "qmaps/maps.hpp"
#include "qmaps/process_tensor.hpp"
#include "qmaps/random.hpp"
#include "qmaps/states.hpp"
#include "qmaps/superchannel.hpp"
#include "qmaps/tomography.hpp"

namespace qmaps {
namespace {

constexpr Complex kI{0.0, 1.0};

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

double max_dev(const ComplexMatrix& a, const ComplexMatrix& b) { return (a - b).max_abs(); }

Outcome dual_basis_fidelity() {
  const std::vector<ComplexMatrix> basis{pi_plus(), pi_plus_i(), pi0(), pi_minus()};
  // The four dual matrices as printed alongside this basis.
  const std::vector<ComplexMatrix> printed{
      0.5 * ComplexMatrix{{0.0, 1.0 + kI}, {1.0 - kI, 2.0}},
      0.5 * ComplexMatrix{{0.0, -kI}, {kI, 0.0}},
      ComplexMatrix{{1.0, 0.0}, {0.0, -1.0}},
      0.5 * ComplexMatrix{{0.0, -1.0 + kI}, {-1.0 - kI, 2.0}}};
  const auto duals = dual_basis(basis);
  bool pass = true;
  std::string detail = "deviation per dual:";
  for (std::size_t i = 0; i < 4; ++i) {
    const double dev = max_dev(duals[i], printed[i]);
    pass = pass && dev <= 1e-12;
    detail += " D" + std::to_string(i + 1) + "=" + fmt(dev);
  }
  // Whatever the printed values say, the computed set must be biorthogonal.
  double bio = 0.0;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      bio = std::max(bio, std::abs(hs_inner(duals[i], basis[j]) - (i == j ? 1.0 : 0.0)));
  detail += "; computed duals biorthogonality error " + fmt(bio);
  return {pass, detail};
}

Outcome ncp_demonstration() {
  const NcpReport r = ncp_demo(1.0, 1.0);
  auto out = [&](std::size_t i) {
    return (1.0 / r.records[i].success_probability) * r.records[i].output_state;
  };
  // records: Pi0, Pi1, Pi+, Pi+i, Pi-
  const double dev_true = std::max({max_dev(out(0), pi0()), max_dev(out(1), pi0()),
                                    max_dev(out(2), pi_plus()), max_dev(out(4), pi_minus())});
  const double dev_pred = max_dev(r.predicted_minus, 2.0 * pi0() - pi_plus());
  const double min_eig = r.predicted_minus_eigenvalues.back();
  const double golden = (1.0 - std::sqrt(5.0)) / 2.0;
  const bool pass = dev_true <= 1e-10 && dev_pred <= 1e-9 && std::abs(min_eig - golden) <= 1e-9 &&
                    !r.map_cp && r.superchannel_min_eigenvalue >= -1e-9 &&
                    r.superchannel_minus_deviation <= 1e-9;
  return {pass, "true outputs dev " + fmt(dev_true) + ", prediction min eig " +
                    std::to_string(min_eig) + ", linear map cp=" + (r.map_cp ? "true" : "false") +
                    ", superchannel min eig " + fmt(r.superchannel_min_eigenvalue) +
                    ", Pi- output dev " + fmt(r.superchannel_minus_deviation)};
}

Outcome representation_round_trips() {
  Rng rng(101);
  double worst_action = 0.0;
  double worst_reshuffle = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t d = trial % 2 ? 3 : 2;
    const QuantumMap m = random_cptp(rng, d, d);
    const QuantumMap tomo = convert(m, Representation::tomographic);
    const QuantumMap b1 = convert(tomo, Representation::bform);
    const QuantumMap os = convert(b1, Representation::kraus);
    const QuantumMap a = convert(os, Representation::aform);
    const QuantumMap b2 = convert(a, Representation::bform);
    const QuantumMap tomo2 = convert(b2, Representation::tomographic);
    worst_reshuffle = std::max(
        worst_reshuffle, max_dev(reshuffle(a.as<AForm>().matrix, d, d), b2.as<BForm>().matrix));
    for (int s = 0; s < 10; ++s) {
      const ComplexMatrix rho = random_state(rng, d);
      const ComplexMatrix expected = apply(m, rho);
      for (const QuantumMap* q : {&tomo, &b1, &os, &a, &b2, &tomo2})
        worst_action = std::max(worst_action, max_dev(apply(*q, rho), expected));
    }
  }
  return {worst_action <= 1e-9 && worst_reshuffle <= 1e-12,
          "100 maps, worst action dev " + fmt(worst_action) + ", reshuffle dev " +
              fmt(worst_reshuffle)};
}

Outcome table_equivalence() {
  Rng rng(202);
  struct Case {
    QuantumMap map;
    int tp, hp, cp;  // expected verdicts, -1 when not fixed in advance
  };
  std::vector<Case> cases{
      {QuantumMap::from_bform(swap_gate(2), 2, 2), 1, 1, 0},
      {QuantumMap::from_kraus({std::sqrt(0.6) * ComplexMatrix::identity(2)}), 0, 1, 1},
      {QuantumMap::from_operator_sum({ComplexMatrix::identity(2)},
                                     {kI * ComplexMatrix::identity(2)}),
       -1, 0, 0}};
  for (int i = 0; i < 100; ++i) cases.push_back({random_cptp(rng, 2 + i % 2, 2 + i % 2), 1, 1, 1});
  int disagreements = 0;
  int wrong = 0;
  for (const auto& c : cases) {
    const bool tp = check_tp(c.map).ok;
    const bool hp = check_hp(c.map);
    const bool cp = check_cp(c.map).ok;
    if ((c.tp >= 0 && tp != bool(c.tp)) || hp != bool(c.hp) || cp != bool(c.cp)) ++wrong;
    for (auto r : {Representation::tomographic, Representation::kraus, Representation::aform,
                   Representation::bform}) {
      const QuantumMap q = convert(c.map, r);
      if (check_tp(q).ok != tp || check_hp(q) != hp || check_cp(q).ok != cp) ++disagreements;
    }
  }
  return {disagreements == 0 && wrong == 0,
          std::to_string(cases.size()) + " maps, " + std::to_string(disagreements) +
              " cross-representation disagreements, " + std::to_string(wrong) +
              " wrong verdicts"};
}

Outcome stinespring_round_trip() {
  Rng rng(303);
  double worst = 0.0;
  bool all_cptp = true;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t d = trial % 2 ? 3 : 2;
    const QuantumMap m = random_cptp(rng, d, d, 1 + trial % (d * d));
    const Dilation dil = stinespring_dilate(m);
    const QuantumMap back = channel_from_dilation(dil.environment_marginal(), dil.unitaries[0]);
    worst = std::max(worst, max_dev(to_bform(back), to_bform(m)));
    all_cptp = all_cptp && check_tp(back).ok && check_cp(back).ok;
  }
  return {worst <= 1e-9 && all_cptp,
          "100 maps, worst Choi dev " + fmt(worst) + ", all CPTP " + (all_cptp ? "yes" : "no")};
}

Outcome superchannel_reduction() {
  Rng rng(404);
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const Dilation dil = random_dilation(rng, 2, 2 + trial % 2, 1, true);
    const Superchannel sc = build_superchannel(dil);
    const QuantumMap channel = channel_from_dilation(dil.environment_marginal(), dil.unitaries[0]);
    const ComplexMatrix rho = dil.system_marginal();
    for (int i = 0; i < 10; ++i) {
      const ControlOperation op =
          random_operation(rng, 2, i % 2 ? TraceClass::non_increasing : TraceClass::preserving);
      worst = std::max(worst, max_dev(apply_superchannel(sc, op),
                                      apply(channel, apply(op.as_map(), rho))));
    }
  }
  return {worst < 1e-9, "50 dilations x 10 operations, worst dev " + fmt(worst)};
}

Outcome causality() {
  Rng rng(505);
  double worst = 0.0;
  for (std::size_t k : {2u, 3u})
    for (std::size_t d_e : {2u, 3u}) {
      const Dilation dil = random_dilation(rng, 2, d_e, k, false);
      const ProcessTensor pt = build_process_tensor(dil);
      const ProcessTensor shorter = build_process_tensor(dil.truncated(k - 1));
      const auto dims = pt.leg_dims();
      std::vector<std::size_t> keep;
      for (std::size_t l = 1; l < dims.size(); ++l) keep.push_back(l);
      worst = std::max(worst, max_dev(partial_trace(pt.choi(), dims, keep),
                                      tensor_product(ComplexMatrix::identity(2), shorter.choi())));
    }
  return {worst <= 1e-9, "k in {2,3}, d_e in {2,3}, worst dev " + fmt(worst)};
}

Outcome markov_zero() {
  Rng rng(606);
  double worst_n = 0.0;
  double worst_chi = 0.0;
  for (std::size_t k : {2u, 3u}) {
    std::vector<ComplexMatrix> steps;
    for (std::size_t j = 0; j < k; ++j) steps.push_back(random_unitary(rng, 4));
    const ProcessTensor pt = build_process_tensor(
        fresh_environment_dilation(random_state(rng, 2), random_state(rng, 2), steps));
    for (auto dist : {Distance::trace, Distance::relative_entropy})
      worst_n = std::max(worst_n, non_markovianity(pt, dist).value);
    for (const auto& term : chi_decomposition(pt, k + 1))
      if (term.slots.size() >= 2) worst_chi = std::max(worst_chi, term.norm);
  }
  return {worst_n < 1e-9 && worst_chi < 1e-9,
          "worst N " + fmt(worst_n) + ", worst chi norm " + fmt(worst_chi)};
}

Outcome non_markov_detection() {
  // Frozen from the numpy brute-force oracle.
  constexpr double kOracleTrace = 0.75;
  const Dilation dil = swap_memory_dilation(2);
  const ProcessTensor pt = build_process_tensor(dil);
  const double n = non_markovianity(pt, Distance::trace).value;
  // Second path inside this binary: rebuild the Choi state from the comb's Kraus operators.
  ComplexMatrix brute(pt.choi().rows(), pt.choi().cols());
  for (const auto& k : process_tensor_kraus(dil)) {
    const ComplexMatrix v = vec(k);
    brute += v * v.adjoint();
  }
  const double n_brute = non_markovianity(ProcessTensor(2, 2, brute), Distance::trace).value;
  const bool markov = is_markov(pt, 1e-9);
  return {n > 0.1 && !markov && std::abs(n - kOracleTrace) <= 1e-9 &&
              std::abs(n_brute - kOracleTrace) <= 1e-9,
          "N(trace) " + std::to_string(n) + ", oracle " + std::to_string(kOracleTrace) +
              ", Kraus path " + std::to_string(n_brute) + ", is_markov " +
              (markov ? "true" : "false")};
}

Outcome tomography() {
  Rng rng(707);
  const Dilation dil = random_dilation(rng, 2, 2, 2, false);
  const auto start = std::chrono::steady_clock::now();
  const OperationBasis basis = operation_basis(2);
  const ProcessTensor rec = reconstruct_process_tensor(dil, basis);
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const ProcessTensor direct = build_process_tensor(dil);
  const double dev = max_dev(rec.choi(), direct.choi());
  const double dn = std::abs(non_markovianity(rec, Distance::trace).value -
                             non_markovianity(direct, Distance::trace).value);
  const std::size_t sequences = basis.elements.size() * basis.elements.size();
  return {sequences == 256 && dev <= 1e-8 && dn <= 1e-7 && seconds < 60.0,
          std::to_string(sequences) + " sequences, Choi dev " + fmt(dev) + ", N dev " + fmt(dn) +
              ", " + fmt(seconds) + " s"};
}

Outcome numerical_kernels() {
  const double td = trace_distance(pi0(), pi_plus());
  const double re = relative_entropy(pi0(), 0.5 * ComplexMatrix::identity(2));
  const auto ev = herm_eigvals(2.0 * pi0() - pi_plus());
  const double s = surprise(1, std::numbers::ln2);
  const bool pass = std::abs(td - 1.0 / std::sqrt(2.0)) <= 1e-10 &&
                    std::abs(re - std::numbers::ln2) <= 1e-9 &&
                    std::abs(ev[0] - (1.0 + std::sqrt(5.0)) / 2.0) <= 1e-10 &&
                    std::abs(ev[1] - (1.0 - std::sqrt(5.0)) / 2.0) <= 1e-10 && s == 0.5;
  return {pass, "trace distance " + fmt(td - 1.0 / std::sqrt(2.0)) + " off, relative entropy " +
                    fmt(re - std::numbers::ln2) + " off, surprise(1, ln 2) == 0.5: " +
                    (s == 0.5 ? "yes" : "no")};
}

}  // namespace
}  // namespace qmaps

int main() {
  using qmaps::Outcome;
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"dual-basis fidelity", qmaps::dual_basis_fidelity},
      {"NCP demonstration", qmaps::ncp_demonstration},
      {"representation round-trips", qmaps::representation_round_trips},
      {"property verdict equivalence", qmaps::table_equivalence},
      {"Stinespring round-trip", qmaps::stinespring_round_trip},
      {"superchannel reduction", qmaps::superchannel_reduction},
      {"process-tensor causality", qmaps::causality},
      {"Markov zero", qmaps::markov_zero},
      {"non-Markov detection", qmaps::non_markov_detection},
      {"process-tensor tomography", qmaps::tomography},
      {"numerical kernels", qmaps::numerical_kernels},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::printf("%s criterion %zu (%s): %s\n", o.pass ? "PASS" : "FAIL", i + 1,
                criteria[i].first.c_str(), o.detail.c_str());
  }
  std::printf("%d of %zu criteria failed\n", failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
