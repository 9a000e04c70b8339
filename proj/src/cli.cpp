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

#include "qmaps/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <cstdint>
#include <optional>
#include <sstream>

#include "qmaps/channels.hpp"
#include "qmaps/errors.hpp"
#include "qmaps/io.hpp"
#include "qmaps/maps.hpp"
#include "qmaps/process_tensor.hpp"
#include "qmaps/random.hpp"
#include "qmaps/states.hpp"
#include "qmaps/superchannel.hpp"
#include "qmaps/tomography.hpp"

namespace qmaps::cli {

namespace {

using io::Json;

struct GlobalOptions {
  double tol = 1e-9;
  std::uint64_t seed = 7;
  std::string output;
  std::string table;
};

// Where a dilation comes from: a JSON file or a named built-in scenario.
struct DilationSource {
  std::string input;
  std::string scenario;
  std::optional<std::size_t> k;
};

Json number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "+inf" : "-inf";
  return x;
}

Json tolerances(const GlobalOptions& g) {
  return Json{{"property", g.tol},
              {"support_threshold", kSupportThreshold},
              {"positivity", kPropertyTolerance}};
}

void emit(const GlobalOptions& g, const Json& j, std::ostream& out) {
  const std::string text = io::dump(j);
  if (g.output.empty()) {
    out << text;
  } else {
    io::write_text_atomic(g.output, text);
  }
}

Dilation scenario_dilation(const std::string& name, std::size_t k, std::uint64_t seed) {
  if (name == "swap-memory") return swap_memory_dilation(k);
  if (name == "fresh-environment") {
    Rng rng(seed);
    const ComplexMatrix rho_s = random_state(rng, 2);
    std::vector<ComplexMatrix> steps;
    for (std::size_t j = 0; j < k; ++j) steps.push_back(random_unitary(rng, 4));
    return fresh_environment_dilation(rho_s, pi0(), steps);
  }
  if (name == "cnot-demo") {
    if (k != 1) throw ValidationError("the cnot-demo scenario has a single step");
    return cnot_demo_dilation(1.0, 1.0);
  }
  if (name == "random") {
    Rng rng(seed);
    return random_dilation(rng, 2, 2, k, false);
  }
  throw ValidationError("unknown scenario '" + name +
                        "' (expected swap-memory, fresh-environment, cnot-demo or random)");
}

std::pair<Dilation, std::string> load_dilation(const DilationSource& src, std::uint64_t seed,
                                               std::size_t default_k) {
  if (!src.input.empty() && !src.scenario.empty()) {
    throw ParseError("give either an input file or --scenario, not both");
  }
  if (!src.scenario.empty()) {
    const std::size_t k = src.k.value_or(default_k);
    if (k == 0) throw ValidationError("-k must be at least 1");
    check_resource_bound(k, 2);
    return {scenario_dilation(src.scenario, k, seed), src.scenario};
  }
  if (src.input.empty()) throw ParseError("missing dilation input (file or --scenario)");
  Dilation d = io::dilation_from_json(io::read_json_file(src.input));
  if (src.k) d = d.truncated(*src.k);
  return {std::move(d), src.input};
}

void add_dilation_source(CLI::App* cmd, DilationSource& src) {
  cmd->add_option("input", src.input, "Dilation JSON file");
  cmd->add_option("--scenario", src.scenario,
                  "Built-in dilation: swap-memory, fresh-environment, cnot-demo, random");
  cmd->add_option("-k,--steps", src.k, "Number of steps (truncates file input)");
}

// --- subcommands ---------------------------------------------------------------------

void cmd_convert(const GlobalOptions& g, const std::string& input, const std::string& target,
                 std::ostream& out) {
  const QuantumMap map = io::map_from_json(io::read_json_file(input));
  const QuantumMap converted = convert(map, representation_from_string(target));
  Json j = io::map_to_json(converted);
  j["metadata"] = Json{{"source_repr", to_string(map.representation())},
                       {"residual", distance(to_bform(map), to_bform(converted))}};
  emit(g, j, out);
}

void cmd_check(const GlobalOptions& g, const std::string& input, std::ostream& out) {
  const QuantumMap map = io::map_from_json(io::read_json_file(input));
  const auto tp = check_tp(map, g.tol);
  const auto cp = check_cp(map, g.tol);
  const double hp_res = hp_residual(map);
  Json j{{"repr", to_string(map.representation())},
         {"d_in", map.d_in()},
         {"d_out", map.d_out()},
         {"tp", tp.ok},
         {"hp", hp_res <= g.tol},
         {"cp", cp.ok},
         {"min_eig", cp.min_eigenvalue},
         {"residuals", Json{{"tp", tp.residual}, {"hp", hp_res}}},
         {"tolerances", tolerances(g)}};
  j["kraus_rank"] = cp.ok ? Json(kraus_rank(map)) : Json(nullptr);
  emit(g, j, out);
}

void cmd_dilate(const GlobalOptions& g, const std::string& input, const std::string& completion,
                std::ostream& out) {
  const QuantumMap map = io::map_from_json(io::read_json_file(input));
  IsometryCompletion order = IsometryCompletion::ascending;
  if (completion == "descending") {
    order = IsometryCompletion::descending;
  } else if (completion != "ascending") {
    throw ValidationError("--completion must be ascending or descending");
  }
  const Dilation dil = stinespring_dilate(map, order);
  const ComplexMatrix tau = dil.environment_marginal();
  const QuantumMap back = channel_from_dilation(tau, dil.unitaries.front());
  Json j = io::dilation_to_json(dil);
  j["metadata"] = Json{{"round_trip_residual", distance(to_bform(back), to_bform(map))},
                       {"completion", completion}};
  emit(g, j, out);
}

void cmd_channel(const GlobalOptions& g, const ChannelSpec& spec_in,
                 const std::string& unitary_file, std::ostream& out) {
  ChannelSpec spec = spec_in;
  QuantumMap map = identity_channel(spec.d);
  if (spec.kind == "random") {
    Rng rng(g.seed);
    map = random_cptp(rng, spec.d, spec.d);
  } else {
    if (spec.kind == "unitary") {
      if (unitary_file.empty()) throw ParseError("--kind unitary needs --unitary FILE");
      spec.unitary = io::matrix_from_json(io::read_json_file(unitary_file));
    }
    map = standard_channel(spec);
  }
  emit(g, io::map_to_json(map), out);
}

void cmd_superchannel(const GlobalOptions& g, const DilationSource& src,
                      const std::string& operation_file, std::ostream& out) {
  auto [dil, name] = load_dilation(src, g.seed, 1);
  const Superchannel sc = build_superchannel(dil);
  const double min_eig = min_eigenvalue(0.5 * (sc.choi + sc.choi.adjoint()));
  Json j{{"scenario", name},
         {"superchannel", io::process_tensor_to_json(ProcessTensor(1, sc.d_s, sc.choi))},
         {"cp", min_eig >= -g.tol},
         {"min_eig", min_eig},
         {"tolerances", tolerances(g)}};
  if (!operation_file.empty()) {
    const ControlOperation op = io::operation_from_json(io::read_json_file(operation_file));
    const ComplexMatrix output = apply_superchannel(sc, op);
    j["output"] = io::matrix_to_json(output);
    j["probability"] = output.trace().real();
  }
  emit(g, j, out);
}

void cmd_process_tensor(const GlobalOptions& g, const DilationSource& src, std::ostream& out) {
  auto [dil, name] = load_dilation(src, g.seed, 2);
  const ProcessTensor pt = build_process_tensor(dil);
  Json j = io::process_tensor_to_json(pt);
  j["metadata"] = Json{{"scenario", name},
                       {"min_eig", min_eigenvalue(0.5 * (pt.choi() + pt.choi().adjoint()))}};
  emit(g, j, out);
}

void cmd_tomography(const GlobalOptions& g, const DilationSource& src, std::ostream& out) {
  auto [dil, name] = load_dilation(src, g.seed, 2);
  check_resource_bound(dil.steps(), dil.d_s);
  const OperationBasis basis = operation_basis(dil.d_s);
  const ProcessTensor rec = reconstruct_process_tensor(dil, basis);
  const ProcessTensor direct = build_process_tensor(dil);
  Json j = io::process_tensor_to_json(rec);
  std::size_t sequences = 1;
  for (std::size_t i = 0; i < dil.steps(); ++i) sequences *= basis.elements.size();
  j["metadata"] = Json{{"scenario", name},
                       {"sequences", sequences},
                       {"max_deviation_from_direct", distance(rec.choi(), direct.choi())}};
  emit(g, j, out);
}

void cmd_nonmarkov(const GlobalOptions& g, const DilationSource& src,
                   const std::string& distance_name, std::ostream& out, std::ostream& err) {
  auto [dil, name] = load_dilation(src, g.seed, 2);
  std::vector<Distance> distances;
  if (distance_name == "both") {
    distances = {Distance::trace, Distance::relative_entropy};
  } else {
    distances = {distance_from_string(distance_name)};
  }
  const ProcessTensor pt = build_process_tensor(dil);

  Json measures = Json::object();
  for (const Distance dist : distances) {
    const auto nm = non_markovianity(pt, dist);
    Json entry{{"N", number(nm.value)}};
    Json surprises = Json::object();
    for (int n : {1, 10, 100}) surprises[std::to_string(n)] = number(surprise(n, std::max(nm.value, 0.0)));
    entry["surprise"] = surprises;
    if (!nm.diagnostic.empty()) {
      entry["diagnostic"] = nm.diagnostic;
      err << "warning: " << nm.diagnostic << "\n";
    }
    measures[to_string(dist)] = entry;
  }
  Json chi = Json::array();
  for (const auto& term : chi_decomposition(pt, pt.steps() + 1)) {
    if (term.slots.size() < 2) continue;
    chi.push_back(Json{{"slots", term.slots}, {"norm", term.norm}});
  }
  Json j{{"scenario", name},
         {"k", pt.steps()},
         {"d_s", pt.d_s()},
         {"non_markovianity", measures},
         {"is_markov", is_markov(pt, g.tol)},
         {"chi_terms", chi},
         {"normalization", "Choi states divided by their trace before the distance is taken"},
         {"tolerances", tolerances(g)}};
  emit(g, j, out);

  if (!g.table.empty()) {
    std::ostringstream csv;
    csv.precision(17);
    csv << "k,distance,N,surprise_n10\n";
    for (std::size_t k = 1; k <= dil.steps(); ++k) {
      const ProcessTensor sub = build_process_tensor(dil.truncated(k));
      for (const Distance dist : distances) {
        const double n = non_markovianity(sub, dist).value;
        csv << k << ',' << to_string(dist) << ',' << n << ','
            << surprise(10, std::max(n, 0.0)) << '\n';
      }
    }
    io::write_text_atomic(g.table, csv.str());
  }
}

void cmd_ncp_demo(const GlobalOptions& g, double mu, double nu, const std::string& protocol_name,
                  std::ostream& out) {
  PreparationProtocol protocol = PreparationProtocol::projection;
  if (protocol_name == "projection-rotation") {
    protocol = PreparationProtocol::projection_rotation;
  } else if (protocol_name != "projection") {
    throw ValidationError("--protocol must be projection or projection-rotation");
  }
  const NcpReport r = ncp_demo(mu, nu, protocol);
  Json records = Json::array();
  for (const auto& rec : r.records) {
    records.push_back(Json{{"prepared", rec.prepared},
                           {"probability", rec.success_probability},
                           {"output", io::matrix_to_json((1.0 / rec.success_probability) *
                                                         rec.output_state)}});
  }
  const double prediction_min = r.predicted_minus_eigenvalues.back();
  Json j{{"scenario", "cnot-correlated-preparation"},
         {"mu", mu},
         {"nu", nu},
         {"protocol", protocol_name},
         {"cnot_orientation", r.cnot_orientation},
         {"records", records},
         {"reconstruction", io::map_to_json(r.reconstruction)},
         {"prediction_for_pi_minus", io::matrix_to_json(r.predicted_minus)},
         {"verdicts",
          Json{{"cp", r.map_cp},
               {"hp", r.map_hp},
               {"min_eig", prediction_min},
               {"choi_min_eig", r.map_min_eigenvalue}}},
         {"superchannel",
          Json{{"cp", r.superchannel_cp},
               {"min_eig", r.superchannel_min_eigenvalue},
               {"pi_minus_output", io::matrix_to_json(r.superchannel_minus)},
               {"pi_minus_deviation", r.superchannel_minus_deviation}}},
         {"conditional_environment",
          Json{{"tau_e0", io::matrix_to_json(r.tau_e0)},
               {"tau_e1", io::matrix_to_json(r.tau_e1)},
               {"overlap", r.tau_overlap}}},
         {"tolerances", tolerances(g)}};
  emit(g, j, out);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quantum maps, superchannels and process tensors"};
  app.name("qmaps");
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions g;
  app.add_option("--tol", g.tol, "Tolerance for property verdicts")->capture_default_str();
  app.add_option("--seed", g.seed, "Seed for random constructions")->capture_default_str();
  app.add_option("--output", g.output, "Write JSON here instead of stdout");
  app.add_option("--emit-table", g.table, "Write a CSV table here (nonmarkov)");

  std::string input;
  std::string target;
  auto* convert_cmd = app.add_subcommand("convert", "Re-encode a map in another representation");
  convert_cmd->add_option("input", input, "Map JSON file")->required();
  convert_cmd->add_option("--to", target, "tomographic, kraus, aform or bform")->required();

  auto* check_cmd = app.add_subcommand("check", "TP / HP / CP verdicts for a map");
  check_cmd->add_option("input", input, "Map JSON file")->required();

  std::string completion = "ascending";
  auto* dilate_cmd = app.add_subcommand("dilate", "Stinespring dilation of a CPTP map");
  dilate_cmd->add_option("input", input, "Map JSON file")->required();
  dilate_cmd->add_option("--completion", completion, "ascending or descending")
      ->capture_default_str();

  ChannelSpec spec;
  std::string unitary_file;
  auto* channel_cmd = app.add_subcommand("channel", "Emit a standard channel");
  channel_cmd
      ->add_option("--kind", spec.kind,
                   "identity, unitary, depolarizing, amplitude_damping, bit_flip, phase_flip, "
                   "random")
      ->required();
  channel_cmd->add_option("--p", spec.p, "Probability (gamma for amplitude damping)");
  channel_cmd->add_option("--d", spec.d, "Dimension")->capture_default_str();
  channel_cmd->add_option("--unitary", unitary_file, "Matrix JSON for --kind unitary");

  DilationSource sc_src;
  std::string operation_file;
  auto* sc_cmd = app.add_subcommand("superchannel", "Superchannel of a one-step dilation");
  add_dilation_source(sc_cmd, sc_src);
  sc_cmd->add_option("--operation", operation_file, "ControlOperation JSON to apply");

  DilationSource pt_src;
  auto* pt_cmd = app.add_subcommand("process-tensor", "Process tensor of a dilation");
  add_dilation_source(pt_cmd, pt_src);

  DilationSource tomo_src;
  auto* tomo_cmd = app.add_subcommand("tomography", "Process-tensor tomography by simulation");
  add_dilation_source(tomo_cmd, tomo_src);

  DilationSource nm_src;
  std::string distance_name = "both";
  auto* nm_cmd = app.add_subcommand("nonmarkov", "Non-Markovianity of a dilated process");
  add_dilation_source(nm_cmd, nm_src);
  nm_cmd->add_option("--distance", distance_name, "trace, relative_entropy or both")
      ->capture_default_str();

  double mu = 1.0;
  double nu = 1.0;
  std::string protocol = "projection";
  auto* ncp_cmd = app.add_subcommand("ncp-demo", "Correlated-preparation tomography demo");
  ncp_cmd->add_option("--mu", mu, "Amplitude of |00>")->capture_default_str();
  ncp_cmd->add_option("--nu", nu, "Amplitude of |11>")->capture_default_str();
  ncp_cmd->add_option("--protocol", protocol, "projection or projection-rotation")
      ->capture_default_str();

  std::vector<std::string> argv_storage{"qmaps"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_storage) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kInputOutput;
  }

  try {
    if (*convert_cmd) cmd_convert(g, input, target, out);
    if (*check_cmd) cmd_check(g, input, out);
    if (*dilate_cmd) cmd_dilate(g, input, completion, out);
    if (*channel_cmd) cmd_channel(g, spec, unitary_file, out);
    if (*sc_cmd) cmd_superchannel(g, sc_src, operation_file, out);
    if (*pt_cmd) cmd_process_tensor(g, pt_src, out);
    if (*tomo_cmd) cmd_tomography(g, tomo_src, out);
    if (*nm_cmd) cmd_nonmarkov(g, nm_src, distance_name, out, err);
    if (*ncp_cmd) cmd_ncp_demo(g, mu, nu, protocol, out);
  } catch (const ResourceError& e) {
    err << "resource limit: " << e.what() << "\n";
    return kResource;
  } catch (const ParseError& e) {
    err << "input error: " << e.what() << "\n";
    return kInputOutput;
  } catch (const ValidationError& e) {
    err << "validation failed: " << e.what() << "\n";
    return kValidation;
  } catch (const DimensionError& e) {
    err << "validation failed: " << e.what() << "\n";
    return kValidation;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternal;
  }
  return kOk;
}

}  // namespace qmaps::cli
