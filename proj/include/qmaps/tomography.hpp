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

// Simulated tomography experiments.
//
// Everything here is exact density-matrix propagation; there is no shot noise.
// Demo and scenario dilations used by the tests and the CLI live here too.

#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "qmaps/channels.hpp"
#include "qmaps/maps.hpp"
#include "qmaps/process_tensor.hpp"
#include "qmaps/superchannel.hpp"

namespace qmaps {

struct TomographyRecord {
  std::string prepared;
  ComplexMatrix output_state;  // unnormalised: trace = success_probability
  double success_probability = 0.0;
};

/// d^4 measure-and-prepare operations A_{ij}[rho] = rho_j tr(rho_i rho), stored
/// at index i d^2 + j, with their duals on the doubled space.
struct OperationBasis {
  std::size_t d = 0;
  std::vector<ComplexMatrix> states;  // the rank-1 frame rho_i
  std::vector<ControlOperation> elements;
  std::vector<ComplexMatrix> duals;
};

/// Uses state_basis(d) as the frame.
OperationBasis operation_basis(std::size_t d);
/// Any frame of d^2 linearly independent projectors.
OperationBasis operation_basis(const std::vector<ComplexMatrix>& frame);

/// Propagates the dilation through the sequence. Correlated sequences are
/// expanded over elementary product sequences.
TomographyRecord simulate_sequence(const Dilation& dilation, const OperationSequence& seq);

/// Records for a single-step dilation when each basis state is prepared by a
/// projection. The success probability of the projection is kept in the
/// record, so post-selection amounts to dividing by it.
std::vector<TomographyRecord> prepare_by_projection(const Dilation& dilation,
                                                    const std::vector<ComplexMatrix>& basis);
/// As above, but every state is prepared by projecting onto |0><0| and then
/// rotating to the target pure state.
std::vector<TomographyRecord> prepare_by_projection_and_rotation(
    const Dilation& dilation, const std::vector<ComplexMatrix>& basis);

/// Tomographic map from one record per basis element (outputs are normalised
/// by their success probability). Throws ValidationError on a count mismatch.
QuantumMap reconstruct_map(const std::vector<TomographyRecord>& records,
                           const std::vector<ComplexMatrix>& basis);

/// Choi state (unnormalised, tr = d) recovered by sending half of a maximally
/// entangled pair through a single-step dilation. Throws ValidationError when
/// the initial state is correlated.
ComplexMatrix ancilla_assisted(const Dilation& dilation);

/// Runs all d^{4k} basis sequences and assembles sum_i rho'_i (x) D_i^*.
ProcessTensor reconstruct_process_tensor(const Dilation& dilation, const OperationBasis& basis);

// --- scenarios -------------------------------------------------------------------

/// k steps, each coupling the system to its own fresh environment qubit in
/// state tau. Step j applies step_unitaries[j] to (system, qubit j). The
/// resulting process is Markovian by construction.
Dilation fresh_environment_dilation(const ComplexMatrix& rho_s, const ComplexMatrix& tau,
                                    const std::vector<ComplexMatrix>& step_unitaries);

/// A qubit swapped with one persisting environment qubit at every step,
/// starting from |00>.
Dilation swap_memory_dilation(std::size_t k);

/// (mu |00> + nu |11>)/sqrt2 on (system, environment) with a CNOT whose
/// control is the environment. Requires |mu|^2 + |nu|^2 = 2.
Dilation cnot_demo_dilation(double mu, double nu);

enum class PreparationProtocol { projection, projection_rotation };

struct NcpReport {
  double mu = 1.0;
  double nu = 1.0;
  PreparationProtocol protocol = PreparationProtocol::projection;
  std::string cnot_orientation;
  std::vector<std::string> labels;         // Pi0, Pi1, Pi+, Pi+i, Pi-
  std::vector<TomographyRecord> records;   // true outputs, same order as labels
  QuantumMap reconstruction{2, 2, BForm{ComplexMatrix(4, 4)}};  // from the first four records
  ComplexMatrix predicted_minus;           // linear prediction for Pi-
  std::vector<double> predicted_minus_eigenvalues;
  double map_min_eigenvalue = 0.0;         // of the reconstructed Choi matrix
  bool map_cp = false;
  bool map_hp = false;
  ComplexMatrix superchannel_choi;
  double superchannel_min_eigenvalue = 0.0;
  bool superchannel_cp = false;
  ComplexMatrix superchannel_minus;        // M[projection onto Pi-], normalised
  double superchannel_minus_deviation = 0.0;  // Frobenius distance to Pi-
  ComplexMatrix tau_e0;
  ComplexMatrix tau_e1;
  double tau_overlap = 0.0;                // tr(tau_e0 tau_e1)
};

NcpReport ncp_demo(double mu, double nu,
                   PreparationProtocol protocol = PreparationProtocol::projection);

}  // namespace qmaps
