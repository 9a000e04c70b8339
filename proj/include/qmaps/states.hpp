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

// Named qubit states, gates and state frames shared by the rest of the library.

#pragma once

#include <cstddef>
#include <vector>

#include "qmaps/linalg.hpp"

namespace qmaps {

/// Computational basis ket |k> in dimension d.
ComplexMatrix ket(std::size_t d, std::size_t k);
/// |v><v| for a column vector v.
ComplexMatrix projector(const ComplexMatrix& v);

// Qubit projectors. `pi_plus_i` is the +1 eigenprojector of sigma_y.
ComplexMatrix pi0();
ComplexMatrix pi1();
ComplexMatrix pi_plus();
ComplexMatrix pi_minus();
ComplexMatrix pi_plus_i();

ComplexMatrix pauli_x();
ComplexMatrix pauli_y();
ComplexMatrix pauli_z();
ComplexMatrix hadamard();
/// Two-qubit CNOT with the first factor as control.
ComplexMatrix cnot();
/// Swap of two d-dimensional factors.
ComplexMatrix swap_gate(std::size_t d);

/// Generalised Gell-Mann matrices (symmetric, antisymmetric, diagonal) followed
/// by sqrt(2/d) * I. All Hermitian with tr(G_i G_j) = 2 delta_ij.
std::vector<ComplexMatrix> gell_mann_basis(std::size_t d);

/// Default informationally complete frame of d^2 rank-1 projectors.
///
/// For qubits this is {Pi_+, Pi_{+i}, Pi_0, Pi_-}. For d >= 3 the frame is
/// built from eigenvectors of the Gell-Mann matrices: the d computational
/// projectors, then (|j> + |k>)/sqrt2 and (|j> + i|k>)/sqrt2 for j < k.
std::vector<ComplexMatrix> state_basis(std::size_t d);

/// Unitary whose first column is the normalised vector v (completed by
/// Gram-Schmidt over the standard basis).
ComplexMatrix unitary_with_first_column(const ComplexMatrix& v);

}  // namespace qmaps
