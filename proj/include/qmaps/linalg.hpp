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

// Dense complex linear algebra kernel.
//
// Everything above this layer (maps, process tensors, tomography) contracts
// through the primitives declared here. Conventions used across the library:
//
//   * matrices are stored row-major;
//   * vec() stacks rows: vec(m)[r * cols + s] = m(r, s);
//   * tensor_product(a, b) is the Kronecker product, so that the subsystem
//     listed first is the most significant index;
//   * multipartite helpers take a list of subsystem dimensions in that same
//     most-significant-first order.

#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <span>
#include <vector>

namespace qmaps {

using Complex = std::complex<double>;

class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols);
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> data);
  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static ComplexMatrix zeros(std::size_t rows, std::size_t cols);
  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix diagonal(std::span<const double> values);
  /// |i><j| of size rows x cols.
  static ComplexMatrix unit(std::size_t rows, std::size_t cols, std::size_t i,
                            std::size_t j);
  /// Column vector from amplitudes.
  static ComplexMatrix column(std::span<const Complex> values);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }
  bool is_square() const noexcept { return rows_ == cols_; }

  Complex& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  std::span<Complex> data() noexcept { return data_; }
  std::span<const Complex> data() const noexcept { return data_; }

  ComplexMatrix adjoint() const;
  ComplexMatrix transpose() const;
  ComplexMatrix conjugate() const;
  Complex trace() const;
  double frobenius_norm() const;
  double max_abs() const;

  /// Column `c` as a (rows x 1) matrix.
  ComplexMatrix col(std::size_t c) const;
  void set_col(std::size_t c, const ComplexMatrix& v);

  bool all_finite() const;

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(Complex s);

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(Complex s, ComplexMatrix a);
ComplexMatrix operator*(ComplexMatrix a, Complex s);

/// Frobenius norm of a - b (shapes must agree).
double distance(const ComplexMatrix& a, const ComplexMatrix& b);
/// Hilbert-Schmidt inner product tr(a^dagger b).
Complex hs_inner(const ComplexMatrix& a, const ComplexMatrix& b);
/// Outer product |u><v| of two column vectors.
ComplexMatrix outer(const ComplexMatrix& u, const ComplexMatrix& v);

bool is_hermitian(const ComplexMatrix& m, double tol = 1e-10);
/// Frobenius norm of the anti-Hermitian part m - m^dagger.
double hermiticity_residual(const ComplexMatrix& m);
bool is_unitary(const ComplexMatrix& m, double tol = 1e-9);

// --- products and reshapes ---------------------------------------------------

ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix tensor_product(std::span<const ComplexMatrix> factors);

/// Row-major vectorisation into a column.
ComplexMatrix vec(const ComplexMatrix& m);
/// Inverse of vec for a (rows x cols) target.
ComplexMatrix unvec(const ComplexMatrix& v, std::size_t rows, std::size_t cols);

/// Index permutation (rs; r's') <-> (rr'; ss') between the two matrix forms
/// of a superoperator. A d_out^2 x d_in^2 input is read as an A form and
/// returned as a B form; a (d_out d_in) x (d_out d_in) input goes the other
/// way. For d_out == d_in the two shapes coincide and the permutation is an
/// involution.
ComplexMatrix reshuffle(const ComplexMatrix& m, std::size_t d_out, std::size_t d_in);

// --- multipartite helpers ------------------------------------------------------

/// Reduced operator on the subsystems in `keep` (kept in ascending order).
ComplexMatrix partial_trace(const ComplexMatrix& m, std::span<const std::size_t> dims,
                            std::span<const std::size_t> keep);

/// Reorders subsystems: subsystem i of the result is subsystem perm[i] of m.
ComplexMatrix permute_subsystems(const ComplexMatrix& m,
                                 std::span<const std::size_t> dims,
                                 std::span<const std::size_t> perm);

/// (op (x) 1) m (op (x) 1)^dagger with op acting on the listed subsystems.
ComplexMatrix conjugate_subsystems(const ComplexMatrix& m,
                                   std::span<const std::size_t> dims,
                                   const ComplexMatrix& op,
                                   std::span<const std::size_t> targets);

/// Applies the map whose B form (out (x) in, both of dimension dims[target])
/// is `bform` to one subsystem of a multipartite operator.
ComplexMatrix apply_bform_on_subsystem(const ComplexMatrix& m,
                                       std::span<const std::size_t> dims,
                                       const ComplexMatrix& bform, std::size_t target);

/// tr_in[choi (1_out (x) x^T)] for a choi of shape (d_out n) x (d_out n) and
/// an n x n argument x. This is the action of a map (or comb) given its Choi
/// matrix.
ComplexMatrix contract_choi(const ComplexMatrix& choi, std::size_t d_out,
                            const ComplexMatrix& x);

// --- decompositions ------------------------------------------------------------

struct HermEigResult {
  std::vector<double> eigenvalues;  // descending
  ComplexMatrix eigenvectors;       // orthonormal columns
};

struct SvdResult {
  std::vector<double> singular_values;  // descending, length min(rows, cols)
  ComplexMatrix left;                   // rows x p, orthonormal columns
  ComplexMatrix right;                  // cols x p, orthonormal columns
};

/// Cyclic Jacobi eigendecomposition of a Hermitian matrix.
HermEigResult herm_eig(const ComplexMatrix& m);
std::vector<double> herm_eigvals(const ComplexMatrix& m);
double min_eigenvalue(const ComplexMatrix& m);

/// One-sided (Hestenes) Jacobi SVD.
SvdResult svd(const ComplexMatrix& m);

/// Solves a x = b by LU with partial pivoting. Throws ValidationError when a
/// is numerically singular.
ComplexMatrix solve(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix inverse(const ComplexMatrix& a);

// --- matrix functions and distances ----------------------------------------------

/// Eigenvalues with |lambda| below this are treated as zero for rank,
/// logarithms and support containment.
inline constexpr double kSupportThreshold = 1e-10;

/// V diag(f(lambda)) V^dagger for Hermitian m.
ComplexMatrix matrix_function(const ComplexMatrix& m,
                              const std::function<double(double)>& f);
/// Principal square root of a PSD matrix; eigenvalues in [-1e-9, 0) are
/// clamped to zero.
ComplexMatrix matrix_sqrt(const ComplexMatrix& m);
/// Natural logarithm on the support; zero on the kernel.
ComplexMatrix matrix_log(const ComplexMatrix& m);
/// Inverse square root of a positive definite matrix.
ComplexMatrix matrix_inverse_sqrt(const ComplexMatrix& m);

std::size_t numerical_rank(const ComplexMatrix& hermitian);

double trace_distance(const ComplexMatrix& a, const ComplexMatrix& b);
/// S(a || b) = tr a (ln a - ln b); +infinity when supp(a) is not contained in
/// supp(b).
double relative_entropy(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace qmaps
