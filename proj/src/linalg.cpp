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

#include "qmaps/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "qmaps/errors.hpp"

namespace qmaps {

namespace {

std::string shape(const ComplexMatrix& m) {
  return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError(std::string(what) + ": shape mismatch " + shape(a) + " vs " +
                         shape(b));
  }
}

void require_square(const ComplexMatrix& m, const char* what) {
  if (!m.is_square()) {
    throw DimensionError(std::string(what) + ": expected a square matrix, got " + shape(m));
  }
}

std::size_t product(std::span<const std::size_t> dims) {
  return std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>());
}

// index_map[new_index] = old_index for the subsystem permutation.
std::vector<std::size_t> permutation_index_map(std::span<const std::size_t> dims,
                                               std::span<const std::size_t> perm) {
  const std::size_t n = dims.size();
  std::vector<std::size_t> old_strides(n, 1);
  for (std::size_t i = n; i-- > 1;) old_strides[i - 1] = old_strides[i] * dims[i];

  std::vector<std::size_t> new_dims(n);
  for (std::size_t i = 0; i < n; ++i) new_dims[i] = dims[perm[i]];

  const std::size_t total = product(dims);
  std::vector<std::size_t> map(total);
  std::vector<std::size_t> digits(n, 0);
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::size_t old_index = 0;
    for (std::size_t i = 0; i < n; ++i) old_index += digits[i] * old_strides[perm[i]];
    map[idx] = old_index;
    for (std::size_t i = n; i-- > 0;) {
      if (++digits[i] < new_dims[i]) break;
      digits[i] = 0;
    }
  }
  return map;
}

void validate_dims(const ComplexMatrix& m, std::span<const std::size_t> dims, const char* what) {
  require_square(m, what);
  if (dims.empty() || product(dims) != m.rows()) {
    throw DimensionError(std::string(what) + ": subsystem dimensions do not multiply to " +
                         std::to_string(m.rows()));
  }
}

void validate_permutation(std::span<const std::size_t> perm, std::size_t n) {
  std::vector<bool> seen(n, false);
  if (perm.size() != n) throw DimensionError("permutation has wrong length");
  for (auto p : perm) {
    if (p >= n || seen[p]) throw DimensionError("invalid subsystem permutation");
    seen[p] = true;
  }
}

// Permutation that moves `targets` (in the given order) to the front and keeps
// the remaining subsystems in ascending order behind them.
std::vector<std::size_t> front_permutation(std::span<const std::size_t> targets,
                                           std::size_t n) {
  std::vector<std::size_t> perm(targets.begin(), targets.end());
  for (std::size_t i = 0; i < n; ++i) {
    if (std::find(targets.begin(), targets.end(), i) == targets.end()) perm.push_back(i);
  }
  validate_permutation(perm, n);
  return perm;
}

std::vector<std::size_t> inverse_permutation(std::span<const std::size_t> perm) {
  std::vector<std::size_t> inv(perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) inv[perm[i]] = i;
  return inv;
}

}  // namespace

// --- ComplexMatrix -----------------------------------------------------------------

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Complex{0.0, 0.0}) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows_ * cols_) {
    throw DimensionError("matrix data length " + std::to_string(data_.size()) +
                         " does not match " + std::to_string(rows_) + "x" +
                         std::to_string(cols_));
  }
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw DimensionError("ragged matrix initializer");
    data_.insert(data_.end(), row.begin(), row.end());
  }
}

ComplexMatrix ComplexMatrix::zeros(std::size_t rows, std::size_t cols) {
  return ComplexMatrix(rows, cols);
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> values) {
  ComplexMatrix m(values.size(), values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return m;
}

ComplexMatrix ComplexMatrix::unit(std::size_t rows, std::size_t cols, std::size_t i,
                                  std::size_t j) {
  ComplexMatrix m(rows, cols);
  m(i, j) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::column(std::span<const Complex> values) {
  return ComplexMatrix(values.size(), 1, std::vector<Complex>(values.begin(), values.end()));
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = std::conj((*this)(r, c));
  return out;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c);
  return out;
}

ComplexMatrix ComplexMatrix::conjugate() const {
  ComplexMatrix out = *this;
  for (auto& z : out.data_) z = std::conj(z);
  return out;
}

Complex ComplexMatrix::trace() const {
  require_square(*this, "trace");
  Complex t{0.0, 0.0};
  for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
  return t;
}

double ComplexMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const auto& z : data_) s += std::norm(z);
  return std::sqrt(s);
}

double ComplexMatrix::max_abs() const {
  double m = 0.0;
  for (const auto& z : data_) m = std::max(m, std::abs(z));
  return m;
}

ComplexMatrix ComplexMatrix::col(std::size_t c) const {
  ComplexMatrix v(rows_, 1);
  for (std::size_t r = 0; r < rows_; ++r) v(r, 0) = (*this)(r, c);
  return v;
}

void ComplexMatrix::set_col(std::size_t c, const ComplexMatrix& v) {
  if (v.rows() != rows_ || v.cols() != 1) throw DimensionError("set_col: bad column shape");
  for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = v(r, 0);
}

bool ComplexMatrix::all_finite() const {
  return std::all_of(data_.begin(), data_.end(), [](const Complex& z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
  });
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
  require_same_shape(*this, other, "operator+");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
  require_same_shape(*this, other, "operator-");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex s) {
  for (auto& z : data_) z *= s;
  return *this;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
ComplexMatrix operator-(ComplexMatrix a) { return a *= -1.0; }
ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }
ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) {
    throw DimensionError("matrix product: " + shape(a) + " * " + shape(b));
  }
  ComplexMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex{}) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  }
  return out;
}

double distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b, "distance");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::norm(a.data()[i] - b.data()[i]);
  return std::sqrt(s);
}

Complex hs_inner(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b, "hs_inner");
  Complex s{0.0, 0.0};
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a.data()[i]) * b.data()[i];
  return s;
}

ComplexMatrix outer(const ComplexMatrix& u, const ComplexMatrix& v) {
  if (u.cols() != 1 || v.cols() != 1) throw DimensionError("outer: expected column vectors");
  ComplexMatrix out(u.rows(), v.rows());
  for (std::size_t i = 0; i < u.rows(); ++i)
    for (std::size_t j = 0; j < v.rows(); ++j) out(i, j) = u(i, 0) * std::conj(v(j, 0));
  return out;
}

double hermiticity_residual(const ComplexMatrix& m) {
  require_square(m, "hermiticity_residual");
  double s = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) s += std::norm(m(i, j) - std::conj(m(j, i)));
  return std::sqrt(s);
}

bool is_hermitian(const ComplexMatrix& m, double tol) {
  return m.is_square() && hermiticity_residual(m) <= tol;
}

bool is_unitary(const ComplexMatrix& m, double tol) {
  if (!m.is_square()) return false;
  return distance(m.adjoint() * m, ComplexMatrix::identity(m.rows())) <= tol;
}

// --- products and reshapes ---------------------------------------------------

ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t s = 0; s < a.cols(); ++s) {
      const Complex ars = a(r, s);
      if (ars == Complex{}) continue;
      for (std::size_t rp = 0; rp < b.rows(); ++rp)
        for (std::size_t sp = 0; sp < b.cols(); ++sp)
          out(r * b.rows() + rp, s * b.cols() + sp) = ars * b(rp, sp);
    }
  return out;
}

ComplexMatrix tensor_product(std::span<const ComplexMatrix> factors) {
  if (factors.empty()) return ComplexMatrix::identity(1);
  ComplexMatrix out = factors.front();
  for (std::size_t i = 1; i < factors.size(); ++i) out = tensor_product(out, factors[i]);
  return out;
}

ComplexMatrix vec(const ComplexMatrix& m) {
  return ComplexMatrix(m.size(), 1, std::vector<Complex>(m.data().begin(), m.data().end()));
}

ComplexMatrix unvec(const ComplexMatrix& v, std::size_t rows, std::size_t cols) {
  if (v.cols() != 1 || v.rows() != rows * cols) {
    throw DimensionError("unvec: cannot reshape " + shape(v) + " into " +
                         std::to_string(rows) + "x" + std::to_string(cols));
  }
  return ComplexMatrix(rows, cols, std::vector<Complex>(v.data().begin(), v.data().end()));
}

ComplexMatrix reshuffle(const ComplexMatrix& m, std::size_t d_out, std::size_t d_in) {
  if (d_out == 0 || d_in == 0) throw DimensionError("reshuffle: zero dimension");
  const std::size_t a_rows = d_out * d_out;
  const std::size_t a_cols = d_in * d_in;
  const std::size_t b_dim = d_out * d_in;
  if (m.rows() == a_rows && m.cols() == a_cols) {
    // A form -> B form: B[(r r'), (s s')] = A[(r s), (r' s')].
    ComplexMatrix out(b_dim, b_dim);
    for (std::size_t r = 0; r < d_out; ++r)
      for (std::size_t s = 0; s < d_out; ++s)
        for (std::size_t rp = 0; rp < d_in; ++rp)
          for (std::size_t sp = 0; sp < d_in; ++sp)
            out(r * d_in + rp, s * d_in + sp) = m(r * d_out + s, rp * d_in + sp);
    return out;
  }
  if (m.rows() == b_dim && m.cols() == b_dim) {
    ComplexMatrix out(a_rows, a_cols);
    for (std::size_t r = 0; r < d_out; ++r)
      for (std::size_t s = 0; s < d_out; ++s)
        for (std::size_t rp = 0; rp < d_in; ++rp)
          for (std::size_t sp = 0; sp < d_in; ++sp)
            out(r * d_out + s, rp * d_in + sp) = m(r * d_in + rp, s * d_in + sp);
    return out;
  }
  throw DimensionError("reshuffle: shape " + shape(m) + " is not factorizable with d_out=" +
                       std::to_string(d_out) + ", d_in=" + std::to_string(d_in));
}

// --- multipartite helpers ------------------------------------------------------

ComplexMatrix permute_subsystems(const ComplexMatrix& m, std::span<const std::size_t> dims,
                                 std::span<const std::size_t> perm) {
  validate_dims(m, dims, "permute_subsystems");
  validate_permutation(perm, dims.size());
  const auto map = permutation_index_map(dims, perm);
  const std::size_t n = m.rows();
  ComplexMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t oi = map[i];
    for (std::size_t j = 0; j < n; ++j) out(i, j) = m(oi, map[j]);
  }
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& m, std::span<const std::size_t> dims,
                            std::span<const std::size_t> keep) {
  validate_dims(m, dims, "partial_trace");
  std::vector<std::size_t> kept(keep.begin(), keep.end());
  std::sort(kept.begin(), kept.end());
  if (std::adjacent_find(kept.begin(), kept.end()) != kept.end() ||
      (!kept.empty() && kept.back() >= dims.size())) {
    throw DimensionError("partial_trace: invalid subsystem selection");
  }
  const auto perm = front_permutation(kept, dims.size());
  const ComplexMatrix p = permute_subsystems(m, dims, perm);
  std::size_t kept_dim = 1;
  for (auto k : kept) kept_dim *= dims[k];
  const std::size_t traced_dim = m.rows() / kept_dim;
  ComplexMatrix out(kept_dim, kept_dim);
  for (std::size_t a = 0; a < kept_dim; ++a)
    for (std::size_t b = 0; b < kept_dim; ++b) {
      Complex s{0.0, 0.0};
      for (std::size_t t = 0; t < traced_dim; ++t) s += p(a * traced_dim + t, b * traced_dim + t);
      out(a, b) = s;
    }
  return out;
}

ComplexMatrix conjugate_subsystems(const ComplexMatrix& m, std::span<const std::size_t> dims,
                                   const ComplexMatrix& op,
                                   std::span<const std::size_t> targets) {
  validate_dims(m, dims, "conjugate_subsystems");
  const auto perm = front_permutation(targets, dims.size());
  std::size_t target_dim = 1;
  for (auto t : targets) target_dim *= dims[t];
  if (op.rows() != target_dim || op.cols() != target_dim) {
    throw DimensionError("conjugate_subsystems: operator " + shape(op) +
                         " does not match target dimension " + std::to_string(target_dim));
  }
  const ComplexMatrix x = permute_subsystems(m, dims, perm);
  const std::size_t n = x.rows();
  const std::size_t rest = n / target_dim;

  ComplexMatrix left(n, n);
  for (std::size_t a = 0; a < target_dim; ++a)
    for (std::size_t b = 0; b < target_dim; ++b) {
      const Complex o = op(a, b);
      if (o == Complex{}) continue;
      for (std::size_t r = 0; r < rest; ++r)
        for (std::size_t c = 0; c < n; ++c) left(a * rest + r, c) += o * x(b * rest + r, c);
    }
  ComplexMatrix both(n, n);
  for (std::size_t a = 0; a < target_dim; ++a)
    for (std::size_t b = 0; b < target_dim; ++b) {
      const Complex o = std::conj(op(a, b));
      if (o == Complex{}) continue;
      for (std::size_t row = 0; row < n; ++row)
        for (std::size_t r = 0; r < rest; ++r)
          both(row, a * rest + r) += left(row, b * rest + r) * o;
    }

  std::vector<std::size_t> permuted_dims(dims.size());
  for (std::size_t i = 0; i < dims.size(); ++i) permuted_dims[i] = dims[perm[i]];
  return permute_subsystems(both, permuted_dims, inverse_permutation(perm));
}

ComplexMatrix apply_bform_on_subsystem(const ComplexMatrix& m,
                                       std::span<const std::size_t> dims,
                                       const ComplexMatrix& bform, std::size_t target) {
  validate_dims(m, dims, "apply_bform_on_subsystem");
  if (target >= dims.size()) throw DimensionError("apply_bform_on_subsystem: bad target");
  const std::size_t d_in = dims[target];
  if (!bform.is_square() || bform.rows() % d_in != 0) {
    throw DimensionError("apply_bform_on_subsystem: B form " + shape(bform) +
                         " incompatible with input dimension " + std::to_string(d_in));
  }
  const std::size_t d_out = bform.rows() / d_in;
  const std::vector<std::size_t> t{target};
  const auto perm = front_permutation(t, dims.size());
  const ComplexMatrix x = permute_subsystems(m, dims, perm);
  const std::size_t rest = x.rows() / d_in;

  // out[(a,r),(b,q)] = sum_{k,l} B[(a,k),(b,l)] x[(k,r),(l,q)]
  ComplexMatrix out(d_out * rest, d_out * rest);
  for (std::size_t a = 0; a < d_out; ++a)
    for (std::size_t b = 0; b < d_out; ++b)
      for (std::size_t k = 0; k < d_in; ++k)
        for (std::size_t l = 0; l < d_in; ++l) {
          const Complex w = bform(a * d_in + k, b * d_in + l);
          if (w == Complex{}) continue;
          for (std::size_t r = 0; r < rest; ++r)
            for (std::size_t q = 0; q < rest; ++q)
              out(a * rest + r, b * rest + q) += w * x(k * rest + r, l * rest + q);
        }

  std::vector<std::size_t> permuted_dims(dims.size());
  for (std::size_t i = 0; i < dims.size(); ++i) permuted_dims[i] = dims[perm[i]];
  permuted_dims[0] = d_out;
  return permute_subsystems(out, permuted_dims, inverse_permutation(perm));
}

ComplexMatrix contract_choi(const ComplexMatrix& choi, std::size_t d_out,
                            const ComplexMatrix& x) {
  require_square(choi, "contract_choi");
  require_square(x, "contract_choi");
  const std::size_t n = x.rows();
  if (d_out == 0 || choi.rows() != d_out * n) {
    throw DimensionError("contract_choi: Choi " + shape(choi) + " does not match output " +
                         std::to_string(d_out) + " and argument " + shape(x));
  }
  ComplexMatrix out(d_out, d_out);
  for (std::size_t o = 0; o < d_out; ++o)
    for (std::size_t op = 0; op < d_out; ++op) {
      Complex s{0.0, 0.0};
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) s += choi(o * n + i, op * n + j) * x(i, j);
      out(o, op) = s;
    }
  return out;
}

// --- decompositions ------------------------------------------------------------

HermEigResult herm_eig(const ComplexMatrix& m) {
  require_square(m, "herm_eig");
  if (!is_hermitian(m, 1e-10 * std::max(1.0, m.frobenius_norm()))) {
    throw ValidationError("herm_eig: matrix is not Hermitian (residual " +
                          std::to_string(hermiticity_residual(m)) + ")");
  }
  const std::size_t n = m.rows();
  ComplexMatrix a = m;
  // Symmetrize so the rotations act on an exactly Hermitian matrix.
  for (std::size_t i = 0; i < n; ++i) {
    a(i, i) = a(i, i).real();
    for (std::size_t j = i + 1; j < n; ++j) {
      const Complex avg = 0.5 * (a(i, j) + std::conj(a(j, i)));
      a(i, j) = avg;
      a(j, i) = std::conj(avg);
    }
  }
  ComplexMatrix v = ComplexMatrix::identity(n);

  auto off_norm = [&]() {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) s += 2.0 * std::norm(a(i, j));
    return std::sqrt(s);
  };
  const double tol = std::max(1e-13, 1e-15 * a.frobenius_norm());

  for (int sweep = 0; sweep < 100 && off_norm() >= tol; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double b = std::abs(a(p, q));
        if (b < 1e-300) continue;
        const Complex phase = a(p, q) / b;  // e^{i phi}
        const double alpha = a(p, p).real();
        const double beta = a(q, q).real();
        const double tau = (beta - alpha) / (2.0 * b);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        const Complex sp = s * std::conj(phase);  // s e^{-i phi}
        const Complex cp = c * std::conj(phase);  // c e^{-i phi}
        // Columns: A <- A V with V = [[c, s], [-s e^{-i phi}, c e^{-i phi}]] on (p, q).
        for (std::size_t k = 0; k < n; ++k) {
          const Complex akp = a(k, p);
          const Complex akq = a(k, q);
          a(k, p) = c * akp - sp * akq;
          a(k, q) = s * akp + cp * akq;
        }
        // Rows: A <- V^dagger A.
        for (std::size_t k = 0; k < n; ++k) {
          const Complex apk = a(p, k);
          const Complex aqk = a(q, k);
          a(p, k) = c * apk - std::conj(sp) * aqk;
          a(q, k) = s * apk + std::conj(cp) * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        for (std::size_t k = 0; k < n; ++k) {
          const Complex vkp = v(k, p);
          const Complex vkq = v(k, q);
          v(k, p) = c * vkp - sp * vkq;
          v(k, q) = s * vkp + cp * vkq;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return a(i, i).real() > a(j, j).real();
  });
  HermEigResult result;
  result.eigenvalues.resize(n);
  result.eigenvectors = ComplexMatrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    result.eigenvalues[k] = a(order[k], order[k]).real();
    for (std::size_t r = 0; r < n; ++r) result.eigenvectors(r, k) = v(r, order[k]);
  }
  return result;
}

std::vector<double> herm_eigvals(const ComplexMatrix& m) { return herm_eig(m).eigenvalues; }

double min_eigenvalue(const ComplexMatrix& m) {
  const auto values = herm_eigvals(m);
  return values.empty() ? 0.0 : values.back();
}

namespace {

// Extends the first `filled` orthonormal columns of q to a full orthonormal set
// by Gram-Schmidt over the standard basis, in index order.
void complete_orthonormal_columns(ComplexMatrix& q, std::size_t filled) {
  const std::size_t n = q.rows();
  std::size_t next = filled;
  for (std::size_t e = 0; e < n && next < q.cols(); ++e) {
    ComplexMatrix cand = ComplexMatrix::unit(n, 1, e, 0);
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t k = 0; k < next; ++k) {
        Complex proj{0.0, 0.0};
        for (std::size_t r = 0; r < n; ++r) proj += std::conj(q(r, k)) * cand(r, 0);
        for (std::size_t r = 0; r < n; ++r) cand(r, 0) -= proj * q(r, k);
      }
    }
    const double norm = cand.frobenius_norm();
    if (norm < 1e-8) continue;
    for (std::size_t r = 0; r < n; ++r) q(r, next) = cand(r, 0) / norm;
    ++next;
  }
}

}  // namespace

SvdResult svd(const ComplexMatrix& m) {
  if (m.rows() < m.cols()) {
    SvdResult t = svd(m.adjoint());
    return SvdResult{std::move(t.singular_values), std::move(t.right), std::move(t.left)};
  }
  const std::size_t rows = m.rows();
  const std::size_t n = m.cols();
  ComplexMatrix a = m;
  ComplexMatrix v = ComplexMatrix::identity(n);

  for (int sweep = 0; sweep < 100; ++sweep) {
    bool rotated = false;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        double alpha = 0.0;
        double beta = 0.0;
        Complex gamma{0.0, 0.0};
        for (std::size_t r = 0; r < rows; ++r) {
          alpha += std::norm(a(r, i));
          beta += std::norm(a(r, j));
          gamma += std::conj(a(r, i)) * a(r, j);
        }
        const double g = std::abs(gamma);
        if (g <= 1e-15 * std::sqrt(alpha * beta) || g < 1e-300) continue;
        rotated = true;
        const Complex phase_conj = std::conj(gamma) / g;  // e^{-i phi}
        const double zeta = (beta - alpha) / (2.0 * g);
        const double t =
            (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        for (std::size_t r = 0; r < rows; ++r) {
          const Complex ai = a(r, i);
          const Complex aj = a(r, j) * phase_conj;
          a(r, i) = c * ai - s * aj;
          a(r, j) = s * ai + c * aj;
        }
        for (std::size_t r = 0; r < n; ++r) {
          const Complex vi = v(r, i);
          const Complex vj = v(r, j) * phase_conj;
          v(r, i) = c * vi - s * vj;
          v(r, j) = s * vi + c * vj;
        }
      }
    }
    if (!rotated) break;
  }

  std::vector<double> norms(n);
  for (std::size_t c = 0; c < n; ++c) norms[c] = a.col(c).frobenius_norm();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return norms[x] > norms[y]; });

  SvdResult out;
  out.singular_values.resize(n);
  out.left = ComplexMatrix(rows, n);
  out.right = ComplexMatrix(n, n);
  const double scale = norms.empty() ? 0.0 : norms[order[0]];
  std::size_t filled = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t c = order[k];
    out.singular_values[k] = norms[c];
    for (std::size_t r = 0; r < n; ++r) out.right(r, k) = v(r, c);
    if (norms[c] > 1e-14 * std::max(scale, 1e-300) && norms[c] > 0.0) {
      for (std::size_t r = 0; r < rows; ++r) out.left(r, k) = a(r, c) / norms[c];
      filled = k + 1;
    }
  }
  // Left vectors for (numerically) zero singular values are arbitrary; pick an
  // orthonormal completion.
  if (filled < n) {
    for (std::size_t k = filled; k < n; ++k)
      for (std::size_t r = 0; r < rows; ++r) out.left(r, k) = 0.0;
    complete_orthonormal_columns(out.left, filled);
  }
  return out;
}

ComplexMatrix solve(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_square(a, "solve");
  if (b.rows() != a.rows()) throw DimensionError("solve: right-hand side has wrong height");
  const std::size_t n = a.rows();
  ComplexMatrix lu = a;
  ComplexMatrix x = b;
  const double scale = std::max(a.max_abs(), 1e-300);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(lu(r, col)) > std::abs(lu(pivot, col))) pivot = r;
    if (std::abs(lu(pivot, col)) <= 1e-14 * scale) {
      throw ValidationError("solve: matrix is numerically singular");
    }
    if (pivot != col) {
      for (std::size_t c = 0; c < n; ++c) std::swap(lu(pivot, c), lu(col, c));
      for (std::size_t c = 0; c < x.cols(); ++c) std::swap(x(pivot, c), x(col, c));
    }
    for (std::size_t r = col + 1; r < n; ++r) {
      const Complex f = lu(r, col) / lu(col, col);
      if (f == Complex{}) continue;
      for (std::size_t c = col; c < n; ++c) lu(r, c) -= f * lu(col, c);
      for (std::size_t c = 0; c < x.cols(); ++c) x(r, c) -= f * x(col, c);
    }
  }
  for (std::size_t r = n; r-- > 0;) {
    for (std::size_t c = 0; c < x.cols(); ++c) {
      Complex s = x(r, c);
      for (std::size_t k = r + 1; k < n; ++k) s -= lu(r, k) * x(k, c);
      x(r, c) = s / lu(r, r);
    }
  }
  return x;
}

ComplexMatrix inverse(const ComplexMatrix& a) {
  return solve(a, ComplexMatrix::identity(a.rows()));
}

// --- matrix functions and distances ----------------------------------------------

ComplexMatrix matrix_function(const ComplexMatrix& m, const std::function<double(double)>& f) {
  const auto eig = herm_eig(m);
  const std::size_t n = m.rows();
  ComplexMatrix out(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const double fk = f(eig.eigenvalues[k]);
    if (fk == 0.0) continue;
    for (std::size_t i = 0; i < n; ++i) {
      const Complex vik = eig.eigenvectors(i, k) * fk;
      for (std::size_t j = 0; j < n; ++j) out(i, j) += vik * std::conj(eig.eigenvectors(j, k));
    }
  }
  return out;
}

ComplexMatrix matrix_sqrt(const ComplexMatrix& m) {
  return matrix_function(m, [](double x) {
    if (x < -1e-9) {
      throw ValidationError("matrix_sqrt: eigenvalue " + std::to_string(x) +
                            " is below -1e-9");
    }
    return x > 0.0 ? std::sqrt(x) : 0.0;
  });
}

ComplexMatrix matrix_log(const ComplexMatrix& m) {
  return matrix_function(m, [](double x) {
    if (x < -kSupportThreshold) {
      throw ValidationError("matrix_log: negative eigenvalue " + std::to_string(x));
    }
    return x > kSupportThreshold ? std::log(x) : 0.0;
  });
}

ComplexMatrix matrix_inverse_sqrt(const ComplexMatrix& m) {
  return matrix_function(m, [](double x) {
    if (x <= kSupportThreshold) {
      throw ValidationError("matrix_inverse_sqrt: matrix is not positive definite");
    }
    return 1.0 / std::sqrt(x);
  });
}

std::size_t numerical_rank(const ComplexMatrix& hermitian) {
  const auto values = herm_eigvals(hermitian);
  return static_cast<std::size_t>(std::count_if(
      values.begin(), values.end(), [](double x) { return std::abs(x) > kSupportThreshold; }));
}

double trace_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b, "trace_distance");
  double s = 0.0;
  for (double x : herm_eigvals(a - b)) s += std::abs(x);
  return 0.5 * s;
}

double relative_entropy(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b, "relative_entropy");
  const auto ea = herm_eig(a);
  const auto eb = herm_eig(b);
  for (double x : ea.eigenvalues)
    if (x < -1e-8) throw ValidationError("relative_entropy: first argument is not PSD");
  for (double x : eb.eigenvalues)
    if (x < -1e-8) throw ValidationError("relative_entropy: second argument is not PSD");

  double a_log_a = 0.0;
  for (double x : ea.eigenvalues)
    if (x > kSupportThreshold) a_log_a += x * std::log(x);

  const std::size_t n = a.rows();
  double a_log_b = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    // <v_k| a |v_k> for the k-th eigenvector of b.
    Complex w{0.0, 0.0};
    for (std::size_t i = 0; i < n; ++i) {
      Complex row{0.0, 0.0};
      for (std::size_t j = 0; j < n; ++j) row += a(i, j) * eb.eigenvectors(j, k);
      w += std::conj(eb.eigenvectors(i, k)) * row;
    }
    const double lambda = eb.eigenvalues[k];
    if (lambda > kSupportThreshold) {
      a_log_b += w.real() * std::log(lambda);
    } else if (w.real() > kSupportThreshold) {
      return std::numeric_limits<double>::infinity();
    }
  }
  return a_log_a - a_log_b;
}

}  // namespace qmaps
