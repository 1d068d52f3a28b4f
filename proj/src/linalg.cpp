// Copyright 2026 The quadcomp authors.
// Distributed WITHOUT ANY WARRANTY. Licensed under the Apache License,
// Version 2.0, see http://www.apache.org/licenses/LICENSE-2.0

#include "qcomp/linalg.hpp"

namespace qcomp {

Vec zero_vec(const FieldSpec& fs, int n) {
  return Vec(static_cast<size_t>(n), Scalar::zero(fs));
}

Vec basis_vec(const FieldSpec& fs, int n, int i) {
  Vec v = zero_vec(fs, n);
  v[i] = Scalar::one(fs);
  return v;
}

bool is_zero_vec(const Vec& v) {
  for (const Scalar& x : v)
    if (!x.is_zero()) return false;
  return true;
}

Vec vadd(const Vec& a, const Vec& b) {
  check(a.size() == b.size(), errc::bad_input, "vector size mismatch");
  Vec r = a;
  for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  return r;
}

Vec vsub(const Vec& a, const Vec& b) {
  check(a.size() == b.size(), errc::bad_input, "vector size mismatch");
  Vec r = a;
  for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  return r;
}

Vec vneg(const Vec& a) {
  Vec r = a;
  for (Scalar& x : r) x = -x;
  return r;
}

Vec vscale(const Scalar& c, const Vec& a) {
  Vec r = a;
  for (Scalar& x : r) x *= c;
  return r;
}

Scalar vdot(const Vec& a, const Vec& b) {
  check(a.size() == b.size() && !a.empty(), errc::bad_input,
        "dot of mismatched or empty vectors");
  Scalar s = Scalar::zero(a[0].field());
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Matrix Matrix::identity(const FieldSpec& fs, int n) {
  Matrix m(fs, n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = Scalar::one(fs);
  return m;
}

Matrix Matrix::from_rows(const FieldSpec& fs, const std::vector<Vec>& rows) {
  int r = static_cast<int>(rows.size());
  int c = r ? static_cast<int>(rows[0].size()) : 0;
  Matrix m(fs, r, c);
  for (int i = 0; i < r; ++i) {
    check(static_cast<int>(rows[i].size()) == c, errc::bad_input,
          "ragged rows");
    for (int j = 0; j < c; ++j) m.at(i, j) = rows[i][j];
  }
  return m;
}

Matrix Matrix::from_cols(const FieldSpec& fs, const std::vector<Vec>& cols) {
  int c = static_cast<int>(cols.size());
  int r = c ? static_cast<int>(cols[0].size()) : 0;
  Matrix m(fs, r, c);
  for (int j = 0; j < c; ++j) {
    check(static_cast<int>(cols[j].size()) == r, errc::bad_input,
          "ragged columns");
    for (int i = 0; i < r; ++i) m.at(i, j) = cols[j][i];
  }
  return m;
}

Vec Matrix::row(int i) const {
  Vec v;
  v.reserve(cols_);
  for (int j = 0; j < cols_; ++j) v.push_back(at(i, j));
  return v;
}

Vec Matrix::col(int j) const {
  Vec v;
  v.reserve(rows_);
  for (int i = 0; i < rows_; ++i) v.push_back(at(i, j));
  return v;
}

Matrix Matrix::transpose() const {
  Matrix t(fs_, cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
  return t;
}

Scalar Matrix::trace() const {
  Scalar s = Scalar::zero(fs_);
  for (int i = 0; i < rows_ && i < cols_; ++i) s += at(i, i);
  return s;
}

bool Matrix::is_identity() const {
  if (rows_ != cols_) return false;
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) {
      if (i == j ? !at(i, j).is_one() : !at(i, j).is_zero()) return false;
    }
  return true;
}

bool Matrix::is_zero() const {
  for (const Scalar& x : a_)
    if (!x.is_zero()) return false;
  return true;
}

Vec Matrix::apply(const Vec& x) const {
  check(static_cast<int>(x.size()) == cols_, errc::bad_input,
        "matrix-vector size mismatch");
  Vec y = zero_vec(fs_, rows_);
  for (int i = 0; i < rows_; ++i) {
    Scalar s = Scalar::zero(fs_);
    for (int j = 0; j < cols_; ++j) {
      if (!at(i, j).is_zero() && !x[j].is_zero()) s += at(i, j) * x[j];
    }
    y[i] = s;
  }
  return y;
}

Matrix Matrix::operator*(const Matrix& o) const {
  require_same_field(fs_, o.fs_);
  check(cols_ == o.rows_, errc::bad_input, "matrix product size mismatch");
  Matrix r(fs_, rows_, o.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      const Scalar& aik = at(i, k);
      if (aik.is_zero()) continue;
      for (int j = 0; j < o.cols_; ++j) {
        if (!o.at(k, j).is_zero()) r.at(i, j) += aik * o.at(k, j);
      }
    }
  return r;
}

Matrix Matrix::operator+(const Matrix& o) const {
  check(rows_ == o.rows_ && cols_ == o.cols_, errc::bad_input,
        "matrix sum size mismatch");
  Matrix r = *this;
  for (size_t i = 0; i < a_.size(); ++i) r.a_[i] += o.a_[i];
  return r;
}

Matrix Matrix::operator-(const Matrix& o) const {
  check(rows_ == o.rows_ && cols_ == o.cols_, errc::bad_input,
        "matrix difference size mismatch");
  Matrix r = *this;
  for (size_t i = 0; i < a_.size(); ++i) r.a_[i] -= o.a_[i];
  return r;
}

Matrix Matrix::scaled(const Scalar& c) const {
  Matrix r = *this;
  for (Scalar& x : r.a_) x *= c;
  return r;
}

bool Matrix::operator==(const Matrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) return false;
  for (size_t i = 0; i < a_.size(); ++i)
    if (a_[i] != o.a_[i]) return false;
  return true;
}

namespace {

// In-place row echelon on rows; returns pivot columns. Optionally carries b.
struct Elim {
  std::vector<Vec> rows;
  std::vector<int> pivots;  // pivot column per echelon row
};

Elim eliminate(std::vector<Vec> rows, int cols) {
  Elim e;
  for (Vec& r : rows) {
    // reduce r against kept rows
    for (size_t k = 0; k < e.rows.size(); ++k) {
      const Scalar& c = r[e.pivots[k]];
      if (c.is_zero()) continue;
      Scalar f = c;  // pivot normalized to 1
      for (int j = 0; j < cols; ++j)
        if (!e.rows[k][j].is_zero()) r[j] -= f * e.rows[k][j];
    }
    int p = -1;
    for (int j = 0; j < cols; ++j)
      if (!r[j].is_zero()) {
        p = j;
        break;
      }
    if (p < 0) continue;
    Scalar inv = r[p].inverse();
    for (int j = 0; j < cols; ++j)
      if (!r[j].is_zero()) r[j] *= inv;
    // back-substitute into earlier rows
    for (size_t k = 0; k < e.rows.size(); ++k) {
      const Scalar& c = e.rows[k][p];
      if (c.is_zero()) continue;
      Scalar f = c;
      for (int j = 0; j < cols; ++j)
        if (!r[j].is_zero()) e.rows[k][j] -= f * r[j];
    }
    e.rows.push_back(std::move(r));
    e.pivots.push_back(p);
  }
  return e;
}

}  // namespace

LinearSolution linear_solve(const Matrix& A, const Vec& b) {
  check(static_cast<int>(b.size()) == A.rows(), errc::bad_input,
        "rhs size mismatch");
  const FieldSpec& fs = A.field();
  int n = A.cols();
  // augmented rows [A | b]
  std::vector<Vec> rows;
  rows.reserve(A.rows());
  for (int i = 0; i < A.rows(); ++i) {
    Vec r = A.row(i);
    r.push_back(b[i]);
    rows.push_back(std::move(r));
  }
  Elim e = eliminate(std::move(rows), n + 1);

  LinearSolution sol;
  sol.consistent = true;
  for (size_t k = 0; k < e.rows.size(); ++k)
    if (e.pivots[k] == n) sol.consistent = false;

  std::vector<bool> is_pivot(n, false);
  for (size_t k = 0; k < e.rows.size(); ++k)
    if (e.pivots[k] < n) is_pivot[e.pivots[k]] = true;

  if (sol.consistent) {
    sol.particular = zero_vec(fs, n);
    for (size_t k = 0; k < e.rows.size(); ++k)
      sol.particular[e.pivots[k]] = e.rows[k][n];
  }
  for (int j = 0; j < n; ++j) {
    if (is_pivot[j]) continue;
    Vec kv = zero_vec(fs, n);
    kv[j] = Scalar::one(fs);
    for (size_t k = 0; k < e.rows.size(); ++k)
      if (e.pivots[k] < n) kv[e.pivots[k]] = -e.rows[k][j];
    sol.kernel.push_back(std::move(kv));
  }
  return sol;
}

std::vector<Vec> kernel_basis(const Matrix& A) {
  return linear_solve(A, zero_vec(A.field(), A.rows())).kernel;
}

int rank(const Matrix& A) {
  std::vector<Vec> rows;
  rows.reserve(A.rows());
  for (int i = 0; i < A.rows(); ++i) rows.push_back(A.row(i));
  return static_cast<int>(eliminate(std::move(rows), A.cols()).rows.size());
}

std::optional<Matrix> try_inverse(const Matrix& A) {
  check(A.rows() == A.cols(), errc::bad_input, "inverse of non-square");
  const FieldSpec& fs = A.field();
  int n = A.rows();
  std::vector<Vec> rows;
  rows.reserve(n);
  for (int i = 0; i < n; ++i) {
    Vec r = A.row(i);
    Vec id = basis_vec(fs, n, i);
    r.insert(r.end(), id.begin(), id.end());
    rows.push_back(std::move(r));
  }
  Elim e = eliminate(std::move(rows), 2 * n);
  if (static_cast<int>(e.rows.size()) != n) return std::nullopt;
  Matrix inv(fs, n, n);
  for (int k = 0; k < n; ++k) {
    int p = e.pivots[k];
    if (p >= n) return std::nullopt;
    for (int j = 0; j < n; ++j) inv.at(p, j) = e.rows[k][n + j];
  }
  return inv;
}

Matrix inverse(const Matrix& A) {
  auto inv = try_inverse(A);
  check(inv.has_value(), errc::inconsistent, "singular matrix inverted");
  return *inv;
}

Scalar determinant(const Matrix& A) {
  check(A.rows() == A.cols(), errc::bad_input, "determinant of non-square");
  const FieldSpec& fs = A.field();
  int n = A.rows();
  std::vector<Vec> rows;
  for (int i = 0; i < n; ++i) rows.push_back(A.row(i));
  Scalar det = Scalar::one(fs);
  int used = 0;
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int i = used; i < n; ++i)
      if (!rows[i][col].is_zero()) {
        piv = i;
        break;
      }
    if (piv < 0) return Scalar::zero(fs);
    if (piv != used) {
      std::swap(rows[piv], rows[used]);
      det = -det;
    }
    det *= rows[used][col];
    Scalar inv = rows[used][col].inverse();
    for (int i = used + 1; i < n; ++i) {
      if (rows[i][col].is_zero()) continue;
      Scalar f = rows[i][col] * inv;
      for (int j = col; j < n; ++j)
        if (!rows[used][j].is_zero()) rows[i][j] -= f * rows[used][j];
    }
    ++used;
  }
  return det;
}

SpanSolver::SpanSolver(const FieldSpec& fs, int ambient_dim)
    : fs_(fs), ambient_(ambient_dim) {}

bool SpanSolver::add(const Vec& v) {
  check(static_cast<int>(v.size()) == ambient_, errc::bad_input,
        "span vector size mismatch");
  Vec r = v;
  Vec combo = zero_vec(fs_, static_cast<int>(basis_.size()) + 1);
  for (size_t k = 0; k < echelon_.size(); ++k) {
    const Scalar& c = r[pivot_[k]];
    if (c.is_zero()) continue;
    Scalar f = c;
    for (int j = 0; j < ambient_; ++j)
      if (!echelon_[k][j].is_zero()) r[j] -= f * echelon_[k][j];
    for (size_t i = 0; i < basis_.size(); ++i)
      combo[i] -= f * combo_[k][i];
  }
  int p = -1;
  for (int j = 0; j < ambient_; ++j)
    if (!r[j].is_zero()) {
      p = j;
      break;
    }
  if (p < 0) return false;
  combo[basis_.size()] = Scalar::one(fs_);
  Scalar inv = r[p].inverse();
  for (Scalar& x : r) x *= inv;
  for (Scalar& x : combo) x *= inv;
  basis_.push_back(v);
  echelon_.push_back(std::move(r));
  pivot_.push_back(p);
  combo_.push_back(std::move(combo));
  // pad earlier combos to the new basis size
  for (size_t k = 0; k + 1 < combo_.size(); ++k)
    combo_[k].resize(basis_.size(), Scalar::zero(fs_));
  return true;
}

std::optional<Vec> SpanSolver::coords(const Vec& v) const {
  check(static_cast<int>(v.size()) == ambient_, errc::bad_input,
        "span vector size mismatch");
  Vec r = v;
  Vec mu = zero_vec(fs_, static_cast<int>(basis_.size()));
  for (size_t k = 0; k < echelon_.size(); ++k) {
    const Scalar& c = r[pivot_[k]];
    if (c.is_zero()) continue;
    Scalar f = c;
    for (int j = 0; j < ambient_; ++j)
      if (!echelon_[k][j].is_zero()) r[j] -= f * echelon_[k][j];
    for (size_t i = 0; i < basis_.size(); ++i) mu[i] += f * combo_[k][i];
  }
  if (!is_zero_vec(r)) return std::nullopt;
  return mu;
}

bool SpanSolver::contains(const Vec& v) const { return coords(v).has_value(); }

bool SpanSolver::same_span(const SpanSolver& o) const {
  if (dim() != o.dim()) return false;
  for (const Vec& v : basis_)
    if (!o.contains(v)) return false;
  return true;
}

}  // namespace qcomp
