// Copyright 2026 The quadcomp authors.
// Distributed WITHOUT ANY WARRANTY. Licensed under the Apache License,
// Version 2.0, see http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <optional>
#include <vector>

#include "qcomp/field.hpp"

namespace qcomp {

using Vec = std::vector<Scalar>;

Vec zero_vec(const FieldSpec& fs, int n);
Vec basis_vec(const FieldSpec& fs, int n, int i);
bool is_zero_vec(const Vec& v);
Vec vadd(const Vec& a, const Vec& b);
Vec vsub(const Vec& a, const Vec& b);
Vec vneg(const Vec& a);
Vec vscale(const Scalar& c, const Vec& a);
Scalar vdot(const Vec& a, const Vec& b);  // plain sum of products

/// Dense matrix of exact scalars. Row-major.
class Matrix {
 public:
  Matrix() : fs_(), rows_(0), cols_(0) {}
  Matrix(const FieldSpec& fs, int rows, int cols)
      : fs_(fs), rows_(rows), cols_(cols),
        a_(static_cast<size_t>(rows) * cols, Scalar::zero(fs)) {}

  static Matrix identity(const FieldSpec& fs, int n);
  static Matrix from_rows(const FieldSpec& fs, const std::vector<Vec>& rows);
  static Matrix from_cols(const FieldSpec& fs, const std::vector<Vec>& cols);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  const FieldSpec& field() const { return fs_; }

  Scalar& at(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
  const Scalar& at(int i, int j) const {
    return a_[static_cast<size_t>(i) * cols_ + j];
  }

  Vec row(int i) const;
  Vec col(int j) const;
  Matrix transpose() const;
  Scalar trace() const;
  bool is_identity() const;
  bool is_zero() const;

  Vec apply(const Vec& x) const;

  Matrix operator*(const Matrix& o) const;
  Matrix operator+(const Matrix& o) const;
  Matrix operator-(const Matrix& o) const;
  Matrix scaled(const Scalar& c) const;
  bool operator==(const Matrix& o) const;
  bool operator!=(const Matrix& o) const { return !(*this == o); }

 private:
  FieldSpec fs_;
  int rows_, cols_;
  std::vector<Scalar> a_;
};

/// Full affine solution set of A x = b.
struct LinearSolution {
  bool consistent = false;
  Vec particular;           // one solution, when consistent
  std::vector<Vec> kernel;  // basis of the homogeneous solution space
};

LinearSolution linear_solve(const Matrix& A, const Vec& b);
std::vector<Vec> kernel_basis(const Matrix& A);
int rank(const Matrix& A);
std::optional<Matrix> try_inverse(const Matrix& A);
Matrix inverse(const Matrix& A);  // internal fault when singular
Scalar determinant(const Matrix& A);

/// Incremental echelonized span with coordinate recovery: add vectors one
/// by one; coords() expresses a vector over the independent ones kept.
class SpanSolver {
 public:
  SpanSolver(const FieldSpec& fs, int ambient_dim);

  /// True when v enlarged the span (v is kept as basis vector #dim()-1).
  bool add(const Vec& v);
  bool contains(const Vec& v) const;
  /// Coordinates of v over basis(); nullopt when v is outside the span.
  std::optional<Vec> coords(const Vec& v) const;
  int dim() const { return static_cast<int>(basis_.size()); }
  int ambient_dim() const { return ambient_; }
  const std::vector<Vec>& basis() const { return basis_; }

  /// Span equality against another solver over the same ambient space.
  bool same_span(const SpanSolver& o) const;

 private:
  FieldSpec fs_;
  int ambient_;
  std::vector<Vec> basis_;     // original independent vectors, in add order
  std::vector<Vec> echelon_;   // reduced rows, pivot normalized to 1
  std::vector<int> pivot_;     // pivot column of each echelon row
  std::vector<Vec> combo_;     // echelon_[k] = sum combo_[k][i] * basis_[i]
};

}  // namespace qcomp
