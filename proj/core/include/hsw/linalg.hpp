#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hsw/scalar.hpp"

namespace hsw {

using Vec = std::vector<Scalar>;

struct ShapeMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class Matrix {
public:
  Matrix() = default;
  Matrix(int rows, int cols) : r_(rows), c_(cols), a_(static_cast<size_t>(rows) * cols) {}
  Matrix(std::initializer_list<std::initializer_list<Scalar>> rows);

  static Matrix identity(int n);
  static Matrix zero(int r, int c) { return Matrix(r, c); }
  static Matrix from_rows(const std::vector<Vec>& rows, int cols);
  static Matrix from_cols(const std::vector<Vec>& cols, int rows);

  int rows() const { return r_; }
  int cols() const { return c_; }
  bool empty() const { return r_ == 0 || c_ == 0; }

  Scalar& operator()(int i, int j) { return a_[static_cast<size_t>(i) * c_ + j]; }
  const Scalar& operator()(int i, int j) const { return a_[static_cast<size_t>(i) * c_ + j]; }

  Vec row(int i) const;
  Vec col(int j) const;
  void set_col(int j, const Vec& v);
  Matrix transpose() const;
  bool is_zero() const;

  Matrix& operator+=(const Matrix& o);
  Matrix& operator-=(const Matrix& o);
  Matrix& operator*=(const Scalar& s);
  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, const Scalar& s) { return a *= s; }
  friend Matrix operator*(const Scalar& s, Matrix a) { return a *= s; }
  Matrix operator-() const { return *this * Scalar(-1); }
  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend Vec operator*(const Matrix& a, const Vec& v);
  friend bool operator==(const Matrix& a, const Matrix& b);

  // block helpers
  Matrix block(int r0, int c0, int nr, int nc) const;
  void set_block(int r0, int c0, const Matrix& b);
  static Matrix hstack(const Matrix& a, const Matrix& b);
  static Matrix vstack(const Matrix& a, const Matrix& b);
  static Matrix direct_sum(const Matrix& a, const Matrix& b);

  std::string str() const;

private:
  int r_ = 0, c_ = 0;
  std::vector<Scalar> a_;
};

Vec vec_add(const Vec& a, const Vec& b);
Vec vec_sub(const Vec& a, const Vec& b);
Vec vec_scale(const Vec& a, const Scalar& s);
bool vec_is_zero(const Vec& a);
Vec unit_vec(int n, int i);

struct RrefResult {
  Matrix r;
  std::vector<int> pivots;
};

RrefResult rref(Matrix m);
int rank(const Matrix& m);
Matrix nullspace(const Matrix& m);      // columns form a basis of ker m
Matrix column_space(const Matrix& m);   // independent columns spanning im m
std::optional<Vec> solve(const Matrix& m, const Vec& b);
std::optional<Matrix> solve(const Matrix& m, const Matrix& b);
std::optional<Matrix> inverse(const Matrix& m);
Scalar det(const Matrix& m);
// a right inverse of a surjective m (m * r = id)
std::optional<Matrix> right_inverse(const Matrix& m);
// l m = id, for m of full column rank
std::optional<Matrix> left_inverse(const Matrix& m);

using SparseRow = std::vector<std::pair<int, Scalar>>;  // sorted by column

// Incremental reduced row echelon form over sparse rows.
class SparseRref {
public:
  explicit SparseRref(int ncols) : n_(ncols) {}
  // returns true when the row was independent of those already present
  bool add(SparseRow row);
  // reduce without inserting; empty result means the row lies in the span
  SparseRow reduce(SparseRow row) const;
  int rank() const { return static_cast<int>(rows_.size()); }
  int ncols() const { return n_; }
  std::vector<Vec> kernel_basis() const;
  const std::map<int, SparseRow>& rows() const { return rows_; }

private:
  int n_;
  std::map<int, SparseRow> rows_;  // pivot column -> row with leading 1
};

SparseRow to_sparse(const Vec& v);
Vec to_dense(const SparseRow& r, int n);

// sparse linear combination: a += s*b
void sparse_axpy(SparseRow& a, const Scalar& s, const SparseRow& b);

}  // namespace hsw
