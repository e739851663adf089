#include "hsw/linalg.hpp"

#include <algorithm>
#include <sstream>

namespace hsw {

Matrix::Matrix(std::initializer_list<std::initializer_list<Scalar>> rows) {
  r_ = static_cast<int>(rows.size());
  c_ = r_ ? static_cast<int>(rows.begin()->size()) : 0;
  a_.reserve(static_cast<size_t>(r_) * c_);
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != c_) throw ShapeMismatch("ragged matrix literal");
    for (const auto& x : row) a_.push_back(x);
  }
}

Matrix Matrix::identity(int n) {
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::from_rows(const std::vector<Vec>& rows, int cols) {
  Matrix m(static_cast<int>(rows.size()), cols);
  for (int i = 0; i < m.r_; ++i) {
    if (static_cast<int>(rows[i].size()) != cols) throw ShapeMismatch("row length");
    for (int j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

Matrix Matrix::from_cols(const std::vector<Vec>& cols, int rows) {
  Matrix m(rows, static_cast<int>(cols.size()));
  for (int j = 0; j < m.c_; ++j) m.set_col(j, cols[j]);
  return m;
}

Vec Matrix::row(int i) const { return Vec(a_.begin() + static_cast<long>(i) * c_, a_.begin() + static_cast<long>(i + 1) * c_); }

Vec Matrix::col(int j) const {
  Vec v(r_);
  for (int i = 0; i < r_; ++i) v[i] = (*this)(i, j);
  return v;
}

void Matrix::set_col(int j, const Vec& v) {
  if (static_cast<int>(v.size()) != r_) throw ShapeMismatch("column length");
  for (int i = 0; i < r_; ++i) (*this)(i, j) = v[i];
}

Matrix Matrix::transpose() const {
  Matrix t(c_, r_);
  for (int i = 0; i < r_; ++i)
    for (int j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

bool Matrix::is_zero() const {
  return std::all_of(a_.begin(), a_.end(), [](const Scalar& x) { return x.is_zero(); });
}

Matrix& Matrix::operator+=(const Matrix& o) {
  if (r_ != o.r_ || c_ != o.c_) throw ShapeMismatch("matrix sum " + std::to_string(r_) + "x" + std::to_string(c_) + " vs " + std::to_string(o.r_) + "x" + std::to_string(o.c_));
  for (size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& o) {
  if (r_ != o.r_ || c_ != o.c_) throw ShapeMismatch("matrix difference " + std::to_string(r_) + "x" + std::to_string(c_) + " vs " + std::to_string(o.r_) + "x" + std::to_string(o.c_));
  for (size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
  return *this;
}

Matrix& Matrix::operator*=(const Scalar& s) {
  for (auto& x : a_) x *= s;
  return *this;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.c_ != b.r_) throw ShapeMismatch("matrix product " + std::to_string(a.r_) + "x" + std::to_string(a.c_) + " * " + std::to_string(b.r_) + "x" + std::to_string(b.c_));
  Matrix m(a.r_, b.c_);
  for (int i = 0; i < a.r_; ++i)
    for (int k = 0; k < a.c_; ++k) {
      const Scalar& x = a(i, k);
      if (x.is_zero()) continue;
      for (int j = 0; j < b.c_; ++j) m(i, j).add_mul(x, b(k, j));
    }
  return m;
}

Vec operator*(const Matrix& a, const Vec& v) {
  if (a.c_ != static_cast<int>(v.size())) throw ShapeMismatch("matrix-vector product");
  Vec out(a.r_);
  for (int i = 0; i < a.r_; ++i)
    for (int k = 0; k < a.c_; ++k) out[i].add_mul(a(i, k), v[k]);
  return out;
}

bool operator==(const Matrix& a, const Matrix& b) {
  return a.r_ == b.r_ && a.c_ == b.c_ && a.a_ == b.a_;
}

Matrix Matrix::block(int r0, int c0, int nr, int nc) const {
  Matrix b(nr, nc);
  for (int i = 0; i < nr; ++i)
    for (int j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
  return b;
}

void Matrix::set_block(int r0, int c0, const Matrix& b) {
  if (r0 + b.r_ > r_ || c0 + b.c_ > c_) throw ShapeMismatch("block out of range");
  for (int i = 0; i < b.r_; ++i)
    for (int j = 0; j < b.c_; ++j) (*this)(r0 + i, c0 + j) = b(i, j);
}

Matrix Matrix::hstack(const Matrix& a, const Matrix& b) {
  if (a.r_ != b.r_) throw ShapeMismatch("hstack");
  Matrix m(a.r_, a.c_ + b.c_);
  m.set_block(0, 0, a);
  m.set_block(0, a.c_, b);
  return m;
}

Matrix Matrix::vstack(const Matrix& a, const Matrix& b) {
  if (a.c_ != b.c_) throw ShapeMismatch("vstack");
  Matrix m(a.r_ + b.r_, a.c_);
  m.set_block(0, 0, a);
  m.set_block(a.r_, 0, b);
  return m;
}

Matrix Matrix::direct_sum(const Matrix& a, const Matrix& b) {
  Matrix m(a.r_ + b.r_, a.c_ + b.c_);
  m.set_block(0, 0, a);
  m.set_block(a.r_, a.c_, b);
  return m;
}

std::string Matrix::str() const {
  std::ostringstream os;
  os << "[";
  for (int i = 0; i < r_; ++i) {
    os << (i ? "; " : "");
    for (int j = 0; j < c_; ++j) os << (j ? " " : "") << (*this)(i, j);
  }
  os << "]";
  return os.str();
}

Vec vec_add(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw ShapeMismatch("vector sum");
  Vec r = a;
  for (size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}

Vec vec_sub(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw ShapeMismatch("vector difference");
  Vec r = a;
  for (size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
  return r;
}

Vec vec_scale(const Vec& a, const Scalar& s) {
  Vec r = a;
  for (auto& x : r) x *= s;
  return r;
}

bool vec_is_zero(const Vec& a) {
  return std::all_of(a.begin(), a.end(), [](const Scalar& x) { return x.is_zero(); });
}

Vec unit_vec(int n, int i) {
  Vec v(n);
  v[i] = 1;
  return v;
}

RrefResult rref(Matrix m) {
  RrefResult res;
  int row = 0;
  for (int c = 0; c < m.cols() && row < m.rows(); ++c) {
    int piv = -1;
    for (int i = row; i < m.rows(); ++i)
      if (!m(i, c).is_zero()) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != row)
      for (int j = 0; j < m.cols(); ++j) std::swap(m(piv, j), m(row, j));
    Scalar inv = Scalar(1) / m(row, c);
    for (int j = c; j < m.cols(); ++j) m(row, j) *= inv;
    for (int i = 0; i < m.rows(); ++i) {
      if (i == row || m(i, c).is_zero()) continue;
      Scalar f = -m(i, c);
      for (int j = c; j < m.cols(); ++j) m(i, j).add_mul(f, m(row, j));
    }
    res.pivots.push_back(c);
    ++row;
  }
  res.r = std::move(m);
  return res;
}

int rank(const Matrix& m) {
  SparseRref sr(m.cols());
  for (int i = 0; i < m.rows(); ++i) sr.add(to_sparse(m.row(i)));
  return sr.rank();
}

Matrix nullspace(const Matrix& m) {
  SparseRref sr(m.cols());
  for (int i = 0; i < m.rows(); ++i) sr.add(to_sparse(m.row(i)));
  return Matrix::from_cols(sr.kernel_basis(), m.cols());
}

Matrix column_space(const Matrix& m) {
  auto rr = rref(m);
  std::vector<Vec> cols;
  for (int p : rr.pivots) cols.push_back(m.col(p));
  return Matrix::from_cols(cols, m.rows());
}

std::optional<Vec> solve(const Matrix& m, const Vec& b) {
  Matrix bm(static_cast<int>(b.size()), 1);
  bm.set_col(0, b);
  auto x = solve(m, bm);
  if (!x) return std::nullopt;
  return x->col(0);
}

std::optional<Matrix> solve(const Matrix& m, const Matrix& b) {
  if (m.rows() != b.rows()) throw ShapeMismatch("solve: right-hand side rows");
  auto rr = rref(Matrix::hstack(m, b));
  Matrix x(m.cols(), b.cols());
  for (size_t k = 0; k < rr.pivots.size(); ++k) {
    int p = rr.pivots[k];
    if (p >= m.cols()) return std::nullopt;  // inconsistent
    for (int j = 0; j < b.cols(); ++j) x(p, j) = rr.r(static_cast<int>(k), m.cols() + j);
  }
  return x;
}

std::optional<Matrix> inverse(const Matrix& m) {
  if (m.rows() != m.cols()) return std::nullopt;
  if (rank(m) != m.rows()) return std::nullopt;
  return solve(m, Matrix::identity(m.rows()));
}

std::optional<Matrix> right_inverse(const Matrix& m) {
  if (rank(m) != m.rows()) return std::nullopt;
  // m r = id with r = m^T (m m^T)^{-1} would need a field with positivity;
  // take the pivot columns instead.
  auto rr = rref(m);
  Matrix sub(m.rows(), m.rows());
  for (int k = 0; k < m.rows(); ++k) sub.set_col(k, m.col(rr.pivots[k]));
  auto si = inverse(sub);
  if (!si) return std::nullopt;
  Matrix r(m.cols(), m.rows());
  for (int k = 0; k < m.rows(); ++k)
    for (int j = 0; j < m.rows(); ++j) r(rr.pivots[k], j) = (*si)(k, j);
  return r;
}

std::optional<Matrix> left_inverse(const Matrix& m) {
  auto r = right_inverse(m.transpose());
  if (!r) return std::nullopt;
  return r->transpose();
}

Scalar det(const Matrix& m0) {
  if (m0.rows() != m0.cols()) throw ShapeMismatch("det of non-square matrix");
  Matrix m = m0;
  int n = m.rows();
  Scalar d = 1;
  for (int c = 0; c < n; ++c) {
    int piv = -1;
    for (int i = c; i < n; ++i)
      if (!m(i, c).is_zero()) {
        piv = i;
        break;
      }
    if (piv < 0) return Scalar(0);
    if (piv != c) {
      for (int j = 0; j < n; ++j) std::swap(m(piv, j), m(c, j));
      d = -d;
    }
    d *= m(c, c);
    Scalar inv = Scalar(1) / m(c, c);
    for (int i = c + 1; i < n; ++i) {
      if (m(i, c).is_zero()) continue;
      Scalar f = -m(i, c) * inv;
      for (int j = c; j < n; ++j) m(i, j).add_mul(f, m(c, j));
    }
  }
  return d;
}

SparseRow to_sparse(const Vec& v) {
  SparseRow r;
  for (int i = 0; i < static_cast<int>(v.size()); ++i)
    if (!v[i].is_zero()) r.emplace_back(i, v[i]);
  return r;
}

Vec to_dense(const SparseRow& r, int n) {
  Vec v(n);
  for (const auto& [i, x] : r) v[i] = x;
  return v;
}

void sparse_axpy(SparseRow& a, const Scalar& s, const SparseRow& b) {
  if (s.is_zero() || b.empty()) return;
  SparseRow out;
  out.reserve(a.size() + b.size());
  size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(std::move(a[i++]));
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.emplace_back(b[j].first, s * b[j].second);
      ++j;
    } else {
      Scalar x = std::move(a[i].second);
      x.add_mul(s, b[j].second);
      if (!x.is_zero()) out.emplace_back(a[i].first, std::move(x));
      ++i;
      ++j;
    }
  }
  a = std::move(out);
}

SparseRow SparseRref::reduce(SparseRow row) const {
  // existing rows are fully reduced, so a single left-to-right sweep suffices
  size_t k = 0;
  while (k < row.size()) {
    auto it = rows_.find(row[k].first);
    if (it == rows_.end()) {
      ++k;
      continue;
    }
    Scalar f = -row[k].second;
    sparse_axpy(row, f, it->second);
    // the pivot entry vanished; position k now holds the next column
  }
  return row;
}

bool SparseRref::add(SparseRow row) {
  row = reduce(std::move(row));
  if (row.empty()) return false;
  int p = row.front().first;
  Scalar inv = Scalar(1) / row.front().second;
  for (auto& e : row) e.second *= inv;
  for (auto& [q, other] : rows_) {
    auto it = std::lower_bound(other.begin(), other.end(), p,
                               [](const std::pair<int, Scalar>& e, int c) { return e.first < c; });
    if (it != other.end() && it->first == p) {
      Scalar f = -it->second;
      sparse_axpy(other, f, row);
    }
  }
  rows_.emplace(p, std::move(row));
  return true;
}

std::vector<Vec> SparseRref::kernel_basis() const {
  std::vector<Vec> out;
  for (int f = 0; f < n_; ++f) {
    if (rows_.count(f)) continue;
    Vec v(n_);
    v[f] = 1;
    for (const auto& [p, row] : rows_) {
      auto it = std::lower_bound(row.begin(), row.end(), f,
                                 [](const std::pair<int, Scalar>& e, int c) { return e.first < c; });
      if (it != row.end() && it->first == f) v[p] = -it->second;
    }
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace hsw
