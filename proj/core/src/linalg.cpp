#include "ncjet/linalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace ncjet {

bool RowReducer::insert(std::vector<Rational> row) {
  check(int(row.size()) == cols_, "RowReducer: row length mismatch");
  reduce(row);
  int p = -1;
  for (int c = 0; c < cols_; ++c)
    if (row[c] != 0) {
      p = c;
      break;
    }
  if (p < 0) return false;
  Rational inv = Rational(1) / row[p];
  for (int c = p; c < cols_; ++c)
    if (row[c] != 0) row[c] *= inv;
  // keep existing rows reduced against the new pivot
  for (size_t i = 0; i < rows_.size(); ++i) {
    Rational f = rows_[i][p];
    if (f == 0) continue;
    for (int c = p; c < cols_; ++c)
      if (row[c] != 0) rows_[i][c] -= f * row[c];
  }
  auto it = std::lower_bound(pivots_.begin(), pivots_.end(), p);
  size_t idx = size_t(it - pivots_.begin());
  pivots_.insert(it, p);
  rows_.insert(rows_.begin() + idx, std::move(row));
  return true;
}

void RowReducer::insert_matrix_rows(const Mat& m) {
  for (int r = 0; r < m.rows(); ++r) insert(m.row_vec(r));
}

void RowReducer::insert_matrix_cols(const Mat& m) {
  for (int c = 0; c < m.cols(); ++c) {
    std::vector<Rational> row(m.rows());
    for (int r = 0; r < m.rows(); ++r) row[r] = m.at(r, c);
    insert(std::move(row));
  }
}

void RowReducer::reduce(std::vector<Rational>& row) const {
  for (size_t i = 0; i < rows_.size(); ++i) {
    Rational f = row[pivots_[i]];
    if (f == 0) continue;
    const auto& basis_row = rows_[i];
    for (int c = pivots_[i]; c < cols_; ++c)
      if (basis_row[c] != 0) row[c] -= f * basis_row[c];
  }
}

Mat RowReducer::basis() const {
  Mat m(int(rows_.size()), cols_);
  for (size_t r = 0; r < rows_.size(); ++r)
    for (int c = 0; c < cols_; ++c) m.at(int(r), c) = rows_[r][c];
  return m;
}

RrefResult rref(const Mat& m) {
  RowReducer red(m.cols());
  red.insert_matrix_rows(m);
  RrefResult out{red.basis(), {}};
  for (int r = 0; r < out.r.rows(); ++r)
    for (int c = 0; c < out.r.cols(); ++c)
      if (out.r.at(r, c) != 0) {
        out.pivots.push_back(c);
        break;
      }
  return out;
}

Subspace subspace_from_reducer(const RowReducer& red) {
  return Subspace(red.cols(), red.basis());
}

Subspace Subspace::span_rows(const Mat& m) {
  RowReducer red(m.cols());
  red.insert_matrix_rows(m);
  return subspace_from_reducer(red);
}

bool Subspace::contains(const Mat& v) const {
  check(v.rows() == ambient_ && v.cols() == 1, "contains: bad vector shape");
  return coordinates(v).has_value();
}

bool Subspace::contains(const Subspace& other) const {
  check(other.ambient_ == ambient_, "contains: ambient mismatch");
  for (int r = 0; r < other.basis_.rows(); ++r)
    if (!contains(Mat::col(other.basis_.row_vec(r)))) return false;
  return true;
}

std::optional<Mat> Subspace::coordinates(const Mat& v) const {
  std::vector<Rational> row(ambient_);
  for (int i = 0; i < ambient_; ++i) row[i] = v.at(i, 0);
  Mat coords(dim(), 1);
  // rows are RREF: pivot entries of v give coordinates directly
  for (int r = 0; r < basis_.rows(); ++r) {
    int p = -1;
    for (int c = 0; c < ambient_; ++c)
      if (basis_.at(r, c) != 0) {
        p = c;
        break;
      }
    Rational f = row[p];
    if (f != 0) {
      coords.at(r, 0) = f;
      for (int c = p; c < ambient_; ++c)
        if (basis_.at(r, c) != 0) row[c] -= f * basis_.at(r, c);
    }
  }
  for (int i = 0; i < ambient_; ++i)
    if (row[i] != 0) return std::nullopt;
  return coords;
}

Subspace kernel(const Mat& m) {
  RrefResult rr = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (int p : rr.pivots) is_pivot[p] = true;
  std::vector<std::vector<Rational>> basis_rows;
  for (int c = 0; c < m.cols(); ++c) {
    if (is_pivot[c]) continue;
    std::vector<Rational> v(m.cols());
    v[c] = 1;
    for (int r = 0; r < rr.r.rows(); ++r)
      if (rr.r.at(r, c) != 0) v[rr.pivots[r]] = -rr.r.at(r, c);
    basis_rows.push_back(std::move(v));
  }
  if (basis_rows.empty()) return Subspace::zero(m.cols());
  return Subspace::span_rows(Mat::from_rows(basis_rows));
}

Subspace image(const Mat& m) { return Subspace::span_cols(m); }

Subspace sum(const Subspace& u, const Subspace& v) {
  check(u.ambient() == v.ambient(), "sum: ambient mismatch");
  RowReducer red(u.ambient());
  red.insert_matrix_rows(u.basis());
  red.insert_matrix_rows(v.basis());
  return subspace_from_reducer(red);
}

Subspace intersect(const Subspace& u, const Subspace& v) {
  check(u.ambient() == v.ambient(), "intersect: ambient mismatch");
  if (u.dim() == 0 || v.dim() == 0) return Subspace::zero(u.ambient());
  // x = U^T a = V^T b; solve [U^T | -V^T] (a;b) = 0
  Mat stacked = Mat::hstack(u.basis_cols(), -v.basis_cols());
  Subspace k = kernel(stacked);
  RowReducer red(u.ambient());
  for (int r = 0; r < k.dim(); ++r) {
    Mat ab = Mat::col(k.basis().row_vec(r));
    Mat a(u.dim(), 1);
    for (int i = 0; i < u.dim(); ++i) a.at(i, 0) = ab.at(i, 0);
    Mat x = u.basis_cols() * a;
    std::vector<Rational> row(u.ambient());
    for (int i = 0; i < u.ambient(); ++i) row[i] = x.at(i, 0);
    red.insert(std::move(row));
  }
  return subspace_from_reducer(red);
}

Subspace preimage(const Mat& m, const Subspace& u) {
  check(m.rows() == u.ambient(), "preimage: shape mismatch");
  Quotient q = quotient(u.ambient(), u);
  return kernel(q.proj * m);
}

Quotient quotient(int ambient, const Subspace& u) {
  check(u.ambient() == ambient, "quotient: ambient mismatch");
  std::vector<int> pivots;
  for (int r = 0; r < u.basis().rows(); ++r)
    for (int c = 0; c < ambient; ++c)
      if (u.basis().at(r, c) != 0) {
        pivots.push_back(c);
        break;
      }
  std::vector<bool> is_pivot(ambient, false);
  for (int p : pivots) is_pivot[p] = true;
  std::vector<int> free_cols;
  for (int c = 0; c < ambient; ++c)
    if (!is_pivot[c]) free_cols.push_back(c);

  Quotient q;
  q.dim = int(free_cols.size());
  q.proj = Mat(q.dim, ambient);
  q.sect = Mat(ambient, q.dim);
  // reduce v by U, then read the free coordinates
  for (size_t t = 0; t < free_cols.size(); ++t) {
    q.proj.at(int(t), free_cols[t]) = 1;
    q.sect.at(free_cols[t], int(t)) = 1;
  }
  for (size_t r = 0; r < pivots.size(); ++r)
    for (size_t t = 0; t < free_cols.size(); ++t) {
      const Rational& coeff = u.basis().at(int(r), free_cols[t]);
      if (coeff != 0) q.proj.at(int(t), pivots[r]) = -coeff;
    }
  return q;
}

std::optional<Mat> solve_exact(const Mat& a, const Mat& b) {
  check(a.rows() == b.rows(), "solve: shape mismatch");
  RrefResult rr = rref(Mat::hstack(a, b));
  for (int p : rr.pivots)
    if (p >= a.cols()) return std::nullopt;  // inconsistent
  Mat x(a.cols(), b.cols());
  for (int r = 0; r < rr.r.rows(); ++r) {
    int p = rr.pivots[r];
    for (int c = 0; c < b.cols(); ++c) x.at(p, c) = rr.r.at(r, a.cols() + c);
  }
  return x;
}

Mat solve_must(const Mat& a, const Mat& b, const char* what) {
  auto x = solve_exact(a, b);
  if (!x) throw std::logic_error(std::string("unsolvable system: ") + what);
  return *x;
}

AffineSolution solve_affine(const Mat& m, const Mat& target) {
  AffineSolution s;
  s.homogeneous = kernel(m);
  auto x = solve_exact(m, target);
  s.solvable = x.has_value();
  if (s.solvable) s.particular = *x;
  return s;
}

}  // namespace ncjet
