#include "ncjet/matrix.hpp"

namespace ncjet {

Mat Mat::identity(int n) {
  Mat m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

Mat Mat::col(std::vector<Rational> entries) {
  Mat m(int(entries.size()), 1);
  for (size_t i = 0; i < entries.size(); ++i) m.at(int(i), 0) = std::move(entries[i]);
  return m;
}

Mat Mat::from_rows(const std::vector<std::vector<Rational>>& rows) {
  if (rows.empty()) return Mat();
  Mat m(int(rows.size()), int(rows[0].size()));
  for (size_t r = 0; r < rows.size(); ++r) {
    check(rows[r].size() == rows[0].size(), "from_rows: ragged rows");
    for (size_t c = 0; c < rows[r].size(); ++c) m.at(int(r), int(c)) = rows[r][c];
  }
  return m;
}

Mat Mat::from_cols(const std::vector<Mat>& cols) {
  check(!cols.empty(), "from_cols: empty");
  Mat m(cols[0].rows(), int(cols.size()));
  for (size_t c = 0; c < cols.size(); ++c) {
    check(cols[c].rows() == m.rows() && cols[c].cols() == 1, "from_cols: bad shapes");
    for (int r = 0; r < m.rows(); ++r) m.at(r, int(c)) = cols[c].at(r, 0);
  }
  return m;
}

Mat Mat::hstack(const Mat& a, const Mat& b) {
  check(a.rows() == b.rows(), "hstack: row mismatch");
  Mat m(a.rows(), a.cols() + b.cols());
  for (int r = 0; r < a.rows(); ++r) {
    for (int c = 0; c < a.cols(); ++c) m.at(r, c) = a.at(r, c);
    for (int c = 0; c < b.cols(); ++c) m.at(r, a.cols() + c) = b.at(r, c);
  }
  return m;
}

Mat Mat::vstack(const Mat& a, const Mat& b) {
  check(a.cols() == b.cols(), "vstack: col mismatch");
  Mat m(a.rows() + b.rows(), a.cols());
  for (int r = 0; r < a.rows(); ++r)
    for (int c = 0; c < a.cols(); ++c) m.at(r, c) = a.at(r, c);
  for (int r = 0; r < b.rows(); ++r)
    for (int c = 0; c < b.cols(); ++c) m.at(a.rows() + r, c) = b.at(r, c);
  return m;
}

Mat Mat::kron(const Mat& a, const Mat& b) {
  Mat m(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int k = 0; k < a.cols(); ++k) {
      const Rational& x = a.at(i, k);
      if (x == 0) continue;
      for (int j = 0; j < b.rows(); ++j)
        for (int l = 0; l < b.cols(); ++l) {
          const Rational& y = b.at(j, l);
          if (y == 0) continue;
          m.at(i * b.rows() + j, k * b.cols() + l) = x * y;
        }
    }
  return m;
}

Mat Mat::operator*(const Mat& o) const {
  check(cols_ == o.rows_, "matmul: shape mismatch");
  Mat m(rows_, o.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      const Rational& x = at(i, k);
      if (x == 0) continue;
      for (int j = 0; j < o.cols_; ++j) {
        const Rational& y = o.at(k, j);
        if (y == 0) continue;
        m.at(i, j) += x * y;
      }
    }
  return m;
}

Mat Mat::operator+(const Mat& o) const {
  check(rows_ == o.rows_ && cols_ == o.cols_, "add: shape mismatch");
  Mat m = *this;
  for (size_t i = 0; i < a_.size(); ++i) m.a_[i] += o.a_[i];
  return m;
}

Mat Mat::operator-(const Mat& o) const {
  check(rows_ == o.rows_ && cols_ == o.cols_, "sub: shape mismatch");
  Mat m = *this;
  for (size_t i = 0; i < a_.size(); ++i) m.a_[i] -= o.a_[i];
  return m;
}

Mat Mat::operator-() const {
  Mat m = *this;
  for (auto& x : m.a_) x = -x;
  return m;
}

Mat Mat::scaled(const Rational& c) const {
  Mat m = *this;
  for (auto& x : m.a_) x *= c;
  return m;
}

bool Mat::is_zero() const {
  for (const auto& x : a_)
    if (x != 0) return false;
  return true;
}

Mat Mat::transpose() const {
  Mat m(cols_, rows_);
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c) m.at(c, r) = at(r, c);
  return m;
}

Mat Mat::column(int c) const {
  Mat v(rows_, 1);
  for (int r = 0; r < rows_; ++r) v.at(r, 0) = at(r, c);
  return v;
}

std::vector<Rational> Mat::row_vec(int r) const {
  std::vector<Rational> v(cols_);
  for (int c = 0; c < cols_; ++c) v[c] = at(r, c);
  return v;
}

void Mat::set_column(int c, const Mat& v) {
  check(v.rows() == rows_ && v.cols() == 1, "set_column: bad shape");
  for (int r = 0; r < rows_; ++r) at(r, c) = v.at(r, 0);
}

}  // namespace ncjet
