#pragma once

#include "ncjet/rational.hpp"

#include <stdexcept>
#include <vector>

namespace ncjet {

/// Dense rational matrix, row-major. Column vectors are n-by-1 matrices.
class Mat {
 public:
  Mat() : rows_(0), cols_(0) {}
  Mat(int rows, int cols) : rows_(rows), cols_(cols), a_(size_t(rows) * cols) {}

  static Mat identity(int n);
  static Mat col(std::vector<Rational> entries);
  static Mat from_rows(const std::vector<std::vector<Rational>>& rows);
  static Mat from_cols(const std::vector<Mat>& cols);
  static Mat hstack(const Mat& a, const Mat& b);
  static Mat vstack(const Mat& a, const Mat& b);
  /// Kronecker product; maps basis pair (i,j) to flat index i*b.rows()+j.
  static Mat kron(const Mat& a, const Mat& b);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  const Rational& at(int r, int c) const { return a_[size_t(r) * cols_ + c]; }
  Rational& at(int r, int c) { return a_[size_t(r) * cols_ + c]; }

  Mat operator*(const Mat& o) const;
  Mat operator+(const Mat& o) const;
  Mat operator-(const Mat& o) const;
  Mat operator-() const;
  Mat scaled(const Rational& c) const;
  bool operator==(const Mat& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_; }
  bool operator!=(const Mat& o) const { return !(*this == o); }

  bool is_zero() const;
  Mat transpose() const;
  Mat column(int c) const;
  std::vector<Rational> row_vec(int r) const;
  void set_column(int c, const Mat& v);

 private:
  int rows_, cols_;
  std::vector<Rational> a_;
};

inline void check(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

/// Standard basis column vector e_k of k^dim.
inline Mat unit_col(int dim, int k) {
  Mat v(dim, 1);
  v.at(k, 0) = 1;
  return v;
}

}  // namespace ncjet
