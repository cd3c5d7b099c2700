#pragma once

#include "ncjet/matrix.hpp"

#include <optional>
#include <vector>

namespace ncjet {

struct RrefResult {
  Mat r;
  std::vector<int> pivots;
  int rank() const { return int(pivots.size()); }
};

/// Reduced row echelon form. Deterministic; the RREF of a matrix is unique.
RrefResult rref(const Mat& m);

/// Incremental RREF accumulator. Rows stay fully reduced at all times, so
/// basis() is the canonical RREF of everything inserted so far.
class RowReducer {
 public:
  explicit RowReducer(int cols) : cols_(cols) {}

  /// Reduces the row against the current basis and inserts the remainder if
  /// nonzero. Returns true when the rank grew.
  bool insert(std::vector<Rational> row);
  void insert_matrix_rows(const Mat& m);
  void insert_matrix_cols(const Mat& m);

  /// Reduces a row against the current basis without inserting.
  void reduce(std::vector<Rational>& row) const;

  int rank() const { return int(rows_.size()); }
  int cols() const { return cols_; }
  Mat basis() const;

 private:
  int cols_;
  std::vector<std::vector<Rational>> rows_;  // sorted by pivot column
  std::vector<int> pivots_;
};

/// A linear subspace of k^ambient, held as the unique RREF basis (rows).
/// Subspace equality is therefore decidable by matrix equality.
class Subspace {
 public:
  Subspace() : ambient_(0) {}
  static Subspace zero(int ambient) { return Subspace(ambient, Mat(0, ambient)); }
  static Subspace full(int ambient) { return Subspace(ambient, Mat::identity(ambient)); }
  /// Row span.
  static Subspace span_rows(const Mat& m);
  /// Column span.
  static Subspace span_cols(const Mat& m) { return span_rows(m.transpose()); }

  int ambient() const { return ambient_; }
  int dim() const { return basis_.rows(); }
  const Mat& basis() const { return basis_; }
  /// Basis vectors as columns (ambient x dim).
  Mat basis_cols() const { return basis_.transpose(); }

  bool contains(const Mat& colvec) const;
  bool contains(const Subspace& other) const;
  /// Coordinates of v in this basis; nullopt if v is outside.
  std::optional<Mat> coordinates(const Mat& colvec) const;
  bool operator==(const Subspace& o) const { return ambient_ == o.ambient_ && basis_ == o.basis_; }
  bool operator!=(const Subspace& o) const { return !(*this == o); }

 private:
  Subspace(int ambient, Mat basis) : ambient_(ambient), basis_(std::move(basis)) {}
  friend Subspace subspace_from_reducer(const RowReducer& red);
  int ambient_;
  Mat basis_;  // dim x ambient, RREF
};

Subspace subspace_from_reducer(const RowReducer& red);

/// Nullspace {v : m v = 0}.
Subspace kernel(const Mat& m);
/// Column span.
Subspace image(const Mat& m);
Subspace intersect(const Subspace& u, const Subspace& v);
Subspace sum(const Subspace& u, const Subspace& v);
/// {x : m x ∈ u}.
Subspace preimage(const Mat& m, const Subspace& u);

/// Quotient k^ambient / U with a chosen complement-based section;
/// proj∘sect = identity and ker(proj) = U.
struct Quotient {
  int dim;
  Mat proj;  // dim x ambient
  Mat sect;  // ambient x dim
};
Quotient quotient(int ambient, const Subspace& u);

/// Any exact solution X of A X = B, or nullopt when inconsistent.
std::optional<Mat> solve_exact(const Mat& a, const Mat& b);
/// Same, throwing std::logic_error when inconsistent (bug signal).
Mat solve_must(const Mat& a, const Mat& b, const char* what);

struct AffineSolution {
  bool solvable;
  Mat particular;     // domain x 1 when solvable
  Subspace homogeneous;  // kernel of the map
};
AffineSolution solve_affine(const Mat& m, const Mat& target);

}  // namespace ncjet
