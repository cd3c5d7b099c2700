#include "ncjet/builtin.hpp"

namespace ncjet {

namespace {

Mat coords4(int a, int b, int c, int d) {
  return Mat::col({Rational(a), Rational(b), Rational(c), Rational(d)});
}

Algebra make_quaternions() {
  Algebra h;
  h.name = "quaternions";
  h.dim = 4;
  h.basis = {"1", "i", "j", "k"};
  h.unit = coords4(1, 0, 0, 0);
  h.mult.assign(4, std::vector<Mat>(4));
  // table rows: 1, i, j, k
  auto one = coords4(1, 0, 0, 0), ei = coords4(0, 1, 0, 0);
  auto ej = coords4(0, 0, 1, 0), ek = coords4(0, 0, 0, 1);
  Mat t[4][4] = {
      {one, ei, ej, ek},
      {ei, -one, ek, -ej},
      {ej, -ek, -one, ei},
      {ek, ej, -ei, -one},
  };
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) h.mult[i][j] = t[i][j];
  return h;
}

Algebra make_dual_numbers() {
  Algebra a;
  a.name = "dual_numbers";
  a.dim = 2;
  a.basis = {"1", "t"};
  a.unit = Mat::col({Rational(1), Rational(0)});
  a.mult.assign(2, std::vector<Mat>(2));
  Mat one = Mat::col({Rational(1), Rational(0)});
  Mat t = Mat::col({Rational(0), Rational(1)});
  Mat zero = Mat::col({Rational(0), Rational(0)});
  a.mult[0][0] = one;
  a.mult[0][1] = t;
  a.mult[1][0] = t;
  a.mult[1][1] = zero;  // t^2 = 0
  return a;
}

Algebra make_upper_triangular2() {
  Algebra a;
  a.name = "upper_triangular2";
  a.dim = 3;
  a.basis = {"e11", "e12", "e22"};
  a.unit = Mat::col({Rational(1), Rational(0), Rational(1)});
  a.mult.assign(3, std::vector<Mat>(3));
  Mat e11 = Mat::col({Rational(1), Rational(0), Rational(0)});
  Mat e12 = Mat::col({Rational(0), Rational(1), Rational(0)});
  Mat e22 = Mat::col({Rational(0), Rational(0), Rational(1)});
  Mat zero = Mat::col({Rational(0), Rational(0), Rational(0)});
  a.mult[0][0] = e11;
  a.mult[0][1] = e12;
  a.mult[0][2] = zero;
  a.mult[1][0] = zero;
  a.mult[1][1] = zero;
  a.mult[1][2] = e12;
  a.mult[2][0] = zero;
  a.mult[2][1] = zero;
  a.mult[2][2] = e22;
  return a;
}

}  // namespace

AlgebraPtr quaternions() {
  static const AlgebraPtr p = std::make_shared<Algebra>(make_quaternions());
  return p;
}

AlgebraPtr dual_numbers() {
  static const AlgebraPtr p = std::make_shared<Algebra>(make_dual_numbers());
  return p;
}

AlgebraPtr upper_triangular2() {
  static const AlgebraPtr p = std::make_shared<Algebra>(make_upper_triangular2());
  return p;
}

}  // namespace ncjet
