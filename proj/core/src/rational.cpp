#include "ncjet/rational.hpp"

#include <cctype>
#include <cstdlib>

namespace ncjet {

std::string to_string(const Rational& q) {
  std::string s = numerator(q).str();
  if (denominator(q) != 1) {
    s += "/";
    s += denominator(q).str();
  }
  return s;
}

namespace {

bool parse_int(std::string_view s, BigInt& out) {
  if (s.empty()) return false;
  size_t i = 0;
  if (s[0] == '-' || s[0] == '+') i = 1;
  if (i == s.size()) return false;
  for (size_t k = i; k < s.size(); ++k)
    if (!std::isdigit(static_cast<unsigned char>(s[k]))) return false;
  out = BigInt(std::string(s));
  return true;
}

}  // namespace

std::optional<Rational> parse_rational(std::string_view s) {
  auto slash = s.find('/');
  BigInt num, den = 1;
  if (slash == std::string_view::npos) {
    if (!parse_int(s, num)) return std::nullopt;
  } else {
    if (!parse_int(s.substr(0, slash), num)) return std::nullopt;
    if (!parse_int(s.substr(slash + 1), den)) return std::nullopt;
    if (den == 0) return std::nullopt;
  }
  return Rational(num, den);
}

int max_carrier_dim() {
  static const int cap = [] {
    if (const char* env = std::getenv("NCJET_MAX_DIM")) {
      int v = std::atoi(env);
      if (v > 0) return v;
    }
    return 4096;
  }();
  return cap;
}

}  // namespace ncjet
