#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>
#include <string_view>

namespace ncjet {

/// Exact rational scalar. Canonical form (coprime, positive denominator) is
/// maintained by the backend on every operation.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// Serializes as "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& q);

/// Parses "p", "-p", "p/q". Rejects zero denominators and malformed input.
std::optional<Rational> parse_rational(std::string_view s);

/// Carrier-dimension cap, read once from NCJET_MAX_DIM (default 4096).
int max_carrier_dim();

}  // namespace ncjet
