#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>

#include <boost/multiprecision/gmp.hpp>

namespace mvapx {

/// Exact rational scalar. GMP keeps it canonical (lowest terms, positive
/// denominator) after every operation.
using Rational = boost::multiprecision::mpq_rational;
using BigInt = boost::multiprecision::mpz_int;

/// Serializes as "p/q" even when q == 1.
std::string to_string(const Rational& q);

/// Accepts "p", "p/q" and a leading sign. Throws Error(kInvalidInput).
Rational parse_rational(std::string_view text);

/// Largest integer not above q. Throws if it does not fit in 64 bits.
std::int64_t floor_to_int64(const Rational& q);

bool is_integer(const Rational& q);

double to_double(const Rational& q);

/// Dot product of rational costs with an integer vector.
Rational weighted_sum(std::span<const Rational> weights,
                      std::span<const std::int64_t> values);

}  // namespace mvapx
