#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace hc {

// Exact rational. mpq_class keeps values canonical (reduced, positive
// denominator) as long as results come from its arithmetic operators.
using Scalar = mpq_class;
using Integer = mpz_class;

// Accepts "p" or "p/q" with an optional sign; q must be positive.
Scalar parse_scalar(std::string_view text);
std::string to_string(const Scalar& s);

inline Scalar make_scalar(long num, long den = 1) {
  Scalar s(num, den);
  s.canonicalize();
  return s;
}

}  // namespace hc
