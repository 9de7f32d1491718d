#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace cdga {

// GMP keeps mpq_class canonical (gcd 1, positive denominator) after every
// arithmetic operation, so no explicit normalisation is needed by callers.
using Rational = mpq_class;
using Integer = mpz_class;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses "p", "-p" or "p/q". Throws cdga::Error on malformed input or q = 0.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& q);

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }

/// Residue of q modulo the prime p. Returns false when p divides the denominator.
bool reduce_mod(const Rational& q, std::uint32_t p, std::uint32_t& residue);

}  // namespace cdga
