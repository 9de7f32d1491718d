#pragma once

// Truncated power series with integer coefficients in one variable.

#include <cstdint>
#include <string>
#include <vector>

namespace cdga {

class BigradedSeries {
 public:
  BigradedSeries() = default;
  BigradedSeries(int truncation, char variable);

  static BigradedSeries one(int truncation, char variable);
  /// coeff * variable^exponent (zero if exponent exceeds the truncation).
  static BigradedSeries monomial(int exponent, std::int64_t coeff, int truncation, char variable);
  static BigradedSeries from_coefficients(std::vector<std::int64_t> coeffs, int truncation, char variable);

  int truncation() const { return truncation_; }
  char variable() const { return variable_; }
  std::int64_t operator[](int e) const;
  void set(int e, std::int64_t v);
  void add(int e, std::int64_t v);
  /// Coefficients 0..truncation.
  const std::vector<std::int64_t>& coefficients() const { return c_; }
  bool is_zero() const;

  BigradedSeries& operator+=(const BigradedSeries& o);
  BigradedSeries& operator-=(const BigradedSeries& o);
  friend BigradedSeries operator+(BigradedSeries a, const BigradedSeries& b) { return a += b; }
  friend BigradedSeries operator-(BigradedSeries a, const BigradedSeries& b) { return a -= b; }
  friend BigradedSeries operator*(const BigradedSeries& a, const BigradedSeries& b);
  BigradedSeries operator*(std::int64_t s) const;

  /// Requires constant term ±1.
  BigradedSeries reciprocal() const;
  /// Negative k uses the reciprocal.
  BigradedSeries pow(int k) const;
  BigradedSeries truncated(int truncation) const;

  friend bool operator==(const BigradedSeries&, const BigradedSeries&) = default;

  std::string to_string() const;

 private:
  void check_compatible(const BigradedSeries& o) const;

  int truncation_ = 0;
  char variable_ = 't';
  std::vector<std::int64_t> c_{0};
};

}  // namespace cdga
