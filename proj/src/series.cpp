#include "cdga/series.hpp"

#include "cdga/rational.hpp"

#include <algorithm>

namespace cdga {

namespace {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw Error("series coefficient overflow");
  return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw Error("series coefficient overflow");
  return r;
}

}  // namespace

BigradedSeries::BigradedSeries(int truncation, char variable)
    : truncation_(truncation), variable_(variable), c_(static_cast<std::size_t>(std::max(truncation, 0) + 1), 0) {
  if (truncation < 0) throw Error("series truncation must be nonnegative");
}

BigradedSeries BigradedSeries::one(int truncation, char variable) { return monomial(0, 1, truncation, variable); }

BigradedSeries BigradedSeries::monomial(int exponent, std::int64_t coeff, int truncation, char variable) {
  BigradedSeries s(truncation, variable);
  if (exponent < 0) throw Error("negative exponent");
  if (exponent <= truncation) s.c_[static_cast<std::size_t>(exponent)] = coeff;
  return s;
}

BigradedSeries BigradedSeries::from_coefficients(std::vector<std::int64_t> coeffs, int truncation, char variable) {
  BigradedSeries s(truncation, variable);
  for (std::size_t i = 0; i < coeffs.size() && i <= static_cast<std::size_t>(truncation); ++i) s.c_[i] = coeffs[i];
  return s;
}

std::int64_t BigradedSeries::operator[](int e) const {
  if (e < 0 || e > truncation_) return 0;
  return c_[static_cast<std::size_t>(e)];
}

void BigradedSeries::set(int e, std::int64_t v) {
  if (e < 0 || e > truncation_) throw Error("exponent outside the truncation range");
  c_[static_cast<std::size_t>(e)] = v;
}

void BigradedSeries::add(int e, std::int64_t v) {
  if (e < 0) throw Error("negative exponent");
  if (e > truncation_) return;
  c_[static_cast<std::size_t>(e)] = checked_add(c_[static_cast<std::size_t>(e)], v);
}

bool BigradedSeries::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](std::int64_t v) { return v == 0; });
}

void BigradedSeries::check_compatible(const BigradedSeries& o) const {
  if (variable_ != o.variable_) throw Error("series in different variables");
}

BigradedSeries& BigradedSeries::operator+=(const BigradedSeries& o) {
  check_compatible(o);
  if (o.truncation_ < truncation_) *this = truncated(o.truncation_);
  for (int e = 0; e <= truncation_; ++e) add(e, o[e]);
  return *this;
}

BigradedSeries& BigradedSeries::operator-=(const BigradedSeries& o) { return *this += o * -1; }

BigradedSeries operator*(const BigradedSeries& a, const BigradedSeries& b) {
  a.check_compatible(b);
  BigradedSeries out(std::min(a.truncation_, b.truncation_), a.variable_);
  for (int i = 0; i <= out.truncation_; ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; i + j <= out.truncation_; ++j)
      if (b[j] != 0) out.add(i + j, checked_mul(a[i], b[j]));
  }
  return out;
}

BigradedSeries BigradedSeries::operator*(std::int64_t s) const {
  BigradedSeries out = *this;
  for (auto& v : out.c_) v = checked_mul(v, s);
  return out;
}

BigradedSeries BigradedSeries::reciprocal() const {
  const std::int64_t a0 = c_[0];
  if (a0 != 1 && a0 != -1) throw Error("reciprocal needs constant term +-1");
  BigradedSeries inv(truncation_, variable_);
  inv.c_[0] = a0;  // 1/a0 == a0
  for (int n = 1; n <= truncation_; ++n) {
    std::int64_t acc = 0;
    for (int k = 1; k <= n; ++k) acc = checked_add(acc, checked_mul(c_[static_cast<std::size_t>(k)], inv[n - k]));
    inv.c_[static_cast<std::size_t>(n)] = checked_mul(-acc, a0);
  }
  return inv;
}

BigradedSeries BigradedSeries::pow(int k) const {
  if (k < 0) return reciprocal().pow(-k);
  BigradedSeries result = one(truncation_, variable_), base = *this;
  while (k > 0) {
    if (k & 1) result = result * base;
    base = base * base;
    k >>= 1;
  }
  return result;
}

BigradedSeries BigradedSeries::truncated(int truncation) const {
  BigradedSeries s(truncation, variable_);
  for (int e = 0; e <= truncation; ++e) s.c_[static_cast<std::size_t>(e)] = (*this)[e];
  return s;
}

std::string BigradedSeries::to_string() const {
  std::string s;
  for (int e = 0; e <= truncation_; ++e) {
    const std::int64_t v = c_[static_cast<std::size_t>(e)];
    if (v == 0) continue;
    const std::int64_t mag = v < 0 ? -v : v;
    if (s.empty())
      s += v < 0 ? "-" : "";
    else
      s += v < 0 ? " - " : " + ";
    if (mag != 1 || e == 0) s += std::to_string(mag);
    if (e > 0) {
      s += variable_;
      if (e > 1) s += "^" + std::to_string(e);
    }
  }
  if (s.empty()) s = "0";
  return s + " + O(" + std::string(1, variable_) + "^" + std::to_string(truncation_ + 1) + ")";
}

}  // namespace cdga
