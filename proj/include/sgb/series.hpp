#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace sgb {

using BigInt = boost::multiprecision::cpp_int;
using ExtFloat = boost::multiprecision::cpp_bin_float_50;

/// Integer polynomial in z, coefficient of z^i at index i, trailing zeros
/// trimmed (the zero polynomial is empty).
using IntPoly = std::vector<BigInt>;

namespace intpoly {

void trim(IntPoly& p);
int degree(const IntPoly& p);  // -1 for zero
IntPoly add(const IntPoly& a, const IntPoly& b);
IntPoly sub(const IntPoly& a, const IntPoly& b);
IntPoly mul(const IntPoly& a, const IntPoly& b);
IntPoly shift(const IntPoly& a, std::size_t k);  // z^k * a
BigInt eval_at_one(const IntPoly& p);
/// (1 - z)^k
IntPoly one_minus_z_pow(std::size_t k);
/// Exact quotient by (1 - z)^k, or nothing if it does not divide.
std::optional<IntPoly> divide_by_one_minus_z(const IntPoly& p, std::size_t k);

}  // namespace intpoly

/// Power series c_0 + c_1 z + ... known modulo z^cap.
class TruncSeries {
 public:
  explicit TruncSeries(std::vector<BigInt> coeffs) : coeffs_(std::move(coeffs)) {}

  /// p(z) / (1 - z)^k expanded modulo z^cap.
  static TruncSeries rational(const IntPoly& numerator, std::size_t k, std::size_t cap);

  std::size_t cap() const noexcept { return coeffs_.size(); }
  const BigInt& operator[](std::size_t i) const { return coeffs_.at(i); }
  const std::vector<BigInt>& coeffs() const noexcept { return coeffs_; }

  TruncSeries truncated(std::size_t cap) const;
  TruncSeries operator+(const TruncSeries& o) const;
  TruncSeries operator-(const TruncSeries& o) const;
  TruncSeries operator*(const TruncSeries& o) const;

  friend bool operator==(const TruncSeries&, const TruncSeries&) = default;

 private:
  std::vector<BigInt> coeffs_;
};

/// prod_j (1 - z^{d_j}) as an exact polynomial.
IntPoly froberg_numerator(std::span<const int> degrees);

/// prod_j (1 - z^{d_j}) / (1 - z)^n modulo z^cap.
TruncSeries froberg_series(int n, std::span<const int> degrees, std::size_t cap);

/// The longest all-positive prefix c_0..c_k of `s`, as a polynomial of
/// degree k. Throws ErrorKind::CapExhausted if no non-positive coefficient
/// appears before the cap.
IntPoly positive_truncate(const TruncSeries& s);

/// D^(n,m): degree of the positive truncation plus one for m >= n, the sum
/// of (d_i - 1) plus one for m = n - 1. UndefinedBound otherwise.
int degree_bound_Dnm(int n, int m, std::span<const int> degrees);

/// Macaulay bound over the min(m, n) largest degrees.
int lazard_bound(int n, int m, std::span<const int> degrees);

BigInt binomial(unsigned top, unsigned bottom);

struct CostEstimate {
  ExtFloat cost_new;      // m * C(n+D-1, D)^omega
  ExtFloat cost_classic;  // m * D * C(n+D-1, D)^omega
};

inline constexpr double kDefaultOmega = 2.807;

CostEstimate complexity_estimate(int n, int m, int D, double omega);

struct BoundReport {
  int n = 0;
  int m = 0;
  std::vector<int> degrees;
  std::optional<int> D_nm;  // nullopt: undefined for m < n - 1
  int lazard = 0;
  int D_used = 0;  // D_nm when defined, else lazard
  ExtFloat cost_new;
  ExtFloat cost_classic;
  double omega = kDefaultOmega;
};

BoundReport bound_report(int n, std::span<const int> degrees, double omega = kDefaultOmega);

}  // namespace sgb
