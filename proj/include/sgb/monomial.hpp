#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <vector>

namespace sgb {

/// A power product x_1^e_1 ... x_n^e_n. Variables are indexed 0..n-1
/// internally; externally they are x1..xn.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::size_t nvars) : exps_(nvars, 0) {}
  explicit Monomial(std::vector<std::uint32_t> exps);
  Monomial(std::initializer_list<std::uint32_t> exps)
      : Monomial(std::vector<std::uint32_t>(exps)) {}

  static Monomial variable(std::size_t nvars, std::size_t index, std::uint32_t power = 1);

  std::size_t nvars() const noexcept { return exps_.size(); }
  std::uint32_t degree() const noexcept { return degree_; }
  std::uint32_t operator[](std::size_t i) const noexcept { return exps_[i]; }
  std::span<const std::uint32_t> exponents() const noexcept { return exps_; }
  bool is_one() const noexcept { return degree_ == 0; }

  /// True iff this monomial divides `other`.
  bool divides(const Monomial& other) const noexcept;
  /// Index of the single variable when this is a pure power x_i^e (e >= 1).
  std::ptrdiff_t pure_power_variable() const noexcept;

  Monomial operator*(const Monomial& other) const;
  /// Exact quotient; the caller guarantees divisibility.
  Monomial operator/(const Monomial& other) const;

  friend bool operator==(const Monomial& a, const Monomial& b) noexcept {
    return a.exps_ == b.exps_;
  }

 private:
  std::vector<std::uint32_t> exps_;
  std::uint32_t degree_ = 0;
};

Monomial lcm(const Monomial& a, const Monomial& b);
Monomial gcd(const Monomial& a, const Monomial& b);

/// Graded reverse lexicographic comparison with x1 > x2 > ... > xn.
/// Throws ErrorKind::DimensionMismatch when the variable counts differ.
std::strong_ordering drl_compare(const Monomial& a, const Monomial& b);

/// Same order without the dimension check, for hot loops.
std::strong_ordering drl_compare_unchecked(const Monomial& a, const Monomial& b) noexcept;

struct DrlGreater {
  bool operator()(const Monomial& a, const Monomial& b) const noexcept {
    return drl_compare_unchecked(a, b) > 0;
  }
};

/// All monomials of degree d in n variables, strictly DRL-descending:
/// x1^d first, xn^d last.
std::vector<Monomial> monomials_of_degree(std::size_t n, std::uint32_t d);

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const noexcept;
};

}  // namespace sgb
