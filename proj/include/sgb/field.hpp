#pragma once

#include <cstdint>
#include <ostream>

namespace sgb {

bool is_prime(std::uint64_t value);

/// The prime field F_p with 2 <= p < 2^31. Residues are plain uint32 values
/// in [0, p); the field object carries the arithmetic.
class PrimeField {
 public:
  explicit PrimeField(std::uint32_t p);

  std::uint32_t modulus() const noexcept { return p_; }

  std::uint32_t add(std::uint32_t a, std::uint32_t b) const noexcept {
    std::uint32_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const noexcept {
    return a >= b ? a - b : a + p_ - b;
  }
  std::uint32_t neg(std::uint32_t a) const noexcept { return a == 0 ? 0 : p_ - a; }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const noexcept {
    return static_cast<std::uint32_t>(static_cast<std::uint64_t>(a) * b % p_);
  }
  std::uint32_t inv(std::uint32_t a) const;
  std::uint32_t pow(std::uint32_t base, std::uint64_t exp) const noexcept;

  std::uint32_t reduce(std::int64_t value) const noexcept {
    std::int64_t r = value % static_cast<std::int64_t>(p_);
    return static_cast<std::uint32_t>(r < 0 ? r + p_ : r);
  }

  friend bool operator==(const PrimeField&, const PrimeField&) = default;

 private:
  std::uint32_t p_;
};

class FieldElem {
 public:
  FieldElem(PrimeField field, std::int64_t value)
      : field_(field), value_(field.reduce(value)) {}

  std::uint32_t value() const noexcept { return value_; }
  const PrimeField& field() const noexcept { return field_; }

  FieldElem operator+(const FieldElem& o) const;
  FieldElem operator-(const FieldElem& o) const;
  FieldElem operator*(const FieldElem& o) const;
  FieldElem operator/(const FieldElem& o) const;
  FieldElem operator-() const;

  friend bool operator==(const FieldElem&, const FieldElem&) = default;

 private:
  PrimeField field_;
  std::uint32_t value_;
};

/// Multiplicative inverse; throws ErrorKind::ZeroInverse on zero.
FieldElem fp_inv(const FieldElem& a);

std::ostream& operator<<(std::ostream& os, const FieldElem& a);

}  // namespace sgb
