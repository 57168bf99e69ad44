#include "sgb/field.hpp"

#include <string>

#include "sgb/error.hpp"

namespace sgb {

bool is_prime(std::uint64_t value) {
  if (value < 2) return false;
  if (value % 2 == 0) return value == 2;
  for (std::uint64_t d = 3; d * d <= value; d += 2)
    if (value % d == 0) return false;
  return true;
}

PrimeField::PrimeField(std::uint32_t p) : p_(p) {
  if (p >= (1u << 31) || !is_prime(p))
    throw Error(ErrorKind::BadModulus, "modulus " + std::to_string(p) +
                                           " is not a prime below 2^31");
}

std::uint32_t PrimeField::pow(std::uint32_t base, std::uint64_t exp) const noexcept {
  std::uint32_t result = 1 % p_;
  base %= p_;
  while (exp) {
    if (exp & 1) result = mul(result, base);
    base = mul(base, base);
    exp >>= 1;
  }
  return result;
}

std::uint32_t PrimeField::inv(std::uint32_t a) const {
  a %= p_;
  if (a == 0) throw Error(ErrorKind::ZeroInverse, "inverse of zero");
  // extended Euclid on signed 64-bit values
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = p_, new_r = a;
  while (new_r != 0) {
    std::int64_t q = r / new_r;
    std::int64_t tmp = t - q * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - q * new_r;
    r = new_r;
    new_r = tmp;
  }
  return reduce(t);
}

FieldElem FieldElem::operator+(const FieldElem& o) const {
  return FieldElem(field_, field_.add(value_, o.value_));
}
FieldElem FieldElem::operator-(const FieldElem& o) const {
  return FieldElem(field_, field_.sub(value_, o.value_));
}
FieldElem FieldElem::operator*(const FieldElem& o) const {
  return FieldElem(field_, field_.mul(value_, o.value_));
}
FieldElem FieldElem::operator/(const FieldElem& o) const { return *this * fp_inv(o); }
FieldElem FieldElem::operator-() const { return FieldElem(field_, field_.neg(value_)); }

FieldElem fp_inv(const FieldElem& a) {
  return FieldElem(a.field(), a.field().inv(a.value()));
}

std::ostream& operator<<(std::ostream& os, const FieldElem& a) { return os << a.value(); }

}  // namespace sgb
