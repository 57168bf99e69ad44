#include "sgb/monomial.hpp"

#include <algorithm>
#include <numeric>

#include "sgb/error.hpp"

namespace sgb {

Monomial::Monomial(std::vector<std::uint32_t> exps)
    : exps_(std::move(exps)),
      degree_(std::accumulate(exps_.begin(), exps_.end(), std::uint32_t{0})) {}

Monomial Monomial::variable(std::size_t nvars, std::size_t index, std::uint32_t power) {
  std::vector<std::uint32_t> e(nvars, 0);
  e.at(index) = power;
  return Monomial(std::move(e));
}

bool Monomial::divides(const Monomial& other) const noexcept {
  if (degree_ > other.degree_) return false;
  for (std::size_t i = 0; i < exps_.size(); ++i)
    if (exps_[i] > other.exps_[i]) return false;
  return true;
}

std::ptrdiff_t Monomial::pure_power_variable() const noexcept {
  std::ptrdiff_t found = -1;
  for (std::size_t i = 0; i < exps_.size(); ++i) {
    if (exps_[i] == 0) continue;
    if (found >= 0) return -1;
    found = static_cast<std::ptrdiff_t>(i);
  }
  return found;
}

Monomial Monomial::operator*(const Monomial& other) const {
  std::vector<std::uint32_t> e(exps_);
  for (std::size_t i = 0; i < e.size(); ++i) e[i] += other.exps_[i];
  return Monomial(std::move(e));
}

Monomial Monomial::operator/(const Monomial& other) const {
  std::vector<std::uint32_t> e(exps_);
  for (std::size_t i = 0; i < e.size(); ++i) e[i] -= other.exps_[i];
  return Monomial(std::move(e));
}

Monomial lcm(const Monomial& a, const Monomial& b) {
  std::vector<std::uint32_t> e(a.nvars());
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = std::max(a[i], b[i]);
  return Monomial(std::move(e));
}

Monomial gcd(const Monomial& a, const Monomial& b) {
  std::vector<std::uint32_t> e(a.nvars());
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = std::min(a[i], b[i]);
  return Monomial(std::move(e));
}

std::strong_ordering drl_compare_unchecked(const Monomial& a, const Monomial& b) noexcept {
  if (a.degree() != b.degree()) return a.degree() <=> b.degree();
  // the smaller exponent in the last differing variable is the larger monomial
  for (std::size_t i = a.nvars(); i-- > 0;) {
    if (a[i] != b[i]) return b[i] <=> a[i];
  }
  return std::strong_ordering::equal;
}

std::strong_ordering drl_compare(const Monomial& a, const Monomial& b) {
  if (a.nvars() != b.nvars())
    throw Error(ErrorKind::DimensionMismatch, "monomials live in different rings");
  return drl_compare_unchecked(a, b);
}

namespace {

// Fills exponents from the last variable down; ascending exponents of
// x_n, x_{n-1}, ... give DRL-descending output.
void enumerate(std::size_t var, std::uint32_t remaining, std::vector<std::uint32_t>& exps,
               std::vector<Monomial>& out) {
  if (var == 0) {
    exps[0] = remaining;
    out.emplace_back(exps);
    return;
  }
  for (std::uint32_t e = 0; e <= remaining; ++e) {
    exps[var] = e;
    enumerate(var - 1, remaining - e, exps, out);
  }
  exps[var] = 0;
}

}  // namespace

std::vector<Monomial> monomials_of_degree(std::size_t n, std::uint32_t d) {
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "need at least one variable");
  std::vector<Monomial> out;
  std::vector<std::uint32_t> exps(n, 0);
  enumerate(n - 1, d, exps, out);
  return out;
}

std::size_t MonomialHash::operator()(const Monomial& m) const noexcept {
  std::size_t h = 0xcbf29ce484222325ull;
  for (auto e : m.exponents()) {
    h ^= e + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  return h;
}

}  // namespace sgb
