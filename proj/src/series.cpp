#include "sgb/series.hpp"

#include <algorithm>
#include <charconv>
#include <functional>
#include <numeric>
#include <string>

#include "sgb/error.hpp"

namespace sgb {

namespace intpoly {

void trim(IntPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

int degree(const IntPoly& p) {
  for (std::size_t i = p.size(); i-- > 0;)
    if (p[i] != 0) return static_cast<int>(i);
  return -1;
}

IntPoly add(const IntPoly& a, const IntPoly& b) {
  IntPoly r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  trim(r);
  return r;
}

IntPoly sub(const IntPoly& a, const IntPoly& b) {
  IntPoly r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  trim(r);
  return r;
}

IntPoly mul(const IntPoly& a, const IntPoly& b) {
  if (a.empty() || b.empty()) return {};
  IntPoly r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  trim(r);
  return r;
}

IntPoly shift(const IntPoly& a, std::size_t k) {
  if (a.empty()) return {};
  IntPoly r(k, 0);
  r.insert(r.end(), a.begin(), a.end());
  return r;
}

BigInt eval_at_one(const IntPoly& p) {
  BigInt s = 0;
  for (const auto& c : p) s += c;
  return s;
}

IntPoly one_minus_z_pow(std::size_t k) {
  IntPoly r{1};
  for (std::size_t i = 0; i < k; ++i) r = mul(r, IntPoly{1, -1});
  return r;
}

std::optional<IntPoly> divide_by_one_minus_z(const IntPoly& p, std::size_t k) {
  IntPoly q = p;
  trim(q);
  for (std::size_t step = 0; step < k; ++step) {
    if (q.empty()) return q;
    // synthetic division by (1 - z): remainder is p(1)
    if (eval_at_one(q) != 0) return std::nullopt;
    IntPoly next(q.size() - 1);
    BigInt running = 0;
    for (std::size_t i = 0; i + 1 < q.size(); ++i) {
      running += q[i];
      next[i] = running;
    }
    trim(next);
    q = std::move(next);
  }
  return q;
}

}  // namespace intpoly

TruncSeries TruncSeries::rational(const IntPoly& numerator, std::size_t k, std::size_t cap) {
  std::vector<BigInt> c(cap, 0);
  for (std::size_t i = 0; i < std::min(cap, numerator.size()); ++i) c[i] = numerator[i];
  // dividing by (1 - z) is a running sum
  for (std::size_t step = 0; step < k; ++step)
    for (std::size_t i = 1; i < cap; ++i) c[i] += c[i - 1];
  return TruncSeries(std::move(c));
}

TruncSeries TruncSeries::truncated(std::size_t cap) const {
  std::vector<BigInt> c(coeffs_.begin(), coeffs_.begin() + std::min(cap, coeffs_.size()));
  return TruncSeries(std::move(c));
}

TruncSeries TruncSeries::operator+(const TruncSeries& o) const {
  std::size_t cap = std::min(this->cap(), o.cap());
  std::vector<BigInt> c(cap);
  for (std::size_t i = 0; i < cap; ++i) c[i] = coeffs_[i] + o.coeffs_[i];
  return TruncSeries(std::move(c));
}

TruncSeries TruncSeries::operator-(const TruncSeries& o) const {
  std::size_t cap = std::min(this->cap(), o.cap());
  std::vector<BigInt> c(cap);
  for (std::size_t i = 0; i < cap; ++i) c[i] = coeffs_[i] - o.coeffs_[i];
  return TruncSeries(std::move(c));
}

TruncSeries TruncSeries::operator*(const TruncSeries& o) const {
  std::size_t cap = std::min(this->cap(), o.cap());
  std::vector<BigInt> c(cap, 0);
  for (std::size_t i = 0; i < cap; ++i) {
    if (coeffs_[i] == 0) continue;
    for (std::size_t j = 0; i + j < cap; ++j) c[i + j] += coeffs_[i] * o.coeffs_[j];
  }
  return TruncSeries(std::move(c));
}

IntPoly froberg_numerator(std::span<const int> degrees) {
  IntPoly p{1};
  for (int d : degrees) {
    if (d < 1) throw Error(ErrorKind::InvalidDegree, "degree " + std::to_string(d) + " < 1");
    IntPoly factor(static_cast<std::size_t>(d) + 1, 0);
    factor[0] = 1;
    factor[d] = -1;
    p = intpoly::mul(p, factor);
  }
  return p;
}

BigInt binomial(unsigned top, unsigned bottom) {
  if (bottom > top) return 0;
  bottom = std::min(bottom, top - bottom);
  BigInt r = 1;
  for (unsigned i = 1; i <= bottom; ++i) {
    r *= top - bottom + i;
    r /= i;
  }
  return r;
}

TruncSeries froberg_series(int n, std::span<const int> degrees, std::size_t cap) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "need n >= 1");
  if (cap < 1) throw Error(ErrorKind::InvalidArgument, "need cap >= 1");
  IntPoly num = froberg_numerator(degrees);
  // (1 - z)^{-n} = sum_k C(n-1+k, k) z^k
  std::vector<BigInt> inv(cap);
  for (std::size_t k = 0; k < cap; ++k)
    inv[k] = binomial(static_cast<unsigned>(n - 1 + k), static_cast<unsigned>(k));
  std::vector<BigInt> c(cap, 0);
  for (std::size_t i = 0; i < std::min(cap, num.size()); ++i) {
    if (num[i] == 0) continue;
    for (std::size_t k = 0; i + k < cap; ++k) c[i + k] += num[i] * inv[k];
  }
  return TruncSeries(std::move(c));
}

IntPoly positive_truncate(const TruncSeries& s) {
  if (s.cap() == 0 || s[0] <= 0)
    throw Error(ErrorKind::InvalidArgument, "positive truncation needs c_0 > 0");
  for (std::size_t i = 1; i < s.cap(); ++i) {
    if (s[i] <= 0) return IntPoly(s.coeffs().begin(), s.coeffs().begin() + i);
  }
  throw Error(ErrorKind::CapExhausted,
              "all coefficients below z^" + std::to_string(s.cap()) + " are positive");
}

int degree_bound_Dnm(int n, int m, std::span<const int> degrees) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "need n >= 1");
  if (static_cast<int>(degrees.size()) != m)
    throw Error(ErrorKind::InvalidArgument, "degree list length differs from m");
  for (int d : degrees)
    if (d < 1) throw Error(ErrorKind::InvalidDegree, "degree " + std::to_string(d) + " < 1");
  if (m == n - 1) {
    int s = 1;
    for (int d : degrees) s += d - 1;
    return s;
  }
  if (m < n - 1)
    throw Error(ErrorKind::UndefinedBound,
                "D^(n,m) is only defined for m >= n - 1 (n=" + std::to_string(n) +
                    ", m=" + std::to_string(m) + ")");
  std::size_t cap = 2;
  for (int d : degrees) cap += static_cast<std::size_t>(d - 1);
  for (;;) {
    try {
      IntPoly head = positive_truncate(froberg_series(n, degrees, cap));
      return intpoly::degree(head) + 1;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::CapExhausted) throw;
      cap *= 2;
    }
  }
}

int lazard_bound(int n, int m, std::span<const int> degrees) {
  if (m < 1 || static_cast<int>(degrees.size()) != m)
    throw Error(ErrorKind::InvalidArgument, "lazard bound needs m >= 1 degrees");
  std::vector<int> sorted(degrees.begin(), degrees.end());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  int l = std::min(m, n);
  int s = 1;
  for (int j = 0; j < l; ++j) {
    if (sorted[j] < 1) throw Error(ErrorKind::InvalidDegree, "degree < 1");
    s += sorted[j] - 1;
  }
  return s;
}

CostEstimate complexity_estimate(int n, int m, int D, double omega) {
  if (!(omega >= 2.0 && omega < 3.0))
    throw Error(ErrorKind::OmegaOutOfRange, "omega must lie in [2, 3)");
  if (D < 1) throw Error(ErrorKind::InvalidArgument, "need D >= 1");
  if (n < 1 || m < 1) throw Error(ErrorKind::InvalidArgument, "need n, m >= 1");
  ExtFloat cols(binomial(static_cast<unsigned>(n + D - 1), static_cast<unsigned>(D)));
  // shortest round-trip decimal, so 2.807 means exactly 2.807 at 50 digits
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, omega);
  ExtFloat w(std::string(buf, res.ptr));
  ExtFloat power = boost::multiprecision::pow(cols, w);
  CostEstimate c;
  c.cost_new = ExtFloat(m) * power;
  c.cost_classic = c.cost_new * ExtFloat(D);
  return c;
}

BoundReport bound_report(int n, std::span<const int> degrees, double omega) {
  BoundReport r;
  r.n = n;
  r.m = static_cast<int>(degrees.size());
  r.degrees.assign(degrees.begin(), degrees.end());
  r.omega = omega;
  r.lazard = lazard_bound(n, r.m, degrees);
  if (r.m >= n - 1) r.D_nm = degree_bound_Dnm(n, r.m, degrees);
  r.D_used = r.D_nm.value_or(r.lazard);
  auto cost = complexity_estimate(n, r.m, r.D_used, omega);
  r.cost_new = cost.cost_new;
  r.cost_classic = cost.cost_classic;
  return r;
}

}  // namespace sgb
