#include "sgb/polynomial.hpp"

#include <algorithm>
#include <unordered_map>

#include "sgb/error.hpp"

namespace sgb {

namespace {

void check_same_ring(const Polynomial& a, const Polynomial& b) {
  if (a.nvars() != b.nvars() || !(a.field() == b.field()))
    throw Error(ErrorKind::DimensionMismatch, "polynomials live in different rings");
}

// Gauss-Jordan on a square matrix; returns the inverse or nothing if singular.
std::optional<std::vector<std::uint32_t>> invert(const PrimeField& f, std::size_t n,
                                                 std::vector<std::uint32_t> a) {
  std::vector<std::uint32_t> inv(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) inv[i * n + i] = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a[piv * n + col] == 0) ++piv;
    if (piv == n) return std::nullopt;
    if (piv != col) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a[piv * n + j], a[col * n + j]);
        std::swap(inv[piv * n + j], inv[col * n + j]);
      }
    }
    std::uint32_t s = f.inv(a[col * n + col]);
    for (std::size_t j = 0; j < n; ++j) {
      a[col * n + j] = f.mul(a[col * n + j], s);
      inv[col * n + j] = f.mul(inv[col * n + j], s);
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r * n + col] == 0) continue;
      std::uint32_t factor = a[r * n + col];
      for (std::size_t j = 0; j < n; ++j) {
        a[r * n + j] = f.sub(a[r * n + j], f.mul(factor, a[col * n + j]));
        inv[r * n + j] = f.sub(inv[r * n + j], f.mul(factor, inv[col * n + j]));
      }
    }
  }
  return inv;
}

}  // namespace

Polynomial Polynomial::from_terms(PrimeField field, std::size_t nvars, std::vector<Term> terms) {
  for (const auto& t : terms)
    if (t.monomial.nvars() != nvars)
      throw Error(ErrorKind::DimensionMismatch, "term has the wrong number of variables");
  std::sort(terms.begin(), terms.end(),
            [](const Term& a, const Term& b) { return DrlGreater{}(a.monomial, b.monomial); });
  Polynomial p(field, nvars);
  for (auto& t : terms) {
    t.coeff %= field.modulus();
    if (!p.terms_.empty() && p.terms_.back().monomial == t.monomial) {
      p.terms_.back().coeff = field.add(p.terms_.back().coeff, t.coeff);
    } else {
      if (!p.terms_.empty() && p.terms_.back().coeff == 0) p.terms_.pop_back();
      p.terms_.push_back(std::move(t));
    }
  }
  if (!p.terms_.empty() && p.terms_.back().coeff == 0) p.terms_.pop_back();
  return p;
}

Polynomial Polynomial::constant(PrimeField field, std::size_t nvars, std::uint32_t c) {
  return monomial(field, Monomial(nvars), c);
}

Polynomial Polynomial::variable(PrimeField field, std::size_t nvars, std::size_t index) {
  return monomial(field, Monomial::variable(nvars, index));
}

Polynomial Polynomial::monomial(PrimeField field, const Monomial& m, std::uint32_t c) {
  Polynomial p(field, m.nvars());
  c %= field.modulus();
  if (c != 0) p.terms_.push_back({m, c});
  return p;
}

const Term& Polynomial::leading_term() const {
  if (terms_.empty()) throw Error(ErrorKind::ZeroPolynomial, "zero polynomial has no leading term");
  return terms_.front();
}

std::uint32_t Polynomial::degree() const { return leading_monomial().degree(); }

bool Polynomial::is_homogeneous() const noexcept {
  for (const auto& t : terms_)
    if (t.monomial.degree() != terms_.front().monomial.degree()) return false;
  return true;
}

bool Polynomial::is_constant() const noexcept {
  return terms_.empty() || (terms_.size() == 1 && terms_.front().monomial.is_one());
}

std::uint32_t Polynomial::coefficient(const Monomial& m) const noexcept {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), m, [](const Term& t, const Monomial& x) {
    return drl_compare_unchecked(t.monomial, x) > 0;
  });
  return (it != terms_.end() && it->monomial == m) ? it->coeff : 0;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  return minus_multiple(o, Monomial(nvars_), field_.neg(1));
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
  return minus_multiple(o, Monomial(nvars_), 1);
}

Polynomial Polynomial::operator-() const { return scaled(field_.neg(1)); }

Polynomial Polynomial::minus_multiple(const Polynomial& g, const Monomial& m,
                                      std::uint32_t c) const {
  check_same_ring(*this, g);
  Polynomial out(field_, nvars_);
  out.terms_.reserve(terms_.size() + g.terms_.size());
  const std::uint32_t negc = field_.neg(c % field_.modulus());
  std::size_t i = 0, j = 0;
  const bool shift = !m.is_one();
  while (i < terms_.size() || j < g.terms_.size()) {
    if (j == g.terms_.size()) {
      out.terms_.push_back(terms_[i++]);
      continue;
    }
    Monomial gm = shift ? g.terms_[j].monomial * m : g.terms_[j].monomial;
    if (i == terms_.size()) {
      std::uint32_t v = field_.mul(negc, g.terms_[j++].coeff);
      if (v) out.terms_.push_back({std::move(gm), v});
      continue;
    }
    auto cmp = drl_compare_unchecked(terms_[i].monomial, gm);
    if (cmp > 0) {
      out.terms_.push_back(terms_[i++]);
    } else if (cmp < 0) {
      std::uint32_t v = field_.mul(negc, g.terms_[j++].coeff);
      if (v) out.terms_.push_back({std::move(gm), v});
    } else {
      std::uint32_t v = field_.add(terms_[i].coeff, field_.mul(negc, g.terms_[j].coeff));
      if (v) out.terms_.push_back({std::move(gm), v});
      ++i;
      ++j;
    }
  }
  return out;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
  check_same_ring(*this, o);
  std::unordered_map<Monomial, std::uint32_t, MonomialHash> acc;
  for (const auto& a : terms_)
    for (const auto& b : o.terms_) {
      auto& slot = acc[a.monomial * b.monomial];
      slot = field_.add(slot, field_.mul(a.coeff, b.coeff));
    }
  std::vector<Term> terms;
  terms.reserve(acc.size());
  for (auto& [m, c] : acc)
    if (c) terms.push_back({m, c});
  return from_terms(field_, nvars_, std::move(terms));
}

Polynomial Polynomial::scaled(std::uint32_t c) const {
  c %= field_.modulus();
  Polynomial out(field_, nvars_);
  if (c == 0) return out;
  out.terms_ = terms_;
  for (auto& t : out.terms_) t.coeff = field_.mul(t.coeff, c);
  return out;
}

Polynomial Polynomial::shifted(const Monomial& m, std::uint32_t c) const {
  Polynomial out = scaled(c);
  for (auto& t : out.terms_) t.monomial = t.monomial * m;
  return out;
}

Polynomial Polynomial::monic() const {
  if (terms_.empty()) return *this;
  return scaled(field_.inv(leading_coeff()));
}

Polynomial Polynomial::pow(std::uint32_t e) const {
  Polynomial result = constant(field_, nvars_, 1);
  Polynomial base = *this;
  while (e) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

std::uint32_t Polynomial::evaluate(std::span<const std::uint32_t> point) const {
  if (point.size() != nvars_)
    throw Error(ErrorKind::DimensionMismatch, "evaluation point has the wrong length");
  std::uint32_t sum = 0;
  for (const auto& t : terms_) {
    std::uint32_t v = t.coeff;
    for (std::size_t i = 0; i < nvars_; ++i)
      if (t.monomial[i]) v = field_.mul(v, field_.pow(point[i], t.monomial[i]));
    sum = field_.add(sum, v);
  }
  return sum;
}

Polynomial Polynomial::specialize_last(std::uint32_t value) const {
  if (nvars_ == 0) throw Error(ErrorKind::DimensionMismatch, "no variable to specialize");
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) {
    auto e = t.monomial.exponents();
    std::vector<std::uint32_t> head(e.begin(), e.end() - 1);
    out.push_back({Monomial(std::move(head)), field_.mul(t.coeff, field_.pow(value, e.back()))});
  }
  return from_terms(field_, nvars_ - 1, std::move(out));
}

Polynomial Polynomial::extended(std::size_t extra) const {
  Polynomial out(field_, nvars_ + extra);
  out.terms_.reserve(terms_.size());
  for (const auto& t : terms_) {
    auto e = t.monomial.exponents();
    std::vector<std::uint32_t> ext(e.begin(), e.end());
    ext.resize(nvars_ + extra, 0);
    out.terms_.push_back({Monomial(std::move(ext)), t.coeff});
  }
  // appending zero exponents keeps the DRL order intact
  return out;
}

PolySystem::PolySystem(PrimeField field, std::size_t nvars, std::vector<Polynomial> polys)
    : field_(field), nvars_(nvars), polys_(std::move(polys)), homogeneous_(true) {
  for (const auto& p : polys_) {
    if (p.nvars() != nvars_ || !(p.field() == field_))
      throw Error(ErrorKind::DimensionMismatch, "system members live in different rings");
    if (!p.is_homogeneous()) homogeneous_ = false;
  }
}

std::vector<int> PolySystem::degrees() const {
  std::vector<int> d;
  d.reserve(polys_.size());
  for (const auto& p : polys_) d.push_back(static_cast<int>(p.degree()));
  return d;
}

PolySystem PolySystem::with(const Polynomial& extra) const {
  auto polys = polys_;
  polys.push_back(extra);
  return PolySystem(field_, nvars_, std::move(polys));
}

LinearChange::LinearChange(PrimeField field, std::size_t n, std::vector<std::uint32_t> row_major,
                           std::string note)
    : field_(field), n_(n), p_(std::move(row_major)), note_(std::move(note)) {
  if (p_.size() != n_ * n_)
    throw Error(ErrorKind::DimensionMismatch, "linear change needs an n x n matrix");
  for (auto& v : p_) v %= field_.modulus();
  if (!invert(field_, n_, p_))
    throw Error(ErrorKind::InvalidArgument, "linear change matrix is singular");
}

LinearChange LinearChange::identity(PrimeField field, std::size_t n) {
  std::vector<std::uint32_t> p(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) p[i * n + i] = 1;
  return LinearChange(field, n, std::move(p), "identity");
}

LinearChange LinearChange::swap(PrimeField field, std::size_t n, std::size_t i, std::size_t j) {
  std::vector<std::uint32_t> p(n * n, 0);
  for (std::size_t k = 0; k < n; ++k) p[k * n + k] = 1;
  if (i != j) {
    p[i * n + i] = p[j * n + j] = 0;
    p[i * n + j] = p[j * n + i] = 1;
  }
  return LinearChange(field, n, std::move(p),
                      "swap x" + std::to_string(i + 1) + " x" + std::to_string(j + 1));
}

LinearChange LinearChange::inverse() const {
  return LinearChange(field_, n_, *invert(field_, n_, p_), "inverse of " + note_);
}

bool LinearChange::is_identity() const noexcept {
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j)
      if (p_[i * n_ + j] != (i == j ? 1u : 0u)) return false;
  return true;
}

LinearChange LinearChange::compose(const LinearChange& outer, const LinearChange& inner) {
  if (outer.n_ != inner.n_ || !(outer.field_ == inner.field_))
    throw Error(ErrorKind::DimensionMismatch, "cannot compose changes of different size");
  const auto& f = outer.field_;
  const std::size_t n = outer.n_;
  std::vector<std::uint32_t> p(n * n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      std::uint32_t a = outer.p_[i * n + k];
      if (!a) continue;
      for (std::size_t j = 0; j < n; ++j)
        p[i * n + j] = f.add(p[i * n + j], f.mul(a, inner.p_[k * n + j]));
    }
  std::string note = outer.note_ + " after " + inner.note_;
  return LinearChange(f, n, std::move(p), std::move(note));
}

Polynomial apply_linear_change(const Polynomial& f, const LinearChange& change) {
  const std::size_t n = f.nvars();
  if (change.size() != n || !(change.field() == f.field()))
    throw Error(ErrorKind::DimensionMismatch, "linear change does not match the ring");
  const auto& field = f.field();
  // x_j -> sum_i P[i][j] x_i
  std::vector<Polynomial> image;
  image.reserve(n);
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<Term> terms;
    for (std::size_t i = 0; i < n; ++i)
      if (change(i, j)) terms.push_back({Monomial::variable(n, i), change(i, j)});
    image.push_back(Polynomial::from_terms(field, n, std::move(terms)));
  }
  std::vector<std::vector<Polynomial>> powers(n);
  auto power_of = [&](std::size_t j, std::uint32_t e) -> const Polynomial& {
    auto& cache = powers[j];
    if (cache.empty()) cache.push_back(Polynomial::constant(field, n, 1));
    while (cache.size() <= e) cache.push_back(cache.back() * image[j]);
    return cache[e];
  };
  Polynomial result(field, n);
  for (const auto& t : f.terms()) {
    Polynomial prod = Polynomial::constant(field, n, t.coeff);
    for (std::size_t j = 0; j < n; ++j)
      if (t.monomial[j]) prod = prod * power_of(j, t.monomial[j]);
    result = result + prod;
  }
  return result;
}

PolySystem apply_linear_change(const PolySystem& system, const LinearChange& change) {
  std::vector<Polynomial> out;
  out.reserve(system.size());
  for (const auto& p : system.polys()) out.push_back(apply_linear_change(p, change));
  return PolySystem(system.field(), system.nvars(), std::move(out));
}

Polynomial homogenize(const Polynomial& f) {
  if (f.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "cannot homogenize the zero polynomial");
  const std::uint32_t d = f.degree();
  std::vector<Term> out;
  out.reserve(f.size());
  for (const auto& t : f.terms()) {
    auto e = t.monomial.exponents();
    std::vector<std::uint32_t> ext(e.begin(), e.end());
    ext.push_back(d - t.monomial.degree());
    out.push_back({Monomial(std::move(ext)), t.coeff});
  }
  return Polynomial::from_terms(f.field(), f.nvars() + 1, std::move(out));
}

Polynomial top_part(const Polynomial& f) {
  if (f.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "zero polynomial has no top part");
  const std::uint32_t d = f.degree();
  std::vector<Term> out;
  for (const auto& t : f.terms())
    if (t.monomial.degree() == d) out.push_back(t);
  return Polynomial::from_terms(f.field(), f.nvars(), std::move(out));
}

}  // namespace sgb
