#include "sgb/hilbert.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "sgb/error.hpp"

namespace sgb {

namespace {

std::vector<Monomial> minimal_generators(std::vector<Monomial> gens) {
  // sort by degree so a divisor always precedes its multiples
  std::sort(gens.begin(), gens.end(), [](const Monomial& a, const Monomial& b) {
    return drl_compare_unchecked(a, b) < 0;
  });
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  std::vector<Monomial> kept;
  for (auto& g : gens) {
    bool redundant = std::any_of(kept.begin(), kept.end(),
                                 [&](const Monomial& k) { return k.divides(g); });
    if (!redundant) kept.push_back(std::move(g));
  }
  std::sort(kept.begin(), kept.end(), DrlGreater{});
  return kept;
}

bool pairwise_coprime(const std::vector<Monomial>& gens, std::size_t n) {
  std::vector<bool> used(n, false);
  for (const auto& g : gens) {
    for (std::size_t i = 0; i < n; ++i) {
      if (g[i] == 0) continue;
      if (used[i]) return false;
      used[i] = true;
    }
  }
  return true;
}

IntPoly numerator_rec(std::vector<Monomial> gens, std::size_t n) {
  if (gens.empty()) return IntPoly{1};
  for (const auto& g : gens)
    if (g.is_one()) return IntPoly{};
  if (pairwise_coprime(gens, n)) {
    IntPoly p{1};
    for (const auto& g : gens) {
      IntPoly factor(g.degree() + 1, 0);
      factor[0] = 1;
      factor[g.degree()] = -1;
      p = intpoly::mul(p, factor);
    }
    return p;
  }
  std::vector<std::size_t> count(n, 0);
  for (const auto& g : gens)
    for (std::size_t i = 0; i < n; ++i)
      if (g[i] > 0) ++count[i];
  std::size_t pivot = static_cast<std::size_t>(
      std::max_element(count.begin(), count.end()) - count.begin());

  // N(J) = N(J + <x>) + z * N(J : x)
  Monomial x = Monomial::variable(n, pivot);
  std::vector<Monomial> with_var{x};
  std::vector<Monomial> quotient;
  for (const auto& g : gens) {
    if (g[pivot] == 0) with_var.push_back(g);
    quotient.push_back(g[pivot] > 0 ? g / x : g);
  }
  IntPoly a = numerator_rec(minimal_generators(std::move(with_var)), n);
  IntPoly b = numerator_rec(minimal_generators(std::move(quotient)), n);
  return intpoly::add(a, intpoly::shift(b, 1));
}

}  // namespace

MonomialIdeal::MonomialIdeal(std::size_t nvars, std::vector<Monomial> gens) : nvars_(nvars) {
  for (const auto& g : gens)
    if (g.nvars() != nvars)
      throw Error(ErrorKind::DimensionMismatch, "generator lives in a different ring");
  gens_ = minimal_generators(std::move(gens));
}

bool MonomialIdeal::is_unit() const noexcept {
  return std::any_of(gens_.begin(), gens_.end(), [](const Monomial& g) { return g.is_one(); });
}

bool MonomialIdeal::contains(const Monomial& m) const noexcept {
  return std::any_of(gens_.begin(), gens_.end(), [&](const Monomial& g) { return g.divides(m); });
}

MonomialIdeal minimalize(std::size_t nvars, std::span<const Monomial> gens) {
  return MonomialIdeal(nvars, std::vector<Monomial>(gens.begin(), gens.end()));
}

IntPoly hilbert_numerator(const MonomialIdeal& ideal) {
  return numerator_rec(ideal.generators(), ideal.nvars());
}

int krull_dim(const MonomialIdeal& ideal) {
  if (ideal.is_unit()) throw Error(ErrorKind::UnitIdeal, "the ideal contains 1");
  const std::size_t n = ideal.nvars();
  if (n > 30) throw Error(ErrorKind::InvalidArgument, "too many variables for cover search");
  std::vector<std::uint32_t> supports;
  for (const auto& g : ideal.generators()) {
    std::uint32_t mask = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (g[i] > 0) mask |= 1u << i;
    supports.push_back(mask);
  }
  auto covers = [&](std::uint32_t set) {
    return std::all_of(supports.begin(), supports.end(),
                       [&](std::uint32_t s) { return (s & set) != 0; });
  };
  for (std::size_t k = 0; k <= n; ++k) {
    // enumerate k-subsets of n variables in lexicographic bitmask order
    if (k == 0) {
      if (covers(0)) return static_cast<int>(n);
      continue;
    }
    std::uint32_t set = (1u << k) - 1;
    const std::uint32_t limit = n == 32 ? 0 : (1u << n);
    while (set < limit) {
      if (covers(set)) return static_cast<int>(n - k);
      // Gosper's hack
      std::uint32_t c = set & (~set + 1);
      std::uint32_t r = set + c;
      set = (((r ^ set) >> 2) / c) | r;
    }
  }
  return 0;
}

std::uint64_t hilbert_function(const MonomialIdeal& ideal, int d) {
  if (d < 0) throw Error(ErrorKind::InvalidArgument, "need d >= 0");
  std::uint64_t count = 0;
  for (const auto& m : monomials_of_degree(ideal.nvars(), static_cast<std::uint32_t>(d)))
    if (!ideal.contains(m)) ++count;
  return count;
}

TruncSeries hilbert_series(const MonomialIdeal& ideal, std::size_t cap) {
  return TruncSeries::rational(hilbert_numerator(ideal), ideal.nvars(), cap);
}

HilbertProfile regularity_profile(const MonomialIdeal& ideal) {
  if (ideal.is_unit()) throw Error(ErrorKind::UnitIdeal, "the ideal contains 1");
  const int n = static_cast<int>(ideal.nvars());
  HilbertProfile p;
  p.numerator = hilbert_numerator(ideal);
  p.krull_dim = krull_dim(ideal);
  const int r = p.krull_dim;
  auto h = intpoly::divide_by_one_minus_z(p.numerator, static_cast<std::size_t>(n - r));
  if (!h || h->empty() || intpoly::eval_at_one(*h) == 0)
    throw std::logic_error("Hilbert numerator is inconsistent with the Krull dimension");
  p.h_poly = std::move(*h);
  p.hilb = std::max(0, intpoly::degree(p.h_poly) - r + 1);

  if (r <= 1) {
    // measure the stabilization degree directly from N / (1 - z)^n
    int deg_n = intpoly::degree(p.numerator);
    int bound = std::max(0, deg_n - n + 1);
    TruncSeries hs = TruncSeries::rational(p.numerator, static_cast<std::size_t>(n),
                                           static_cast<std::size_t>(bound) + 1);
    const BigInt& tail = hs[static_cast<std::size_t>(bound)];
    int d0 = bound;
    while (d0 > 0 && hs[static_cast<std::size_t>(d0 - 1)] == tail) --d0;
    if (d0 != p.hilb)
      throw std::logic_error("Hilbert regularity disagrees with the measured stabilization (" +
                             std::to_string(d0) + " vs " + std::to_string(p.hilb) + ")");
    p.gen_d_reg = p.hilb;
    p.hp_constant = tail;
    if (r == 0) p.d_reg = p.hilb;
  }
  return p;
}

}  // namespace sgb
