#include "sgb/analysis.hpp"

#include <algorithm>
#include <numeric>

#include "sgb/error.hpp"

namespace sgb {

IdealHilbert exact_hilbert_of_ideal(const PolySystem& system) {
  if (!system.homogeneous())
    throw Error(ErrorKind::NotHomogeneous, "Hilbert data needs homogeneous input");
  auto gb = buchberger(system);
  for (const auto& g : gb.elements)
    if (g.is_constant()) throw Error(ErrorKind::UnitIdeal, "the ideal contains a unit");
  auto lm = gb.leading_ideal();
  auto profile = regularity_profile(lm);
  return {std::move(gb), std::move(lm), std::move(profile)};
}

namespace {

int max_degree(const std::vector<int>& degrees) {
  return degrees.empty() ? 0 : *std::max_element(degrees.begin(), degrees.end());
}

struct Defect {
  std::optional<int> degree;
  bool hs_larger = true;
};

// The series N / (1-z)^n first differs from the Froberg series exactly where
// the numerators first differ, with the same sign.
Defect first_defect(const IntPoly& numerator, const std::vector<int>& degrees) {
  IntPoly diff = intpoly::sub(numerator, froberg_numerator(degrees));
  for (std::size_t i = 0; i < diff.size(); ++i)
    if (diff[i] != 0) return {static_cast<int>(i), diff[i] > 0};
  return {};
}

bool regular_below(const Defect& defect, int d) {
  return !defect.degree || *defect.degree >= d;
}

Polynomial variable_form(const PrimeField& f, std::size_t n, std::size_t index) {
  return Polynomial::variable(f, n, index);
}

}  // namespace

bool certify_d_regular(const PolySystem& system, int d) {
  auto degrees = system.degrees();
  if (d < max_degree(degrees))
    throw Error(ErrorKind::DegreeTooSmall,
                "d-regularity needs d >= every generator degree");
  auto ih = exact_hilbert_of_ideal(system);
  return regular_below(first_defect(ih.profile.numerator, degrees), d);
}

CertificationReport certify_semiregular(const HilbertProfile& profile, std::size_t,
                                        const std::vector<int>& degrees) {
  CertificationReport rep;
  Defect defect = first_defect(profile.numerator, degrees);
  rep.first_defect_degree = defect.degree;
  rep.lex_dominates = defect.hs_larger;
  const int top = max_degree(degrees);
  // d-regularity is only defined from the largest generator degree on
  if (profile.krull_dim == 0) {
    rep.d_checked = std::max(*profile.d_reg, top);
    rep.cryptographic = regular_below(defect, rep.d_checked);
    rep.generalized = rep.cryptographic;
  } else if (profile.krull_dim == 1) {
    rep.d_checked = std::max(*profile.gen_d_reg, top);
    rep.generalized = regular_below(defect, rep.d_checked);
  } else {
    rep.d_checked = std::max(profile.hilb, top);
  }
  rep.is_d_regular = regular_below(defect, rep.d_checked);
  return rep;
}

CertificationReport certify_semiregular(const PolySystem& system) {
  auto ih = exact_hilbert_of_ideal(system);
  return certify_semiregular(ih.profile, system.nvars(), system.degrees());
}

bool is_regular_sequence(const PolySystem& system) {
  if (system.size() > system.nvars()) return false;
  auto ih = exact_hilbert_of_ideal(system);
  return ih.profile.krull_dim == static_cast<int>(system.nvars() - system.size());
}

bool check_noether_position(const MonomialIdeal& lm, int r) {
  const int n = static_cast<int>(lm.nvars());
  for (int i = 0; i < n - r; ++i) {
    bool found = std::any_of(lm.generators().begin(), lm.generators().end(),
                             [&](const Monomial& g) { return g.pure_power_variable() == i; });
    if (!found) return false;
  }
  return true;
}

bool check_weakly_revlex(const MonomialIdeal& lm) {
  for (const auto& g : lm.generators()) {
    for (const auto& t : monomials_of_degree(lm.nvars(), g.degree())) {
      if (t == g) break;  // everything after is smaller
      if (!lm.contains(t)) return false;
    }
  }
  return true;
}

LinearChange build_sigma(const Polynomial& ell) {
  if (ell.is_zero()) throw Error(ErrorKind::ZeroForm, "the zero form has no pivot");
  for (const auto& t : ell.terms())
    if (t.monomial.degree() != 1) throw Error(ErrorKind::NotLinear, "not a linear form");
  const auto& f = ell.field();
  const std::size_t n = ell.nvars();
  std::vector<std::uint32_t> coeff(n, 0);
  for (const auto& t : ell.terms())
    coeff[static_cast<std::size_t>(t.monomial.pure_power_variable())] = t.coeff;
  std::size_t k = n - 1;
  while (coeff[k] == 0) --k;
  const std::uint32_t scale = f.inv(coeff[k]);
  for (auto& c : coeff) c = f.mul(c, scale);

  auto perm = k == n - 1 ? LinearChange::identity(f, n) : LinearChange::swap(f, n, k, n - 1);
  // after the swap: x_n carries 1 and the old x_n coefficient (zero) sits at k
  std::swap(coeff[k], coeff[n - 1]);
  std::vector<std::uint32_t> shear(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) shear[i * n + i] = 1;
  for (std::size_t i = 0; i + 1 < n; ++i) shear[i * n + (n - 1)] = f.neg(coeff[i]);
  LinearChange shear_change(f, n, std::move(shear), "shear");
  auto sigma = LinearChange::compose(shear_change, perm);
  std::string note = "pivot x" + std::to_string(k + 1);
  if (k != n - 1) note += " swapped with x" + std::to_string(n);
  note += ", shear";
  std::vector<std::uint32_t> entries(sigma.entries().begin(), sigma.entries().end());
  return LinearChange(f, n, std::move(entries), std::move(note));
}

bool is_artinian_with(const PolySystem& system, const Polynomial& ell) {
  auto gb = buchberger(system.with(ell));
  for (const auto& g : gb.elements)
    if (g.is_constant()) return true;
  return krull_dim(gb.leading_ideal()) == 0;
}

namespace {

Polynomial normalize_at_pivot(const Polynomial& ell) {
  const auto& f = ell.field();
  std::size_t best = 0;
  std::uint32_t c = 0;
  for (const auto& t : ell.terms()) {
    auto v = static_cast<std::size_t>(t.monomial.pure_power_variable());
    if (c == 0 || v > best) {
      best = v;
      c = t.coeff;
    }
  }
  return ell.scaled(f.inv(c));
}

PositionChange make_position(const Polynomial& ell, std::size_t attempts) {
  Polynomial normalized = normalize_at_pivot(ell);
  std::size_t pivot = 0;
  for (const auto& t : normalized.terms())
    pivot = std::max(pivot, static_cast<std::size_t>(t.monomial.pure_power_variable()));
  return PositionChange{normalized, pivot, build_sigma(normalized), attempts};
}

PositionChange find_linear_form_known(const PolySystem& system, int r, std::uint64_t seed,
                                      std::size_t max_attempts) {
  const auto& f = system.field();
  const std::size_t n = system.nvars();
  if (r >= 2)
    throw Error(ErrorKind::DimensionTooHigh,
                "Krull dimension " + std::to_string(r) + " leaves infinitely many zeros");
  if (max_attempts == 0) throw Error(ErrorKind::SearchExhausted, "no attempts allowed");
  // with no projective zeros every form qualifies
  if (r == 0) return make_position(variable_form(f, n, n - 1), 1);

  std::size_t attempts = 0;
  for (std::size_t v = n; v-- > 0 && attempts < max_attempts;) {
    ++attempts;
    auto ell = variable_form(f, n, v);
    if (is_artinian_with(system, ell)) return make_position(ell, attempts);
  }
  std::uint64_t state = seed;
  while (attempts < max_attempts) {
    ++attempts;
    std::vector<Term> terms;
    for (std::size_t v = 0; v < n; ++v)
      terms.push_back({Monomial::variable(n, v),
                       static_cast<std::uint32_t>(uniform_below(state, f.modulus()))});
    auto ell = Polynomial::from_terms(f, n, std::move(terms));
    if (ell.is_zero()) continue;
    if (is_artinian_with(system, ell)) return make_position(ell, attempts);
  }
  throw Error(ErrorKind::SearchExhausted,
              "no linear form avoids the projective zeros after " + std::to_string(max_attempts) +
                  " attempts; the field may be too small");
}

}  // namespace

PositionChange find_linear_form(const PolySystem& system, std::uint64_t seed,
                                std::size_t max_attempts) {
  auto ih = exact_hilbert_of_ideal(system);
  return find_linear_form_known(system, ih.profile.krull_dim, seed, max_attempts);
}

bool TheoremReport::hypotheses_hold() const {
  return krull_dim <= 1 && ell_found && semiregular.generalized == true && engine != "capped";
}

TheoremReport verify_main_theorem(const PolySystem& system, std::uint64_t seed,
                                  const VerifyOptions& options) {
  if (!system.homogeneous())
    throw Error(ErrorKind::NotHomogeneous, "verification needs a homogeneous system");
  TheoremReport rep;
  rep.n = system.nvars();
  rep.m = system.size();
  rep.degrees = system.degrees();
  const int n = static_cast<int>(rep.n);
  const int m = static_cast<int>(rep.m);

  auto ih = exact_hilbert_of_ideal(system);
  rep.krull_dim = ih.profile.krull_dim;
  if (rep.krull_dim >= 2)
    throw Error(ErrorKind::DimensionTooHigh,
                "Krull dimension " + std::to_string(rep.krull_dim) + " exceeds one");
  rep.lazard = lazard_bound(n, m, rep.degrees);
  if (m >= n - 1) rep.D_nm = degree_bound_Dnm(n, m, rep.degrees);
  rep.semiregular = certify_semiregular(ih.profile, rep.n, rep.degrees);
  rep.gen_d_reg = *ih.profile.gen_d_reg;

  auto position = find_linear_form_known(system, rep.krull_dim, seed, options.attempts);
  rep.ell_found = true;
  auto ell_hilbert = exact_hilbert_of_ideal(system.with(position.ell));
  rep.d_reg_ell = *ell_hilbert.profile.d_reg;

  PolySystem transformed = apply_linear_change(system, position.sigma);
  GroebnerBasis gb;
  bool use_macaulay = options.engine == EngineKind::Macaulay;
  if (!use_macaulay) {
    try {
      BuchbergerOptions bo;
      bo.max_reductions = options.budget;
      gb = buchberger(transformed, bo);
      rep.engine = "buchberger";
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::BudgetExceeded) throw;
      use_macaulay = true;
    }
  }
  if (use_macaulay) {
    int cap = options.cap.value_or(std::max({rep.lazard, rep.D_nm.value_or(0),
                                             max_degree(rep.degrees)}));
    gb = gb_up_to(transformed, std::max(cap, max_degree(rep.degrees)));
    if (satisfies_buchberger_criterion(gb.elements)) {
      gb.degree_cap.reset();
      rep.engine = "macaulay";
    } else {
      rep.engine = "capped";
    }
  }
  rep.max_gb_deg_sigma = max_gb_deg(gb).value;
  auto lm_sigma = gb.leading_ideal();
  rep.weakly_revlex = check_weakly_revlex(lm_sigma);
  rep.artinian_sigma =
      is_artinian_with(transformed, Polynomial::variable(system.field(), rep.n, rep.n - 1));
  rep.hilbert_invariant =
      gb.complete() && hilbert_numerator(lm_sigma) == ih.profile.numerator;

  const int chain_top = std::max(rep.d_reg_ell, rep.gen_d_reg);
  rep.ineq_maxGB = rep.max_gb_deg_sigma <= chain_top;
  if (rep.semiregular.generalized == true && rep.D_nm) rep.ineq_Dnm = chain_top <= *rep.D_nm;
  if (rep.weakly_revlex && rep.artinian_sigma && gb.complete())
    rep.equality_attained = rep.max_gb_deg_sigma == chain_top;
  if (m == n - 1 && is_regular_sequence(system.with(position.ell))) {
    int sum = 0;
    for (int d : rep.degrees) sum += d - 1;
    rep.m_minus_one_law = rep.gen_d_reg == rep.d_reg_ell - 1 && rep.gen_d_reg == sum;
  }
  rep.position = std::move(position);
  return rep;
}

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

std::uint64_t uniform_below(std::uint64_t& state, std::uint64_t bound) {
  if (bound == 0) throw Error(ErrorKind::InvalidArgument, "empty range");
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  for (;;) {
    std::uint64_t x = splitmix64(state);
    if (x < limit) return x % bound;
  }
}

std::uint64_t child_seed(std::uint64_t master, std::uint64_t index) {
  std::uint64_t state = master ^ (index * 0xd1b54a32d192ed03ull);
  splitmix64(state);
  return splitmix64(state);
}

namespace {

PolySystem sample(std::size_t n, const std::vector<int>& degrees, const PrimeField& field,
                  std::uint64_t seed, bool force_zero) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "need n >= 1");
  if (degrees.empty()) throw Error(ErrorKind::InvalidArgument, "need m >= 1");
  if (force_zero && n < 2)
    throw Error(ErrorKind::InvalidArgument, "the vanishing construction needs n >= 2");
  std::uint64_t state = seed;
  std::vector<Polynomial> polys;
  for (int d : degrees) {
    if (d < 1) throw Error(ErrorKind::InvalidDegree, "degree " + std::to_string(d) + " < 1");
    auto monomials = monomials_of_degree(n, static_cast<std::uint32_t>(d));
    for (;;) {
      std::vector<Term> terms;
      for (const auto& mono : monomials) {
        auto c = static_cast<std::uint32_t>(uniform_below(state, field.modulus()));
        // x_n^d is the last monomial in the list
        if (force_zero && &mono == &monomials.back()) c = 0;
        terms.push_back({mono, c});
      }
      auto p = Polynomial::from_terms(field, n, std::move(terms));
      if (!p.is_zero()) {
        polys.push_back(std::move(p));
        break;
      }
    }
  }
  return PolySystem(field, n, std::move(polys));
}

}  // namespace

PolySystem sample_system(std::size_t n, const std::vector<int>& degrees, const PrimeField& field,
                         std::uint64_t seed) {
  return sample(n, degrees, field, seed, false);
}

PolySystem sample_Z_system(std::size_t n, const std::vector<int>& degrees,
                           const PrimeField& field, std::uint64_t seed) {
  return sample(n, degrees, field, seed, true);
}

}  // namespace sgb
