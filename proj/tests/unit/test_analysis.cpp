#include <algorithm>
#include <set>

#include "doctest.h"
#include "gen.hpp"
#include "sgb/analysis.hpp"
#include "sgb/error.hpp"

using namespace sgb;
using sgb::testing::Gen;

namespace {

Polynomial poly(const PrimeField& f, std::size_t n,
                std::initializer_list<std::pair<std::vector<std::uint32_t>, std::int64_t>> terms) {
  std::vector<Term> ts;
  for (const auto& [e, c] : terms) ts.push_back({Monomial(e), f.reduce(c)});
  return Polynomial::from_terms(f, n, std::move(ts));
}

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::InvalidArgument;
}

const PrimeField F7(7);
const PrimeField F31(31);

PolySystem square_pair() {
  return PolySystem(F7, 2, {poly(F7, 2, {{{2, 0}, 1}, {{0, 2}, 1}}), poly(F7, 2, {{{1, 1}, 1}})});
}

PolySystem monomial_pair() {
  return PolySystem(F7, 2, {poly(F7, 2, {{{2, 0}, 1}}), poly(F7, 2, {{{1, 1}, 1}})});
}

std::vector<int> random_degrees(Gen& g, std::size_t m, int max_d) {
  std::vector<int> d(m);
  for (auto& x : d) x = static_cast<int>(g.range(1, max_d));
  return d;
}

std::string fingerprint(const PolySystem& s) {
  std::string out;
  for (const auto& p : s.polys()) {
    for (const auto& t : p.terms()) {
      for (auto e : t.monomial.exponents()) out += std::to_string(e) + ",";
      out += ":" + std::to_string(t.coeff) + ";";
    }
    out += "|";
  }
  return out;
}

}  // namespace

TEST_CASE("exact_hilbert_of_ideal examples") {
  auto a = exact_hilbert_of_ideal(square_pair());
  CHECK(a.leading == MonomialIdeal(2, {{2, 0}, {1, 1}, {0, 3}}));
  CHECK(a.profile.krull_dim == 0);
  CHECK(a.profile.d_reg == 3);

  auto b = exact_hilbert_of_ideal(monomial_pair());
  CHECK(b.leading == MonomialIdeal(2, {{2, 0}, {1, 1}}));
  CHECK(b.profile.krull_dim == 1);
  CHECK(b.profile.gen_d_reg == 2);

  PolySystem x1(F7, 2, {poly(F7, 2, {{{1, 0}, 1}})});
  auto c = exact_hilbert_of_ideal(x1);
  CHECK(c.leading == MonomialIdeal(2, {{1, 0}}));
  CHECK(c.profile.krull_dim == 1);
  CHECK(c.profile.hilb == 0);

  PolySystem unit(F7, 2, {poly(F7, 2, {{{0, 0}, 3}})});
  CHECK(kind_of([&] { exact_hilbert_of_ideal(unit); }) == ErrorKind::UnitIdeal);
  PolySystem inhom(F7, 2, {poly(F7, 2, {{{1, 0}, 1}, {{0, 0}, 1}})});
  CHECK(kind_of([&] { exact_hilbert_of_ideal(inhom); }) == ErrorKind::NotHomogeneous);
}

TEST_CASE("certify_d_regular examples") {
  CHECK(certify_d_regular(square_pair(), 3));
  CHECK(certify_d_regular(monomial_pair(), 2));
  // HF = 1,2,1,1 against (1+z)^2 = 1,2,1,0: agreement up to degree 2 only
  CHECK(certify_d_regular(monomial_pair(), 3));
  CHECK_FALSE(certify_d_regular(monomial_pair(), 4));
  CHECK(kind_of([] { certify_d_regular(monomial_pair(), 1); }) == ErrorKind::DegreeTooSmall);
}

TEST_CASE("certify_semiregular examples") {
  auto a = certify_semiregular(square_pair());
  CHECK(a.cryptographic == true);
  CHECK(a.generalized == true);
  CHECK_FALSE(a.first_defect_degree.has_value());

  auto b = certify_semiregular(monomial_pair());
  CHECK(b.generalized == true);
  CHECK_FALSE(b.cryptographic.has_value());
  CHECK(b.first_defect_degree == 3);
  CHECK(b.lex_dominates);

  PolySystem three(F7, 2, {poly(F7, 2, {{{2, 0}, 1}}), poly(F7, 2, {{{0, 2}, 1}}),
                           poly(F7, 2, {{{1, 1}, 1}})});
  auto c = certify_semiregular(three);
  CHECK(c.cryptographic == true);
  CHECK(c.d_checked == 2);

  PolySystem big(F7, 3, {poly(F7, 3, {{{1, 0, 0}, 1}})});
  auto d = certify_semiregular(big);
  CHECK_FALSE(d.generalized.has_value());
  CHECK_FALSE(d.cryptographic.has_value());
  CHECK(d.is_d_regular);
}

TEST_CASE("check_noether_position examples") {
  CHECK(check_noether_position(MonomialIdeal(2, {{2, 0}, {1, 1}}), 1));
  CHECK_FALSE(check_noether_position(MonomialIdeal(2, {{1, 1}}), 1));
  CHECK(check_noether_position(MonomialIdeal(2, {{2, 0}, {0, 2}}), 0));
}

TEST_CASE("check_weakly_revlex examples") {
  CHECK(check_weakly_revlex(MonomialIdeal(2, {{2, 0}, {1, 1}})));
  CHECK_FALSE(check_weakly_revlex(MonomialIdeal(2, {{2, 0}, {0, 2}})));
  for (std::size_t n = 1; n <= 4; ++n) CHECK(check_weakly_revlex(MonomialIdeal(n, {Monomial::variable(n, 0)})));
}

TEST_CASE("build_sigma examples") {
  auto x2 = poly(F7, 2, {{{0, 1}, 1}});
  CHECK(build_sigma(x2).is_identity());

  auto sum = poly(F7, 2, {{{1, 0}, 1}, {{0, 1}, 1}});
  auto s = build_sigma(sum);
  CHECK(s == LinearChange(F7, 2, {1, 6, 0, 1}));
  CHECK(apply_linear_change(sum, s) == x2);

  auto x1 = poly(F7, 2, {{{1, 0}, 1}});
  auto t = build_sigma(x1);
  CHECK(t == LinearChange::swap(F7, 2, 0, 1));
  CHECK(apply_linear_change(x1, t) == x2);

  CHECK(kind_of([] { build_sigma(Polynomial(F7, 2)); }) == ErrorKind::ZeroForm);
  CHECK(kind_of([] { build_sigma(poly(F7, 2, {{{1, 1}, 1}})); }) == ErrorKind::NotLinear);
  CHECK(kind_of([] { build_sigma(poly(F7, 2, {{{1, 0}, 1}, {{0, 0}, 1}})); }) ==
        ErrorKind::NotLinear);
}

TEST_CASE("build_sigma sends every normalized form to x_n") {
  Gen g(51);
  for (int i = 0; i < 500; ++i) {
    std::size_t n = static_cast<std::size_t>(g.range(1, 5));
    std::vector<Term> terms;
    for (std::size_t v = 0; v < n; ++v) terms.push_back({Monomial::variable(n, v), g.residue(F31)});
    auto ell = Polynomial::from_terms(F31, n, terms);
    if (ell.is_zero()) continue;
    std::size_t k = 0;
    for (const auto& t : ell.terms())
      k = std::max(k, static_cast<std::size_t>(t.monomial.pure_power_variable()));
    auto normalized = ell.scaled(F31.inv(ell.coefficient(Monomial::variable(n, k))));
    auto sigma = build_sigma(ell);
    CHECK(apply_linear_change(normalized, sigma) == Polynomial::variable(F31, n, n - 1));
  }
}

TEST_CASE("find_linear_form examples") {
  auto pos = find_linear_form(monomial_pair(), 1);
  CHECK(pos.ell == poly(F7, 2, {{{0, 1}, 1}}));
  CHECK(pos.sigma.is_identity());
  CHECK(pos.attempts_used == 1);
  CHECK_FALSE(is_artinian_with(monomial_pair(), poly(F7, 2, {{{1, 0}, 1}})));

  auto art = find_linear_form(square_pair(), 1);
  CHECK(art.ell == poly(F7, 2, {{{0, 1}, 1}}));

  PolySystem high(F7, 3, {poly(F7, 3, {{{1, 0, 0}, 1}})});
  CHECK(kind_of([&] { find_linear_form(high, 1); }) == ErrorKind::DimensionTooHigh);

  // every nonzero linear form over F_2 vanishes at one of the three zeros
  PrimeField f2(2);
  PolySystem all_points(f2, 2, {poly(f2, 2, {{{2, 1}, 1}, {{1, 2}, 1}})});
  CHECK(kind_of([&] { find_linear_form(all_points, 1); }) == ErrorKind::SearchExhausted);
  PolySystem cross(F7, 2, {poly(F7, 2, {{{1, 1}, 1}})});
  CHECK(kind_of([&] { find_linear_form(cross, 1, 2); }) == ErrorKind::SearchExhausted);
  auto found = find_linear_form(cross, 1);
  CHECK(found.attempts_used > 2);
  CHECK(is_artinian_with(cross, found.ell));
}

TEST_CASE("verify_main_theorem examples") {
  auto a = verify_main_theorem(monomial_pair(), 1);
  CHECK(a.krull_dim == 1);
  CHECK(a.ell_found);
  CHECK(a.position->ell == poly(F7, 2, {{{0, 1}, 1}}));
  CHECK(a.position->sigma.is_identity());
  CHECK(a.d_reg_ell == 2);
  CHECK(a.gen_d_reg == 2);
  CHECK(a.max_gb_deg_sigma == 2);
  CHECK(a.D_nm == 3);
  CHECK(a.ineq_maxGB);
  CHECK(a.ineq_Dnm == true);
  CHECK(a.weakly_revlex);
  CHECK(a.equality_attained == true);
  CHECK(a.hypotheses_hold());

  auto b = verify_main_theorem(square_pair(), 1);
  CHECK(b.krull_dim == 0);
  CHECK(b.max_gb_deg_sigma == 3);
  CHECK(std::max(b.d_reg_ell, b.gen_d_reg) == 3);
  CHECK(b.D_nm == 3);
  CHECK(b.ineq_maxGB);

  PolySystem cube(F7, 2, {poly(F7, 2, {{{3, 0}, 1}})});
  auto c = verify_main_theorem(cube, 1);
  CHECK(c.gen_d_reg == 2);
  CHECK(c.d_reg_ell == 3);
  CHECK(c.m_minus_one_law == true);

  PolySystem high(F7, 3, {poly(F7, 3, {{{1, 0, 0}, 1}})});
  CHECK(kind_of([&] { verify_main_theorem(high, 1); }) == ErrorKind::DimensionTooHigh);
}

TEST_CASE("macaulay engine path agrees with the oracle") {
  Gen g(52);
  for (int i = 0; i < 30; ++i) {
    auto sys = sample_system(3, random_degrees(g, 3, 2), F31, g.next());
    VerifyOptions mac;
    mac.engine = EngineKind::Macaulay;
    auto a = verify_main_theorem(sys, 1);
    auto b = verify_main_theorem(sys, 1, mac);
    CHECK(b.engine == "macaulay");
    CHECK(a.max_gb_deg_sigma == b.max_gb_deg_sigma);
    // a tiny budget falls back to the Macaulay engine
    VerifyOptions tight;
    tight.budget = 0;
    auto c = verify_main_theorem(sys, 1, tight);
    CHECK(c.engine != "buchberger");
    if (c.engine == "macaulay") CHECK(c.max_gb_deg_sigma == a.max_gb_deg_sigma);
  }
}

TEST_CASE("Hilbert function is invariant under invertible changes") {
  Gen g(53);
  for (int i = 0; i < 60; ++i) {
    std::size_t n = static_cast<std::size_t>(g.range(2, 3));
    std::size_t m = static_cast<std::size_t>(g.range(1, 4));
    auto sys = sample_system(n, random_degrees(g, m, 3), F31, g.next());
    auto t = g.invertible(F31, n);
    auto a = exact_hilbert_of_ideal(sys);
    auto b = exact_hilbert_of_ideal(apply_linear_change(sys, t));
    CHECK(a.profile.numerator == b.profile.numerator);
  }
}

TEST_CASE("bound chain and equality case hold on sampled systems") {
  Gen g(54);
  int verified = 0, equality_checked = 0;
  for (int i = 0; i < 120; ++i) {
    std::size_t n = static_cast<std::size_t>(g.range(2, 3));
    std::size_t m = static_cast<std::size_t>(g.range(static_cast<long>(n) - 1, 5));
    auto deg = random_degrees(g, m, 3);
    auto sys = g.coin() ? sample_system(n, deg, F31, g.next()) : sample_Z_system(n, deg, F31, g.next());
    TheoremReport r;
    try {
      r = verify_main_theorem(sys, g.next());
    } catch (const Error& e) {
      CHECK((e.kind() == ErrorKind::DimensionTooHigh || e.kind() == ErrorKind::SearchExhausted));
      continue;
    }
    CHECK(r.ineq_maxGB);
    CHECK(r.hilbert_invariant);
    CHECK(r.artinian_sigma);
    CHECK(r.semiregular.lex_dominates);
    if (r.hypotheses_hold()) {
      ++verified;
      if (r.ineq_Dnm) CHECK(*r.ineq_Dnm);
    }
    if (r.equality_attained) {
      ++equality_checked;
      CHECK(*r.equality_attained);
    }
    if (r.m_minus_one_law) CHECK(*r.m_minus_one_law);
  }
  CHECK(verified > 20);
  CHECK(equality_checked > 5);
}

TEST_CASE("regular sequences follow the product law") {
  Gen g(55);
  int seen = 0;
  for (int i = 0; i < 80; ++i) {
    std::size_t n = static_cast<std::size_t>(g.range(1, 4));
    std::size_t m = static_cast<std::size_t>(g.range(1, static_cast<long>(n)));
    auto deg = random_degrees(g, m, 3);
    auto sys = sample_system(n, deg, F31, g.next());
    if (!is_regular_sequence(sys)) continue;
    ++seen;
    auto ih = exact_hilbert_of_ideal(sys);
    CHECK(ih.profile.numerator == froberg_numerator(deg));
    auto cert = certify_semiregular(ih.profile, n, deg);
    CHECK_FALSE(cert.first_defect_degree.has_value());
  }
  CHECK(seen > 50);
}

TEST_CASE("subsequences of D-regular sequences are D-regular") {
  Gen g(56);
  for (int i = 0; i < 60; ++i) {
    std::size_t n = static_cast<std::size_t>(g.range(2, 3));
    std::size_t m = static_cast<std::size_t>(g.range(1, 4));
    auto deg = random_degrees(g, m, 3);
    auto sys = sample_system(n, deg, F31, g.next());
    std::vector<Term> terms;
    for (std::size_t v = 0; v < n; ++v) terms.push_back({Monomial::variable(n, v), g.residue(F31)});
    auto ell = Polynomial::from_terms(F31, n, terms);
    if (ell.is_zero()) continue;
    int top = *std::max_element(deg.begin(), deg.end());
    for (int D = top; D <= top + 3; ++D)
      if (certify_d_regular(sys.with(ell), D)) CHECK(certify_d_regular(sys, D));
  }
}

TEST_CASE("m = n - 1 law on regular systems") {
  Gen g(57);
  int seen = 0;
  for (int i = 0; i < 60 && seen < 30; ++i) {
    std::size_t n = static_cast<std::size_t>(g.range(2, 4));
    auto deg = random_degrees(g, n - 1, 3);
    auto sys = sample_system(n, deg, F31, g.next());
    auto r = verify_main_theorem(sys, g.next());
    if (!r.m_minus_one_law) continue;
    ++seen;
    CHECK(*r.m_minus_one_law);
  }
  CHECK(seen >= 30);
}

TEST_CASE("samplers") {
  std::vector<int> deg{2, 3, 2};
  auto a = sample_system(3, deg, F31, 99);
  auto b = sample_system(3, deg, F31, 99);
  CHECK(fingerprint(a) == fingerprint(b));
  for (std::size_t j = 0; j < a.size(); ++j) {
    CHECK(a[j].degree() == static_cast<std::uint32_t>(deg[j]));
    CHECK(a[j].is_homogeneous());
    CHECK(a[j].size() <= monomials_of_degree(3, static_cast<std::uint32_t>(deg[j])).size());
  }
  std::set<std::string> prints;
  for (std::uint64_t s = 0; s < 100; ++s) {
    CHECK(fingerprint(sample_system(3, deg, F31, child_seed(7, 2 * s))) !=
          fingerprint(sample_system(3, deg, F31, child_seed(7, 2 * s + 1))));
    prints.insert(fingerprint(sample_system(3, deg, F31, child_seed(7, s))));
  }
  CHECK(prints.size() == 100);

  Gen g(58);
  for (int i = 0; i < 100; ++i) {
    std::vector<int> d3{2, 2, 2};
    auto z = sample_Z_system(2, d3, F31, g.next());
    std::vector<std::uint32_t> pt{0, 1};
    for (const auto& p : z.polys()) CHECK(p.evaluate(pt) == 0);
    CHECK(exact_hilbert_of_ideal(z).profile.krull_dim >= 1);
  }
  std::vector<int> one{2};
  CHECK(kind_of([&] { sample_Z_system(1, one, F31, 1); }) == ErrorKind::InvalidArgument);
  std::vector<int> bad{0};
  CHECK(kind_of([&] { sample_system(2, bad, F31, 1); }) == ErrorKind::InvalidDegree);
}

TEST_CASE("uniform_below stays in range and covers it") {
  std::uint64_t state = 5;
  std::vector<int> hits(7, 0);
  for (int i = 0; i < 7000; ++i) {
    auto x = uniform_below(state, 7);
    REQUIRE(x < 7);
    ++hits[x];
  }
  for (int h : hits) CHECK(h > 800);
}
