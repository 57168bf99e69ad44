#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sgb/engine.hpp"
#include "sgb/hilbert.hpp"
#include "sgb/polynomial.hpp"
#include "sgb/series.hpp"

namespace sgb {

struct IdealHilbert {
  GroebnerBasis basis;  // complete reduced basis
  MonomialIdeal leading;
  HilbertProfile profile;
};

/// Hilbert data of <F> through the leading ideal of its reduced basis.
/// Throws NotHomogeneous or UnitIdeal.
IdealHilbert exact_hilbert_of_ideal(const PolySystem& system);

/// Whether HS_{R/I} agrees with prod(1 - z^d_j) / (1 - z)^n below degree d.
/// Throws DegreeTooSmall if d < max d_j.
bool certify_d_regular(const PolySystem& system, int d);

struct CertificationReport {
  int d_checked = 0;
  bool is_d_regular = false;
  std::optional<bool> cryptographic;  // nullopt: not applicable (r >= 1)
  std::optional<bool> generalized;    // nullopt: not applicable (r >= 2)
  std::optional<int> first_defect_degree;  // first degree where HS leaves the series
  bool lex_dominates = true;  // at the first defect, HS is the larger one
};

CertificationReport certify_semiregular(const PolySystem& system);
/// Same, reusing an already computed profile of <F>.
CertificationReport certify_semiregular(const HilbertProfile& profile, std::size_t nvars,
                                        const std::vector<int>& degrees);

/// A homogeneous sequence is regular iff dim R/I = n - m.
bool is_regular_sequence(const PolySystem& system);

/// Pure powers of x_1..x_{n-r} all lie in the ideal.
bool check_noether_position(const MonomialIdeal& lm, int r);

/// Every monomial of the same degree preceding a minimal generator lies in
/// the ideal.
bool check_weakly_revlex(const MonomialIdeal& lm);

struct PositionChange {
  Polynomial ell;   // normalized: coefficient 1 at the pivot variable
  std::size_t pivot = 0;  // 0-based index of the pivot variable
  LinearChange sigma;
  std::size_t attempts_used = 0;
};

inline constexpr std::size_t kDefaultAttempts = 64;

/// Sends a linear form to x_n: swap the pivot variable with x_n, then shear.
/// Throws NotLinear or ZeroForm.
LinearChange build_sigma(const Polynomial& ell);

/// Linear form avoiding every projective zero of <F>, checked through the
/// Artinian criterion on <F, ell>. Tries x_n, ..., x_1, then seeded random
/// forms. Throws DimensionTooHigh or SearchExhausted.
PositionChange find_linear_form(const PolySystem& system, std::uint64_t seed,
                                std::size_t max_attempts = kDefaultAttempts);

/// Whether R / <F, ell> has Krull dimension zero.
bool is_artinian_with(const PolySystem& system, const Polynomial& ell);

enum class EngineKind { Buchberger, Macaulay };

struct VerifyOptions {
  EngineKind engine = EngineKind::Buchberger;
  std::size_t attempts = kDefaultAttempts;
  /// Buchberger reduction budget for the transformed system; on exhaustion
  /// the Macaulay engine takes over.
  std::optional<std::size_t> budget;
  /// Macaulay degree cap; defaults to the larger of the Lazard bound and
  /// the D^(n,m) bound.
  std::optional<int> cap;
};

struct TheoremReport {
  std::size_t n = 0;
  std::size_t m = 0;
  std::vector<int> degrees;
  int krull_dim = 0;
  bool ell_found = false;
  std::optional<PositionChange> position;
  int d_reg_ell = 0;
  int gen_d_reg = 0;
  int max_gb_deg_sigma = 0;
  std::string engine;  // "buchberger", "macaulay" or "capped"
  std::optional<int> D_nm;
  int lazard = 0;
  bool ineq_maxGB = false;
  std::optional<bool> ineq_Dnm;  // only when generalized semi-regular and D_nm defined
  bool weakly_revlex = false;
  bool artinian_sigma = false;   // R / <I^sigma, x_n> Artinian
  std::optional<bool> equality_attained;
  std::optional<bool> m_minus_one_law;  // m = n - 1 with (F, ell) regular
  bool hilbert_invariant = false;  // HS of I and I^sigma agree
  CertificationReport semiregular;

  /// r <= 1, ell found, generalized semi-regular and an uncapped engine.
  bool hypotheses_hold() const;
};

/// Runs the full inequality chain on one system. Throws NotHomogeneous,
/// UnitIdeal, DimensionTooHigh or SearchExhausted.
TheoremReport verify_main_theorem(const PolySystem& system, std::uint64_t seed,
                                  const VerifyOptions& options = {});

/// Uniform residue below `bound` by rejection, independent of the standard
/// library's distribution implementation.
std::uint64_t uniform_below(std::uint64_t& state, std::uint64_t bound);
std::uint64_t splitmix64(std::uint64_t& state);
std::uint64_t child_seed(std::uint64_t master, std::uint64_t index);

/// Dense homogeneous system with uniform coefficients.
PolySystem sample_system(std::size_t n, const std::vector<int>& degrees, const PrimeField& field,
                         std::uint64_t seed);
/// Like sample_system with every x_n^{d_i} coefficient forced to zero.
PolySystem sample_Z_system(std::size_t n, const std::vector<int>& degrees,
                           const PrimeField& field, std::uint64_t seed);

}  // namespace sgb
