#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "sgb/monomial.hpp"
#include "sgb/series.hpp"

namespace sgb {

/// Monomial ideal with a minimal generating set, stored DRL-descending.
class MonomialIdeal {
 public:
  explicit MonomialIdeal(std::size_t nvars) : nvars_(nvars) {}
  /// Minimalizes `gens`; throws DimensionMismatch on a foreign monomial.
  MonomialIdeal(std::size_t nvars, std::vector<Monomial> gens);

  std::size_t nvars() const noexcept { return nvars_; }
  const std::vector<Monomial>& generators() const noexcept { return gens_; }
  std::size_t size() const noexcept { return gens_.size(); }
  bool is_zero() const noexcept { return gens_.empty(); }
  bool is_unit() const noexcept;
  bool contains(const Monomial& m) const noexcept;

  friend bool operator==(const MonomialIdeal&, const MonomialIdeal&) = default;

 private:
  std::size_t nvars_;
  std::vector<Monomial> gens_;
};

MonomialIdeal minimalize(std::size_t nvars, std::span<const Monomial> gens);

/// N(z) with HS_{R/J} = N(z) / (1 - z)^n.
IntPoly hilbert_numerator(const MonomialIdeal& ideal);

/// Krull dimension of R/J via a minimum variable cover. Throws UnitIdeal.
int krull_dim(const MonomialIdeal& ideal);

/// Number of standard monomials of degree d, by enumeration.
std::uint64_t hilbert_function(const MonomialIdeal& ideal, int d);

/// HS_{R/J} expanded modulo z^cap.
TruncSeries hilbert_series(const MonomialIdeal& ideal, std::size_t cap);

struct HilbertProfile {
  IntPoly numerator;
  int krull_dim = 0;
  IntPoly h_poly;  // numerator / (1 - z)^(n - r)
  int hilb = 0;
  std::optional<int> d_reg;       // nullopt: infinite (r >= 1)
  std::optional<int> gen_d_reg;   // nullopt: undefined (r >= 2)
  std::optional<BigInt> hp_constant;  // constant Hilbert polynomial for r <= 1
};

/// Full Hilbert data. hilb is computed from the h-polynomial and, for r <= 1,
/// cross-checked against the stabilization degree of the expanded series.
/// Throws UnitIdeal.
HilbertProfile regularity_profile(const MonomialIdeal& ideal);

}  // namespace sgb
