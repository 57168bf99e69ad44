#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sgb/field.hpp"
#include "sgb/monomial.hpp"

namespace sgb {

struct Term {
  Monomial monomial;
  std::uint32_t coeff;

  friend bool operator==(const Term&, const Term&) = default;
};

/// Exact polynomial over F_p. Terms are kept strictly DRL-descending with no
/// zero coefficients, so the leading term is always `terms().front()`.
class Polynomial {
 public:
  Polynomial(PrimeField field, std::size_t nvars) : field_(field), nvars_(nvars) {}

  /// Builds a polynomial from arbitrary terms: sorts, merges equal monomials
  /// and drops zeros.
  static Polynomial from_terms(PrimeField field, std::size_t nvars, std::vector<Term> terms);
  static Polynomial constant(PrimeField field, std::size_t nvars, std::uint32_t c);
  static Polynomial variable(PrimeField field, std::size_t nvars, std::size_t index);
  static Polynomial monomial(PrimeField field, const Monomial& m, std::uint32_t c = 1);

  const PrimeField& field() const noexcept { return field_; }
  std::size_t nvars() const noexcept { return nvars_; }
  std::span<const Term> terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }

  const Term& leading_term() const;
  const Monomial& leading_monomial() const { return leading_term().monomial; }
  std::uint32_t leading_coeff() const { return leading_term().coeff; }

  /// Maximal total degree; the leading monomial has it under DRL.
  /// Throws ErrorKind::ZeroPolynomial for the zero polynomial.
  std::uint32_t degree() const;
  bool is_homogeneous() const noexcept;
  bool is_constant() const noexcept;
  std::uint32_t coefficient(const Monomial& m) const noexcept;

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator-() const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial scaled(std::uint32_t c) const;
  /// c * m * this
  Polynomial shifted(const Monomial& m, std::uint32_t c = 1) const;
  /// this - c * m * g, in one merge pass
  Polynomial minus_multiple(const Polynomial& g, const Monomial& m, std::uint32_t c) const;
  Polynomial monic() const;
  Polynomial pow(std::uint32_t e) const;

  std::uint32_t evaluate(std::span<const std::uint32_t> point) const;

  /// Sets the last variable to `value` and drops it from the ring.
  Polynomial specialize_last(std::uint32_t value) const;
  /// Embeds into a ring with `extra` more variables appended at the end.
  Polynomial extended(std::size_t extra) const;

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.field_ == b.field_ && a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }

 private:
  PrimeField field_;
  std::size_t nvars_;
  std::vector<Term> terms_;
};

/// An ordered generator list F = (f_1, ..., f_m) in a common ring.
class PolySystem {
 public:
  PolySystem(PrimeField field, std::size_t nvars, std::vector<Polynomial> polys);

  const PrimeField& field() const noexcept { return field_; }
  std::size_t nvars() const noexcept { return nvars_; }
  std::size_t size() const noexcept { return polys_.size(); }
  const std::vector<Polynomial>& polys() const noexcept { return polys_; }
  const Polynomial& operator[](std::size_t i) const { return polys_[i]; }
  bool homogeneous() const noexcept { return homogeneous_; }

  /// Total degrees d_1..d_m; throws ZeroPolynomial if some f_j = 0.
  std::vector<int> degrees() const;

  PolySystem with(const Polynomial& extra) const;

 private:
  PrimeField field_;
  std::size_t nvars_;
  std::vector<Polynomial> polys_;
  bool homogeneous_;
};

/// Linear change of variables h -> h(x * P) for an invertible n x n matrix P.
class LinearChange {
 public:
  LinearChange(PrimeField field, std::size_t n, std::vector<std::uint32_t> row_major,
               std::string note = {});

  static LinearChange identity(PrimeField field, std::size_t n);
  /// Permutation exchanging x_i and x_j (0-based).
  static LinearChange swap(PrimeField field, std::size_t n, std::size_t i, std::size_t j);

  const PrimeField& field() const noexcept { return field_; }
  std::size_t size() const noexcept { return n_; }
  std::uint32_t operator()(std::size_t row, std::size_t col) const { return p_[row * n_ + col]; }
  std::span<const std::uint32_t> entries() const noexcept { return p_; }
  const std::string& note() const noexcept { return note_; }

  LinearChange inverse() const;
  bool is_identity() const noexcept;

  /// `outer` after `inner`: h^(outer o inner) = (h^inner)^outer, matrix P_outer * P_inner.
  static LinearChange compose(const LinearChange& outer, const LinearChange& inner);

  friend bool operator==(const LinearChange& a, const LinearChange& b) {
    return a.field_ == b.field_ && a.n_ == b.n_ && a.p_ == b.p_;
  }

 private:
  PrimeField field_;
  std::size_t n_;
  std::vector<std::uint32_t> p_;
  std::string note_;
};

/// f(x * P). Preserves total degree and homogeneity.
Polynomial apply_linear_change(const Polynomial& f, const LinearChange& change);
PolySystem apply_linear_change(const PolySystem& system, const LinearChange& change);

/// Homogenizes with an extra variable appended last (smallest in DRL).
Polynomial homogenize(const Polynomial& f);
/// Sum of the maximal-degree terms.
Polynomial top_part(const Polynomial& f);

}  // namespace sgb
