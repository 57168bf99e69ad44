#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sgb/field.hpp"
#include "sgb/hilbert.hpp"
#include "sgb/polynomial.hpp"

namespace sgb {

/// Dense row-major matrix of residues.
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::uint32_t> data;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0) {}
  Matrix(std::size_t r, std::size_t c, std::vector<std::uint32_t> d);

  std::uint32_t& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  std::uint32_t operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
  std::span<const std::uint32_t> row(std::size_t i) const {
    return {data.data() + i * cols, cols};
  }
  bool row_is_zero(std::size_t i) const;

  friend bool operator==(const Matrix&, const Matrix&) = default;
};

struct RrefResult {
  Matrix matrix;                    // same shape as the input
  std::vector<std::size_t> pivots;  // pivot column of row i, strictly increasing
  std::size_t rank = 0;
  std::size_t passes = 1;           // block passes (1 for the naive routine)
};

RrefResult rref_naive(const Matrix& a, const PrimeField& field);

/// Block elimination: repeatedly remove 2l rows, reduce them as a zero-padded
/// 2l x 2l square, and return the surviving rows to the pool. Produces the
/// same matrix as rref_naive.
RrefResult rref_block(const Matrix& a, const PrimeField& field);

enum class RrefMethod { Naive, Block };

struct MacaulayRow {
  Monomial multiplier;
  std::size_t generator;
};

/// Rows are the products m * f_j of degree d, ordered by generator and then
/// DRL-descending multiplier; columns are the degree-d monomials, descending.
struct MacaulayMatrix {
  int degree = 0;
  std::vector<MacaulayRow> labels;
  std::vector<Monomial> columns;
  Matrix matrix;
  PrimeField field{2};

  /// "d rows cols p" then one line of residues per row.
  std::string dump() const;
};

/// Throws NotHomogeneous, ZeroPolynomial, InvalidDegree (constant
/// generator) or DegreeTooSmall (d below every generator degree).
MacaulayMatrix build_macaulay(const PolySystem& system, int d);

/// Reduced, monic basis sorted by degree, then DRL-descending leading
/// monomial. `degree_cap` is set when only degrees up to it were explored.
struct GroebnerBasis {
  PrimeField field{2};
  std::size_t nvars = 0;
  std::vector<Polynomial> elements;
  bool reduced = true;
  std::optional<int> degree_cap;

  bool complete() const noexcept { return !degree_cap.has_value(); }
  MonomialIdeal leading_ideal() const;
};

/// Degree-by-degree Macaulay elimination up to `max_degree`.
GroebnerBasis gb_up_to(const PolySystem& system, int max_degree,
                       RrefMethod method = RrefMethod::Naive);

struct BuchbergerOptions {
  /// Maximum number of S-polynomial reductions; exceeded => BudgetExceeded.
  std::optional<std::size_t> max_reductions;
};

/// Complete reduced basis with normal pair selection and both criteria.
GroebnerBasis buchberger(const PolySystem& system, const BuchbergerOptions& options = {});

Polynomial s_polynomial(const Polynomial& a, const Polynomial& b);
/// Full remainder of f modulo `basis`.
Polynomial normal_form(const Polynomial& f, std::span<const Polynomial> basis);
/// Every S-polynomial reduces to zero.
bool satisfies_buchberger_criterion(std::span<const Polynomial> basis);
/// Interreduces and normalizes a generating set of leading terms into the
/// reduced basis, sorted as in GroebnerBasis.
std::vector<Polynomial> reduce_basis(std::vector<Polynomial> basis);

struct MaxDegree {
  int value = 0;
  bool lower_bound = false;  // true for a degree-capped basis
};

/// Throws EmptyBasis.
MaxDegree max_gb_deg(const GroebnerBasis& basis);

}  // namespace sgb
