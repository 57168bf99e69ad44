#include "sgb/engine.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>
#include <unordered_map>

#include "sgb/error.hpp"

namespace sgb {

Matrix::Matrix(std::size_t r, std::size_t c, std::vector<std::uint32_t> d)
    : rows(r), cols(c), data(std::move(d)) {
  if (data.size() != r * c) throw Error(ErrorKind::DimensionMismatch, "matrix data size");
}

bool Matrix::row_is_zero(std::size_t i) const {
  auto r = row(i);
  return std::all_of(r.begin(), r.end(), [](std::uint32_t x) { return x == 0; });
}

namespace {

// In-place Gauss-Jordan; returns pivot columns.
std::vector<std::size_t> eliminate(Matrix& a, const PrimeField& f) {
  const std::uint64_t p = f.modulus();
  std::vector<std::size_t> pivots;
  std::size_t lead = 0;
  for (std::size_t c = 0; c < a.cols && lead < a.rows; ++c) {
    std::size_t sel = lead;
    while (sel < a.rows && a(sel, c) == 0) ++sel;
    if (sel == a.rows) continue;
    if (sel != lead)
      std::swap_ranges(a.data.begin() + sel * a.cols, a.data.begin() + (sel + 1) * a.cols,
                       a.data.begin() + lead * a.cols);
    std::uint32_t inv = f.inv(a(lead, c));
    for (std::size_t j = c; j < a.cols; ++j) a(lead, j) = f.mul(a(lead, j), inv);
    for (std::size_t i = 0; i < a.rows; ++i) {
      if (i == lead) continue;
      std::uint64_t factor = a(i, c);
      if (factor == 0) continue;
      std::uint64_t neg = p - factor;
      for (std::size_t j = c; j < a.cols; ++j) {
        std::uint32_t v = a(lead, j);
        if (v != 0) a(i, j) = static_cast<std::uint32_t>((a(i, j) + neg * v) % p);
      }
    }
    pivots.push_back(c);
    ++lead;
  }
  return pivots;
}

}  // namespace

RrefResult rref_naive(const Matrix& a, const PrimeField& field) {
  RrefResult r;
  r.matrix = a;
  r.pivots = eliminate(r.matrix, field);
  r.rank = r.pivots.size();
  return r;
}

RrefResult rref_block(const Matrix& a, const PrimeField& field) {
  const std::size_t l = a.cols;
  if (l == 0 || a.rows <= 2 * l) {
    // a single block
    RrefResult r = rref_naive(a, field);
    return r;
  }
  std::deque<std::vector<std::uint32_t>> pool;
  for (std::size_t i = 0; i < a.rows; ++i) {
    auto row = a.row(i);
    pool.emplace_back(row.begin(), row.end());
  }
  RrefResult out;
  out.passes = 0;
  for (;;) {
    const std::size_t take = std::min(pool.size(), 2 * l);
    Matrix block(2 * l, 2 * l);
    for (std::size_t i = 0; i < take; ++i) {
      std::copy(pool.front().begin(), pool.front().end(), block.data.begin() + i * 2 * l);
      pool.pop_front();
    }
    auto pivots = eliminate(block, field);
    ++out.passes;
    if (pool.empty()) {
      out.matrix = Matrix(a.rows, l);
      for (std::size_t i = 0; i < pivots.size(); ++i)
        std::copy_n(block.data.begin() + i * 2 * l, l, out.matrix.data.begin() + i * l);
      out.pivots = std::move(pivots);
      out.rank = out.pivots.size();
      return out;
    }
    // at most l independent rows survive; they rejoin the pool
    for (std::size_t i = 0; i < pivots.size(); ++i)
      pool.emplace_back(block.data.begin() + i * 2 * l, block.data.begin() + i * 2 * l + l);
  }
}

MacaulayMatrix build_macaulay(const PolySystem& system, int d) {
  if (!system.homogeneous())
    throw Error(ErrorKind::NotHomogeneous, "Macaulay matrices need homogeneous input");
  auto degrees = system.degrees();
  if (degrees.empty()) throw Error(ErrorKind::InvalidArgument, "empty system");
  for (int dj : degrees)
    if (dj < 1) throw Error(ErrorKind::InvalidDegree, "generators must have positive degree");
  int min_deg = *std::min_element(degrees.begin(), degrees.end());
  if (d < min_deg)
    throw Error(ErrorKind::DegreeTooSmall,
                "degree " + std::to_string(d) + " is below every generator degree");

  const std::size_t n = system.nvars();
  MacaulayMatrix mm;
  mm.degree = d;
  mm.field = system.field();
  mm.columns = monomials_of_degree(n, static_cast<std::uint32_t>(d));
  std::unordered_map<Monomial, std::size_t, MonomialHash> column_of;
  for (std::size_t c = 0; c < mm.columns.size(); ++c) column_of.emplace(mm.columns[c], c);

  for (std::size_t j = 0; j < system.size(); ++j) {
    if (degrees[j] > d) continue;
    for (auto& m : monomials_of_degree(n, static_cast<std::uint32_t>(d - degrees[j])))
      mm.labels.push_back({std::move(m), j});
  }
  mm.matrix = Matrix(mm.labels.size(), mm.columns.size());
  for (std::size_t i = 0; i < mm.labels.size(); ++i) {
    const auto& label = mm.labels[i];
    for (const auto& t : system[label.generator].terms())
      mm.matrix(i, column_of.at(t.monomial * label.multiplier)) = t.coeff;
  }
  return mm;
}

std::string MacaulayMatrix::dump() const {
  std::ostringstream os;
  os << degree << ' ' << matrix.rows << ' ' << matrix.cols << ' ' << field.modulus() << '\n';
  for (std::size_t i = 0; i < matrix.rows; ++i) {
    for (std::size_t j = 0; j < matrix.cols; ++j) os << (j ? " " : "") << matrix(i, j);
    os << '\n';
  }
  return os.str();
}

MonomialIdeal GroebnerBasis::leading_ideal() const {
  std::vector<Monomial> lms;
  for (const auto& g : elements) lms.push_back(g.leading_monomial());
  return MonomialIdeal(nvars, std::move(lms));
}

Polynomial s_polynomial(const Polynomial& a, const Polynomial& b) {
  const auto& f = a.field();
  Monomial l = lcm(a.leading_monomial(), b.leading_monomial());
  Polynomial left = a.shifted(l / a.leading_monomial(), f.inv(a.leading_coeff()));
  return left.minus_multiple(b, l / b.leading_monomial(), f.inv(b.leading_coeff()));
}

Polynomial normal_form(const Polynomial& f, std::span<const Polynomial> basis) {
  const auto& field = f.field();
  Polynomial p = f;
  std::vector<Term> rest;
  while (!p.is_zero()) {
    const Term lt = p.leading_term();
    const Polynomial* reducer = nullptr;
    for (const auto& g : basis) {
      if (!g.is_zero() && g.leading_monomial().divides(lt.monomial)) {
        reducer = &g;
        break;
      }
    }
    if (reducer) {
      std::uint32_t c = field.mul(lt.coeff, field.inv(reducer->leading_coeff()));
      p = p.minus_multiple(*reducer, lt.monomial / reducer->leading_monomial(), c);
    } else {
      rest.push_back(lt);
      p = p - Polynomial::monomial(field, lt.monomial, lt.coeff);
    }
  }
  return Polynomial::from_terms(field, f.nvars(), std::move(rest));
}

bool satisfies_buchberger_criterion(std::span<const Polynomial> basis) {
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = i + 1; j < basis.size(); ++j)
      if (!normal_form(s_polynomial(basis[i], basis[j]), basis).is_zero()) return false;
  return true;
}

namespace {

bool basis_order(const Polynomial& a, const Polynomial& b) {
  const auto& la = a.leading_monomial();
  const auto& lb = b.leading_monomial();
  if (la.degree() != lb.degree()) return la.degree() < lb.degree();
  return drl_compare_unchecked(la, lb) > 0;
}

}  // namespace

std::vector<Polynomial> reduce_basis(std::vector<Polynomial> basis) {
  basis.erase(std::remove_if(basis.begin(), basis.end(),
                             [](const Polynomial& g) { return g.is_zero(); }),
              basis.end());
  // smallest leading monomials first, so a divisor is seen before its multiples
  std::sort(basis.begin(), basis.end(), [](const Polynomial& a, const Polynomial& b) {
    return drl_compare_unchecked(a.leading_monomial(), b.leading_monomial()) < 0;
  });
  std::vector<Polynomial> minimal;
  for (auto& g : basis) {
    bool redundant = std::any_of(minimal.begin(), minimal.end(), [&](const Polynomial& h) {
      return h.leading_monomial().divides(g.leading_monomial());
    });
    if (!redundant) minimal.push_back(g.monic());
  }
  std::vector<Polynomial> reduced;
  for (std::size_t i = 0; i < minimal.size(); ++i) {
    std::vector<Polynomial> others;
    for (std::size_t k = 0; k < minimal.size(); ++k)
      if (k != i) others.push_back(minimal[k]);
    const auto& g = minimal[i];
    Polynomial head = Polynomial::monomial(g.field(), g.leading_monomial(), 1);
    reduced.push_back(head + normal_form(g - head, others));
  }
  std::sort(reduced.begin(), reduced.end(), basis_order);
  return reduced;
}

GroebnerBasis gb_up_to(const PolySystem& system, int max_degree, RrefMethod method) {
  if (!system.homogeneous())
    throw Error(ErrorKind::NotHomogeneous, "gb_up_to needs homogeneous input");
  auto degrees = system.degrees();
  if (degrees.empty()) throw Error(ErrorKind::InvalidArgument, "empty system");
  int min_deg = *std::min_element(degrees.begin(), degrees.end());
  int max_deg = *std::max_element(degrees.begin(), degrees.end());
  if (max_degree < max_deg)
    throw Error(ErrorKind::DegreeTooSmall,
                "cap " + std::to_string(max_degree) + " is below a generator degree");
  if (min_deg < 1)
    throw Error(ErrorKind::InvalidDegree, "generators must have positive degree");

  GroebnerBasis gb;
  gb.field = system.field();
  gb.nvars = system.nvars();
  gb.degree_cap = max_degree;
  std::vector<Polynomial> found;
  for (int d = min_deg; d <= max_degree; ++d) {
    auto mm = build_macaulay(system, d);
    auto rr = method == RrefMethod::Block ? rref_block(mm.matrix, mm.field)
                                          : rref_naive(mm.matrix, mm.field);
    const std::size_t before = found.size();
    for (std::size_t i = 0; i < rr.rank; ++i) {
      const Monomial& lead = mm.columns[rr.pivots[i]];
      bool known = std::any_of(found.begin(), found.begin() + static_cast<std::ptrdiff_t>(before),
                               [&](const Polynomial& g) {
                                 return g.leading_monomial().divides(lead);
                               });
      if (known) continue;
      std::vector<Term> terms;
      auto row = rr.matrix.row(i);
      for (std::size_t c = 0; c < row.size(); ++c)
        if (row[c] != 0) terms.push_back({mm.columns[c], row[c]});
      found.push_back(Polynomial::from_terms(gb.field, gb.nvars, std::move(terms)));
    }
  }
  gb.elements = reduce_basis(std::move(found));
  return gb;
}

GroebnerBasis buchberger(const PolySystem& system, const BuchbergerOptions& options) {
  if (system.size() == 0) throw Error(ErrorKind::InvalidArgument, "empty system");
  for (const auto& f : system.polys())
    if (f.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "zero generator");

  std::vector<Polynomial> g;
  for (const auto& f : system.polys()) g.push_back(f.monic());

  struct Pair {
    std::size_t i, j;
    Monomial lcm;
  };
  // normal selection: smallest lcm first, ties by index
  auto pair_less = [](const Pair& a, const Pair& b) {
    auto c = drl_compare_unchecked(a.lcm, b.lcm);
    if (c != 0) return c < 0;
    return std::tie(a.j, a.i) < std::tie(b.j, b.i);
  };
  std::set<Pair, decltype(pair_less)> pending(pair_less);
  std::set<std::pair<std::size_t, std::size_t>> pending_index;
  auto add_pairs_for = [&](std::size_t j) {
    for (std::size_t i = 0; i < j; ++i) {
      pending.insert({i, j, lcm(g[i].leading_monomial(), g[j].leading_monomial())});
      pending_index.insert({i, j});
    }
  };
  for (std::size_t j = 0; j < g.size(); ++j) add_pairs_for(j);

  auto is_pending = [&](std::size_t a, std::size_t b) {
    return pending_index.count({std::min(a, b), std::max(a, b)}) > 0;
  };

  std::size_t reductions = 0;
  while (!pending.empty()) {
    Pair pr = *pending.begin();
    pending.erase(pending.begin());
    pending_index.erase({pr.i, pr.j});
    const auto& li = g[pr.i].leading_monomial();
    const auto& lj = g[pr.j].leading_monomial();
    // first criterion: coprime leading monomials
    if (gcd(li, lj).is_one()) continue;
    // second criterion: some g_k divides the lcm and both side pairs are done
    bool chain = false;
    for (std::size_t k = 0; k < g.size() && !chain; ++k) {
      if (k == pr.i || k == pr.j) continue;
      if (g[k].leading_monomial().divides(pr.lcm) && !is_pending(pr.i, k) && !is_pending(pr.j, k))
        chain = true;
    }
    if (chain) continue;
    if (options.max_reductions && reductions >= *options.max_reductions)
      throw Error(ErrorKind::BudgetExceeded, "Buchberger reduction budget exhausted");
    ++reductions;
    Polynomial h = normal_form(s_polynomial(g[pr.i], g[pr.j]), g);
    if (h.is_zero()) continue;
    g.push_back(h.monic());
    add_pairs_for(g.size() - 1);
  }

  GroebnerBasis gb;
  gb.field = system.field();
  gb.nvars = system.nvars();
  gb.elements = reduce_basis(std::move(g));
  return gb;
}

MaxDegree max_gb_deg(const GroebnerBasis& basis) {
  if (basis.elements.empty()) throw Error(ErrorKind::EmptyBasis, "empty basis");
  MaxDegree r;
  for (const auto& g : basis.elements) r.value = std::max(r.value, static_cast<int>(g.degree()));
  r.lower_bound = basis.degree_cap.has_value();
  return r;
}

}  // namespace sgb
