#include "towerlift/ideal_ops.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

#include "towerlift/budget.hpp"
#include "towerlift/errors.hpp"

namespace towerlift {

namespace {

std::vector<Polynomial> nonzero(const std::vector<Polynomial>& gens) {
  std::vector<Polynomial> out;
  for (const auto& g : gens)
    if (!g.is_zero()) out.push_back(g);
  return out;
}

std::vector<Polynomial> with_rabinowitsch(const std::vector<Polynomial>& gens, const Polynomial& u) {
  const std::size_t n = u.nvars();
  if (n + 1 > kMaxVars) fail(ErrorKind::Unsupported, "too many variables for an auxiliary variable");
  std::vector<Polynomial> ext;
  for (const auto& g : gens) ext.push_back(g.extend(n + 1));
  Polynomial w = Polynomial::variable(n + 1, u.field(), n);
  ext.push_back(Polynomial::constant(n + 1, u.field(), 1) - w * u.extend(n + 1));
  return ext;
}

}  // namespace

std::vector<Polynomial> saturate(const std::vector<Polynomial>& gens, const Polynomial& u) {
  if (u.is_zero()) fail(ErrorKind::DomainMismatch, "saturation at zero");
  auto gs = nonzero(gens);
  if (gs.empty()) return {};
  const std::size_t n = u.nvars();
  if (u.is_constant()) return buchberger(gs, TermOrder::grevlex(n)).generators;
  auto ext = with_rabinowitsch(gs, u);
  GroebnerBasis gb = buchberger(ext, TermOrder::elimination(n + 1, {n}));
  std::vector<Polynomial> out;
  for (const auto& g : gb.generators)
    if (!g.uses_var(n)) out.push_back(g.truncate(n));
  if (out.empty()) return {};
  return buchberger(out, TermOrder::grevlex(n)).generators;
}

std::vector<Polynomial> elim_contract(const std::vector<Polynomial>& gens, const std::vector<std::size_t>& keep) {
  auto gs = nonzero(gens);
  if (gs.empty()) return {};
  const std::size_t n = gs.front().nvars();
  std::vector<std::size_t> drop;
  for (std::size_t v = 0; v < n; ++v)
    if (std::find(keep.begin(), keep.end(), v) == keep.end()) drop.push_back(v);
  if (drop.empty()) return buchberger(gs, TermOrder::grevlex(n)).generators;
  GroebnerBasis gb = buchberger(gs, TermOrder::elimination(n, drop));
  std::vector<Polynomial> out;
  for (const auto& g : gb.generators)
    if (std::none_of(drop.begin(), drop.end(), [&](std::size_t v) { return g.uses_var(v); })) out.push_back(g);
  if (out.empty()) return {};
  return buchberger(out, TermOrder::grevlex(n)).generators;
}

bool radical_member(const Polynomial& p, const std::vector<Polynomial>& gens) {
  if (p.is_zero()) return true;
  auto gs = nonzero(gens);
  if (gs.empty()) return false;
  if (p.is_constant()) return is_unit_ideal(gs);
  auto ext = with_rabinowitsch(gs, p);
  return buchberger(ext, TermOrder::grevlex(p.nvars() + 1)).is_unit();
}

DimHeight dimension_height(const std::vector<Polynomial>& gens) {
  if (gens.empty()) fail(ErrorKind::DomainMismatch, "dimension of an empty generator list needs a ring");
  const std::size_t n = gens.front().nvars();
  auto gs = nonzero(gens);
  if (gs.empty()) return {n, 0};
  GroebnerBasis gb = buchberger(gs, TermOrder::grevlex(n));
  if (gb.is_unit()) fail(ErrorKind::ImproperIdeal, "ideal is the unit ideal");
  std::size_t dim = krull_dimension(gb);
  return {dim, n - dim};
}

bool ideal_contains(const std::vector<Polynomial>& outer, const std::vector<Polynomial>& inner) {
  auto in = nonzero(inner);
  if (in.empty()) return true;
  auto out = nonzero(outer);
  if (out.empty()) return false;
  GroebnerBasis gb = buchberger(out, TermOrder::grevlex(out.front().nvars()));
  return std::all_of(in.begin(), in.end(), [&](const Polynomial& g) { return ideal_member(g, gb); });
}

bool ideal_equal(const std::vector<Polynomial>& a, const std::vector<Polynomial>& b) {
  return ideal_contains(a, b) && ideal_contains(b, a);
}

bool is_unit_ideal(const std::vector<Polynomial>& gens) {
  auto gs = nonzero(gens);
  if (gs.empty()) return false;
  return buchberger(gs, TermOrder::grevlex(gs.front().nvars())).is_unit();
}

// ---------------------------------------------------------------------------
// Linear-algebra oracle

namespace {

using SparseRow = std::vector<std::pair<std::size_t, Scalar>>;

void enumerate_monomials(const std::vector<std::size_t>& vars, std::size_t at, std::uint32_t remaining, Monomial cur,
                         std::vector<Monomial>& out) {
  if (at == vars.size()) {
    out.push_back(cur);
    return;
  }
  for (std::uint32_t e = 0; e <= remaining; ++e) {
    Monomial next = cur;
    next.set(vars[at], e);
    enumerate_monomials(vars, at + 1, remaining - e, next, out);
  }
}

/// row -= factor * pivot (both sorted by column)
SparseRow axpy(const SparseRow& row, const Scalar& factor, const SparseRow& pivot) {
  SparseRow out;
  out.reserve(row.size() + pivot.size());
  std::size_t i = 0, j = 0;
  while (i < row.size() || j < pivot.size()) {
    if (j == pivot.size() || (i < row.size() && row[i].first < pivot[j].first)) {
      out.push_back(row[i++]);
    } else if (i == row.size() || pivot[j].first < row[i].first) {
      out.emplace_back(pivot[j].first, -(factor * pivot[j].second));
      ++j;
    } else {
      Scalar s = row[i].second - factor * pivot[j].second;
      if (!s.is_zero()) out.emplace_back(row[i].first, std::move(s));
      ++i;
      ++j;
    }
  }
  return out;
}

const Scalar* find_entry(const SparseRow& row, std::size_t col) {
  auto it = std::lower_bound(row.begin(), row.end(), col,
                             [](const std::pair<std::size_t, Scalar>& e, std::size_t c) { return e.first < c; });
  return it != row.end() && it->first == col ? &it->second : nullptr;
}

}  // namespace

OracleResult oracle_member(const Polynomial& p, const std::vector<Polynomial>& gens, std::uint32_t degree_bound) {
  OracleResult result;
  const std::size_t nvars = p.nvars();
  const Field field = p.field();
  result.cofactors.assign(gens.size(), Polynomial(nvars, field));
  if (p.is_zero()) {
    result.verdict = OracleVerdict::Member;
    return result;
  }

  std::vector<std::size_t> vars;
  for (std::size_t v = 0; v < nvars; ++v) {
    bool used = p.uses_var(v) || std::any_of(gens.begin(), gens.end(), [&](const Polynomial& g) { return g.uses_var(v); });
    if (used) vars.push_back(v);
  }
  std::vector<Monomial> monos;
  enumerate_monomials(vars, 0, degree_bound, Monomial(), monos);

  // unknown (i, k): coefficient of monos[k] in q_i; column index i*|monos| + k
  struct Unknown {
    std::size_t gen;
    std::size_t mono;
  };
  std::vector<Unknown> unknowns;
  std::unordered_map<Monomial, std::size_t, MonomialHash> row_of;
  std::vector<SparseRow> rows;
  std::vector<Scalar> rhs;
  auto row_index = [&](const Monomial& m) {
    auto [it, inserted] = row_of.emplace(m, rows.size());
    if (inserted) {
      rows.emplace_back();
      rhs.push_back(Scalar::zero(field));
    }
    return it->second;
  };
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (gens[i].is_zero()) continue;
    for (std::size_t k = 0; k < monos.size(); ++k) {
      std::size_t col = unknowns.size();
      unknowns.push_back({i, k});
      for (const auto& t : gens[i].terms()) rows[row_index(t.mono * monos[k])].emplace_back(col, t.coeff);
    }
  }
  for (const auto& t : p.terms()) rhs[row_index(t.mono)] = t.coeff;

  // Gauss–Jordan with sparsest-row pivoting; columns are already sorted per row
  const std::size_t ncols = unknowns.size();
  std::vector<bool> used(rows.size(), false);
  std::vector<std::pair<std::size_t, std::size_t>> pivots;  // (col, row)
  std::vector<std::vector<std::size_t>> rows_with(ncols);
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (const auto& e : rows[r]) rows_with[e.first].push_back(r);

  for (std::size_t c = 0; c < ncols; ++c) {
    check_budget("oracle");
    std::optional<std::size_t> best;
    for (auto r : rows_with[c]) {
      if (used[r] || !find_entry(rows[r], c)) continue;
      if (!best || rows[r].size() < rows[*best].size()) best = r;
    }
    if (!best) continue;
    const std::size_t pr = *best;
    used[pr] = true;
    pivots.emplace_back(c, pr);
    Scalar inv = find_entry(rows[pr], c)->inverse();
    for (auto& e : rows[pr]) e.second *= inv;
    rhs[pr] *= inv;
    std::vector<std::size_t> touched = rows_with[c];
    std::sort(touched.begin(), touched.end());
    touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
    for (auto r : touched) {
      if (r == pr) continue;
      const Scalar* e = find_entry(rows[r], c);
      if (!e) continue;
      Scalar factor = *e;
      rows[r] = axpy(rows[r], factor, rows[pr]);
      rhs[r] -= factor * rhs[pr];
      for (const auto& entry : rows[pr]) rows_with[entry.first].push_back(r);
    }
  }
  for (std::size_t r = 0; r < rows.size(); ++r)
    if (!used[r] && rows[r].empty() && !rhs[r].is_zero()) return result;

  // free unknowns are zero; each pivot row then reads x_c = rhs
  std::vector<std::vector<Term>> q(gens.size());
  for (auto [c, r] : pivots)
    if (!rhs[r].is_zero()) q[unknowns[c].gen].push_back({monos[unknowns[c].mono], rhs[r]});
  for (std::size_t i = 0; i < gens.size(); ++i)
    result.cofactors[i] = Polynomial::from_terms(nvars, field, std::move(q[i]));
  result.verdict = OracleVerdict::Member;
  return result;
}

}  // namespace towerlift
