#include <algorithm>
#include <bit>
#include <sstream>

#include "towerlift/budget.hpp"
#include "towerlift/errors.hpp"
#include "towerlift/groebner.hpp"

namespace towerlift {

// ---------------------------------------------------------------------------
// Term orders

TermOrder TermOrder::grevlex(std::size_t nvars) {
  TermOrder o;
  o.kind_ = Kind::Grevlex;
  o.nvars_ = nvars;
  std::vector<std::size_t> all(nvars);
  for (std::size_t i = 0; i < nvars; ++i) all[i] = i;
  o.blocks_ = {all};
  return o;
}

TermOrder TermOrder::lex(std::size_t nvars) {
  std::vector<std::size_t> order(nvars);
  for (std::size_t i = 0; i < nvars; ++i) order[i] = i;
  return lex(order);
}

TermOrder TermOrder::lex(const std::vector<std::size_t>& order) {
  TermOrder o;
  o.kind_ = Kind::Lex;
  o.nvars_ = order.size();
  for (auto v : order) o.blocks_.push_back({v});
  return o;
}

TermOrder TermOrder::block(const std::vector<std::vector<std::size_t>>& blocks) {
  TermOrder o;
  o.kind_ = Kind::Block;
  std::vector<bool> seen;
  for (const auto& b : blocks) {
    if (b.empty()) continue;
    o.blocks_.push_back(b);
    for (auto v : b) {
      if (v >= seen.size()) seen.resize(v + 1, false);
      if (seen[v]) fail(ErrorKind::DomainMismatch, "variable repeated in block order");
      seen[v] = true;
    }
  }
  o.nvars_ = seen.size();
  if (std::find(seen.begin(), seen.end(), false) != seen.end())
    fail(ErrorKind::DomainMismatch, "block order must partition the variables");
  return o;
}

TermOrder TermOrder::elimination(std::size_t nvars, const std::vector<std::size_t>& eliminate) {
  std::vector<std::size_t> rest;
  for (std::size_t v = 0; v < nvars; ++v)
    if (std::find(eliminate.begin(), eliminate.end(), v) == eliminate.end()) rest.push_back(v);
  TermOrder o = block({eliminate, rest});
  if (o.nvars_ < nvars) o.nvars_ = nvars;
  return o;
}

int TermOrder::compare(const Monomial& a, const Monomial& b) const {
  for (const auto& blk : blocks_) {
    if (blk.size() == 1) {
      std::size_t v = blk[0];
      if (a[v] != b[v]) return a[v] < b[v] ? -1 : 1;
      continue;
    }
    std::uint32_t da = 0, db = 0;
    for (auto v : blk) {
      da += a[v];
      db += b[v];
    }
    if (da != db) return da < db ? -1 : 1;
    for (auto it = blk.rbegin(); it != blk.rend(); ++it)
      if (a[*it] != b[*it]) return a[*it] > b[*it] ? -1 : 1;
  }
  return 0;
}

std::string TermOrder::describe() const {
  if (kind_ == Kind::Grevlex) return "grevlex";
  std::ostringstream os;
  bool natural = true;
  for (std::size_t i = 0; i < blocks_.size(); ++i)
    if (blocks_[i].size() != 1 || blocks_[i][0] != i) natural = false;
  if (kind_ == Kind::Lex && natural) return "lex";
  os << (kind_ == Kind::Lex ? "lex" : "block") << "[";
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    os << (i ? "," : "") << "[";
    for (std::size_t j = 0; j < blocks_[i].size(); ++j) os << (j ? "," : "") << blocks_[i][j];
    os << "]";
  }
  os << "]";
  return os.str();
}

Monomial leading_monomial(const Polynomial& p, const TermOrder& order) { return leading_term(p, order).mono; }

Term leading_term(const Polynomial& p, const TermOrder& order) {
  if (p.is_zero()) fail(ErrorKind::DomainMismatch, "leading term of zero polynomial");
  const Term* best = &p.terms().front();
  for (const auto& t : p.terms())
    if (order.compare(t.mono, best->mono) > 0) best = &t;
  return *best;
}

// ---------------------------------------------------------------------------
// Internal representation: terms sorted decreasingly in the working order.

namespace {

using Terms = std::vector<Term>;

Terms to_ordered(const Polynomial& p, const TermOrder& ord) {
  Terms t = p.terms();
  std::sort(t.begin(), t.end(), [&](const Term& a, const Term& b) { return ord.compare(a.mono, b.mono) > 0; });
  return t;
}

Polynomial from_ordered(Terms t, std::size_t nvars, Field field) {
  return Polynomial::from_terms(nvars, field, std::move(t));
}

/// a[from..] - c * m * b, where the leading terms cancel.
Terms sub_mul(const Terms& a, std::size_t from, const Scalar& c, const Monomial& m, const Terms& b,
              const TermOrder& ord) {
  Terms out;
  out.reserve(a.size() - from + b.size());
  std::size_t i = from, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size()) {
      out.push_back(a[i++]);
      continue;
    }
    Monomial bm = b[j].mono * m;
    int cmpv = i == a.size() ? -1 : ord.compare(a[i].mono, bm);
    if (cmpv > 0) {
      out.push_back(a[i++]);
    } else if (cmpv < 0) {
      out.push_back({bm, -(b[j].coeff * c)});
      ++j;
    } else {
      Scalar s = a[i].coeff - b[j].coeff * c;
      if (!s.is_zero()) out.push_back({bm, std::move(s)});
      ++i;
      ++j;
    }
  }
  return out;
}

struct QuotientTerm {
  std::size_t k;
  Scalar c;
  Monomial m;
};

struct Basis {
  const TermOrder* ord;
  std::vector<Terms> polys;
  std::vector<Monomial> lms;
  std::vector<Scalar> lc_inv;
  std::vector<bool> active;

  std::optional<std::size_t> find_divisor(const Monomial& m, std::optional<std::size_t> skip = std::nullopt) const {
    for (std::size_t k = 0; k < polys.size(); ++k)
      if (active[k] && k != skip && lms[k].divides(m)) return k;
    return std::nullopt;
  }
};

/// Full reduction (leading and tail terms) of h by the active basis elements.
Terms reduce(Terms h, const Basis& basis, std::vector<QuotientTerm>* quotients,
             std::optional<std::size_t> skip = std::nullopt) {
  Terms rem;
  std::size_t pos = 0;
  std::size_t steps = 0;
  while (pos < h.size()) {
    if ((++steps & 63) == 0) check_budget("reduction");
    const Term& lt = h[pos];
    auto k = basis.find_divisor(lt.mono, skip);
    if (!k) {
      rem.push_back(lt);
      ++pos;
      continue;
    }
    Scalar c = lt.coeff * basis.lc_inv[*k];
    Monomial m = basis.lms[*k].quotient_of(lt.mono);
    h = sub_mul(h, pos, c, m, basis.polys[*k], *basis.ord);
    pos = 0;
    if (quotients) quotients->push_back({*k, std::move(c), m});
  }
  return rem;
}

/// sum over quotient terms of c * m * cofactors[k]
std::vector<Polynomial> combine_cofactors(const std::vector<QuotientTerm>& quotients,
                                          const std::vector<std::vector<Polynomial>>& cofactors,
                                          std::size_t ninputs, std::size_t nvars, Field field) {
  std::vector<std::vector<Term>> per_k(cofactors.size());
  for (const auto& q : quotients) per_k[q.k].push_back({q.m, q.c});
  std::vector<Polynomial> out(ninputs, Polynomial(nvars, field));
  for (std::size_t k = 0; k < per_k.size(); ++k) {
    if (per_k[k].empty()) continue;
    Polynomial qk = Polynomial::from_terms(nvars, field, std::move(per_k[k]));
    if (qk.is_zero()) continue;
    for (std::size_t j = 0; j < ninputs; ++j)
      if (!cofactors[k][j].is_zero()) out[j] += qk * cofactors[k][j];
  }
  return out;
}

struct Pair {
  std::size_t i, j;
  Monomial lcm;
};

class Engine {
 public:
  Engine(const TermOrder& ord, std::size_t nvars, Field field, bool track, std::size_t ninputs)
      : ord_(ord), nvars_(nvars), field_(field), track_(track), ninputs_(ninputs) {
    basis_.ord = &ord_;
  }

  /// Reduce h, make it monic and insert it with the Gebauer–Möller update.
  void insert(Terms h, std::vector<Polynomial> cof) {
    std::vector<QuotientTerm> q;
    h = reduce(std::move(h), basis_, track_ ? &q : nullptr);
    if (h.empty()) {
      if (stats_) ++stats_->zero_reductions;
      return;
    }
    if (track_) {
      auto sub = combine_cofactors(q, cofactors_, ninputs_, nvars_, field_);
      for (std::size_t j = 0; j < ninputs_; ++j) cof[j] -= sub[j];
    }
    Scalar inv = h.front().coeff.inverse();
    for (auto& t : h) t.coeff *= inv;
    if (track_)
      for (auto& c : cof) c *= inv;
    add(std::move(h), std::move(cof));
  }

  void run() {
    while (!pairs_.empty()) {
      check_budget("buchberger");
      std::size_t best = 0;
      for (std::size_t p = 1; p < pairs_.size(); ++p)
        if (pair_less(pairs_[p], pairs_[best])) best = p;
      Pair pr = pairs_[best];
      pairs_[best] = pairs_.back();
      pairs_.pop_back();
      if (stats_) ++stats_->pairs_reduced;

      const Monomial mi = basis_.lms[pr.i].quotient_of(pr.lcm);
      const Monomial mj = basis_.lms[pr.j].quotient_of(pr.lcm);
      Terms si;
      for (const auto& t : basis_.polys[pr.i]) si.push_back({t.mono * mi, t.coeff});
      Terms s = sub_mul(si, 0, Scalar::one(field_), mj, basis_.polys[pr.j], ord_);
      std::vector<Polynomial> cof;
      if (track_) {
        cof.resize(ninputs_, Polynomial(nvars_, field_));
        for (std::size_t k = 0; k < ninputs_; ++k)
          cof[k] = cofactors_[pr.i][k].mul_term(Scalar::one(field_), mi) -
                   cofactors_[pr.j][k].mul_term(Scalar::one(field_), mj);
      }
      insert(std::move(s), std::move(cof));
    }
  }

  GroebnerBasis finish(std::vector<Polynomial> inputs) {
    // interreduce active elements; the active set is already minimal
    std::vector<std::size_t> idx;
    for (std::size_t k = 0; k < basis_.polys.size(); ++k)
      if (basis_.active[k]) idx.push_back(k);
    for (auto k : idx) {
      Terms head{basis_.polys[k].front()};
      Terms tail(basis_.polys[k].begin() + 1, basis_.polys[k].end());
      std::vector<QuotientTerm> q;
      Terms red = reduce(std::move(tail), basis_, track_ ? &q : nullptr, k);
      head.insert(head.end(), red.begin(), red.end());
      if (track_ && !q.empty()) {
        auto sub = combine_cofactors(q, cofactors_, ninputs_, nvars_, field_);
        for (std::size_t j = 0; j < ninputs_; ++j) cofactors_[k][j] -= sub[j];
      }
      basis_.polys[k] = std::move(head);
    }
    std::sort(idx.begin(), idx.end(),
              [&](std::size_t a, std::size_t b) { return ord_.compare(basis_.lms[a], basis_.lms[b]) < 0; });
    GroebnerBasis gb;
    gb.order = ord_;
    gb.inputs = std::move(inputs);
    if (track_) gb.cofactors.emplace();
    for (auto k : idx) {
      gb.generators.push_back(from_ordered(basis_.polys[k], nvars_, field_));
      if (track_) gb.cofactors->push_back(cofactors_[k]);
    }
    return gb;
  }

  void set_stats(GroebnerStats* s) { stats_ = s; }

 private:
  bool pair_less(const Pair& a, const Pair& b) const {
    if (a.lcm.degree() != b.lcm.degree()) return a.lcm.degree() < b.lcm.degree();
    int c = ord_.compare(a.lcm, b.lcm);
    if (c != 0) return c < 0;
    if (a.j != b.j) return a.j < b.j;
    return a.i < b.i;
  }

  void add(Terms h, std::vector<Polynomial> cof) {
    const std::size_t hn = basis_.polys.size();
    const Monomial hlm = h.front().mono;

    // Gebauer–Möller: new pairs (g, h)
    std::vector<Pair> cand;
    for (std::size_t k = 0; k < hn; ++k)
      if (basis_.active[k]) cand.push_back({k, hn, basis_.lms[k].lcm(hlm)});
    std::vector<Pair> kept;
    for (std::size_t a = 0; a < cand.size(); ++a) {
      bool coprime = basis_.lms[cand[a].i].coprime(hlm);
      bool dominated = false;
      if (!coprime) {
        for (std::size_t b = 0; b < cand.size() && !dominated; ++b) {
          if (a == b) continue;
          if (!cand[b].lcm.divides(cand[a].lcm)) continue;
          // strict divisibility, or equal lcm with a smaller index kept
          if (!(cand[b].lcm == cand[a].lcm) || b < a) dominated = true;
        }
      }
      if (!dominated) kept.push_back(cand[a]);
    }
    // among pairs with equal lcm keep one, drop those with coprime leading terms
    std::vector<Pair> fresh;
    for (const auto& p : kept)
      if (!basis_.lms[p.i].coprime(hlm)) fresh.push_back(p);

    // chain criterion on old pairs
    std::vector<Pair> old;
    for (const auto& p : pairs_) {
      bool drop = hlm.divides(p.lcm) && !(basis_.lms[p.i].lcm(hlm) == p.lcm) && !(basis_.lms[p.j].lcm(hlm) == p.lcm);
      if (!drop) old.push_back(p);
    }
    pairs_ = std::move(old);
    pairs_.insert(pairs_.end(), fresh.begin(), fresh.end());

    for (std::size_t k = 0; k < hn; ++k)
      if (basis_.active[k] && hlm.divides(basis_.lms[k])) basis_.active[k] = false;

    basis_.lms.push_back(hlm);
    basis_.lc_inv.push_back(h.front().coeff.inverse());
    basis_.polys.push_back(std::move(h));
    basis_.active.push_back(true);
    if (track_) cofactors_.push_back(std::move(cof));
  }

  TermOrder ord_;
  std::size_t nvars_;
  Field field_;
  bool track_;
  std::size_t ninputs_;
  Basis basis_;
  std::vector<std::vector<Polynomial>> cofactors_;
  std::vector<Pair> pairs_;
  GroebnerStats* stats_ = nullptr;
};

std::uint32_t support_mask(const Monomial& m, std::size_t nvars) {
  std::uint32_t mask = 0;
  for (std::size_t v = 0; v < nvars; ++v)
    if (m[v]) mask |= 1u << v;
  return mask;
}

}  // namespace

GroebnerBasis buchberger(const std::vector<Polynomial>& gens, const TermOrder& order, bool track,
                         GroebnerStats* stats) {
  if (gens.empty()) fail(ErrorKind::DomainMismatch, "buchberger needs at least one generator");
  const std::size_t nvars = gens.front().nvars();
  const Field field = gens.front().field();
  for (const auto& g : gens)
    if (g.nvars() != nvars || !(g.field() == field)) fail(ErrorKind::DomainMismatch, "generators from different rings");
  if (order.nvars() > nvars) fail(ErrorKind::DomainMismatch, "term order has more variables than the ring");
  TermOrder ord = order;
  if (ord.nvars() < nvars) {
    // extend with trailing variables as a final grevlex block
    auto blocks = ord.blocks();
    std::vector<std::size_t> extra;
    for (std::size_t v = ord.nvars(); v < nvars; ++v) extra.push_back(v);
    blocks.push_back(extra);
    ord = ord.kind() == TermOrder::Kind::Grevlex ? TermOrder::grevlex(nvars) : TermOrder::block(blocks);
  }

  Engine engine(ord, nvars, field, track, gens.size());
  engine.set_stats(stats);
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (gens[i].is_zero()) continue;
    std::vector<Polynomial> cof;
    if (track) {
      cof.assign(gens.size(), Polynomial(nvars, field));
      cof[i] = Polynomial::constant(nvars, field, 1);
    }
    engine.insert(to_ordered(gens[i], ord), std::move(cof));
  }
  engine.run();
  return engine.finish(gens);
}

Polynomial normal_form(const Polynomial& p, const GroebnerBasis& gb) {
  Basis basis;
  basis.ord = &gb.order;
  for (const auto& g : gb.generators) {
    basis.polys.push_back(to_ordered(g, gb.order));
    basis.lms.push_back(basis.polys.back().front().mono);
    basis.lc_inv.push_back(basis.polys.back().front().coeff.inverse());
    basis.active.push_back(true);
  }
  return from_ordered(reduce(to_ordered(p, gb.order), basis, nullptr), p.nvars(), p.field());
}

TrackedNormalForm normal_form_tracked(const Polynomial& p, const GroebnerBasis& gb) {
  if (!gb.tracked()) fail(ErrorKind::DomainMismatch, "normal_form_tracked needs a tracked basis");
  Basis basis;
  basis.ord = &gb.order;
  for (const auto& g : gb.generators) {
    basis.polys.push_back(to_ordered(g, gb.order));
    basis.lms.push_back(basis.polys.back().front().mono);
    basis.lc_inv.push_back(basis.polys.back().front().coeff.inverse());
    basis.active.push_back(true);
  }
  std::vector<QuotientTerm> q;
  TrackedNormalForm out;
  out.remainder = from_ordered(reduce(to_ordered(p, gb.order), basis, &q), p.nvars(), p.field());
  out.cofactors = combine_cofactors(q, *gb.cofactors, gb.inputs.size(), p.nvars(), p.field());
  return out;
}

bool ideal_member(const Polynomial& p, const GroebnerBasis& gb) { return normal_form(p, gb).is_zero(); }

std::size_t krull_dimension(const GroebnerBasis& gb) {
  if (gb.is_unit()) fail(ErrorKind::ImproperIdeal, "dimension of the unit ideal is undefined");
  const std::size_t nvars = gb.inputs.empty() ? gb.order.nvars() : gb.inputs.front().nvars();
  std::vector<std::uint32_t> supports;
  for (const auto& g : gb.generators) supports.push_back(support_mask(leading_monomial(g, gb.order), nvars));
  std::size_t best = 0;
  const std::uint32_t full = nvars >= 32 ? ~0u : (1u << nvars) - 1;
  for (std::uint32_t u = 0;; ++u) {
    auto size = static_cast<std::size_t>(std::popcount(u));
    if (size > best) {
      bool independent = std::all_of(supports.begin(), supports.end(),
                                     [&](std::uint32_t s) { return (s & ~u) != 0; });
      if (independent) best = size;
    }
    if (u == full) break;
  }
  return best;
}

bool verify_groebner(const GroebnerBasis& gb) {
  const auto& G = gb.generators;
  for (std::size_t i = 0; i < G.size(); ++i) {
    for (std::size_t j = i + 1; j < G.size(); ++j) {
      Term ti = leading_term(G[i], gb.order), tj = leading_term(G[j], gb.order);
      Monomial l = ti.mono.lcm(tj.mono);
      Polynomial s = G[i].mul_term(tj.coeff, ti.mono.quotient_of(l)) - G[j].mul_term(ti.coeff, tj.mono.quotient_of(l));
      if (!normal_form(s, gb).is_zero()) return false;
    }
  }
  return true;
}

}  // namespace towerlift
