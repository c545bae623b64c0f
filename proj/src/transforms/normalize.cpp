#include <algorithm>

#include "towerlift/budget.hpp"
#include "towerlift/errors.hpp"
#include "towerlift/ideal_ops.hpp"
#include "towerlift/transforms.hpp"

namespace towerlift {

namespace {

/// e = num'/den' with var absent from den' (var^a split off the y-product).
struct VarView {
  Polynomial num;
  std::uint32_t shift = 0;  // power of var removed from the y-product
};

VarView var_view(const Element& e, std::size_t var) {
  const Ring& ring = *e.ring();
  if (ring.is_y(var) && e.a() > 0) {
    Monomial m = Monomial::variable(var, e.a());
    if (!m.divides(e.num().monomial_content()))
      fail(ErrorKind::LevelMismatch, "element has " + ring.names()[var] + " in its denominator");
    return {e.num().divide_monomial(m), e.a()};
  }
  if (var == ring.t() && e.b() > 0 && ring.f().uses_var(var))
    fail(ErrorKind::LevelMismatch, "element has f in its denominator");
  return {e.num(), 0};
}

std::uint32_t degree_in(const Element& e, std::size_t var) { return var_view(e, var).num.degree_in(var); }

/// Product of the inverted units of `level` that do not involve var.
Polynomial coefficient_unit(const Ring& ring, const Level& level, std::size_t var) {
  Polynomial u = ring.constant(1);
  for (std::size_t j = 0; j < ring.n(); ++j)
    if (level.inverts_y(j) && ring.y(j) != var) u *= ring.var(ring.y(j));
  if (level.invert_f && !ring.f().uses_var(var)) u *= ring.f();
  return u;
}

void require_height_above_d(const IdealHandle& I, const char* op) {
  if (!I.is_proper()) fail(ErrorKind::ImproperIdeal, std::string(op) + ": ideal is the unit ideal");
  std::size_t h = height_at_level(I);
  if (h <= I.ring()->d())
    fail(ErrorKind::Precondition, std::string(op) + ": height " + std::to_string(h) + " is not above d = " +
                                      std::to_string(I.ring()->d()));
}

std::vector<std::size_t> shiftable_vars(const Ring& ring, const Level& level, std::size_t exclude, bool with_t) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < ring.m(); ++i)
    if (level.has_var(ring.x(i)) && ring.x(i) != exclude) out.push_back(ring.x(i));
  if (with_t && level.has_var(ring.t()) && ring.t() != exclude) out.push_back(ring.t());
  return out;
}

/// Exponent tuples tried for a given N: uniform, then staggered N, N+1, ...
std::vector<std::vector<std::uint32_t>> exponent_candidates(std::uint32_t N, std::size_t count) {
  std::vector<std::vector<std::uint32_t>> out;
  out.emplace_back(count, N);
  if (N > 0 && count > 1) {
    std::vector<std::uint32_t> st(count);
    for (std::size_t i = 0; i < count; ++i) st[i] = N + static_cast<std::uint32_t>(i);
    out.push_back(st);
  }
  return out;
}

[[noreturn]] void exhausted(const char* op, std::uint32_t max_exponent, const std::string& last) {
  fail(ErrorKind::BudgetExceeded, std::string(op) + ": no witness with exponents up to " +
                                      std::to_string(max_exponent) + " (last attempted: " + last + ")");
}

}  // namespace

Element leading_coefficient(const Element& e, std::size_t var) {
  VarView v = var_view(e, var);
  Polynomial c = v.num.coefficient_in(var, v.num.degree_in(var));
  if (v.shift) c = c.mul_term(Scalar::one(e.ring()->field()), Monomial::variable(var, v.shift));
  return Element(e.ring(), c, e.a(), e.b());
}

bool is_coefficient_unit(const Element& e, const Level& level, std::size_t var) {
  auto inv = try_invert_unit(e);
  if (!inv) return false;
  if (!level.contains(e) || !level.contains(*inv)) return false;
  const Ring& ring = *e.ring();
  for (const Element* x : std::initializer_list<const Element*>{&e, &*inv}) {
    if (ring.is_y(var)) {
      // powers of var must cancel against the y-product
      if (x->num().degree_in(var) != x->a()) return false;
    } else if (x->num().uses_var(var)) {
      return false;
    } else if (x->b() > 0 && ring.f().uses_var(var)) {
      return false;
    }
  }
  return true;
}

std::optional<MonicWitness> contains_monic(const IdealHandle& I, std::size_t var) {
  const RingPtr& ring = I.ring();
  const Level& level = I.level();
  if (!level.has_var(var) || (ring->is_y(var) && level.inverts_y(var - ring->y(0))) || ring->is_z(var))
    fail(ErrorKind::Precondition, "contains_monic: " + ring->names()[var] + " is not a polynomial variable here");
  const auto& pre = I.preimage();
  if (pre.empty()) return std::nullopt;
  if (!I.is_proper()) return MonicWitness{var, Element::one(ring), 0, true, true};

  std::vector<std::size_t> rest;
  for (std::size_t v = 0; v < ring->nvars(); ++v)
    if (v != var) rest.push_back(v);
  const GroebnerBasis& gb = I.preimage_gb(TermOrder::block({{var}, rest}));

  auto finish = [&](const Element& w) {
    MonicWitness mw;
    mw.var = var;
    mw.element = w;
    mw.degree = degree_in(w, var);
    Element lc = leading_coefficient(w, var);
    mw.unit_leading_coefficient = is_coefficient_unit(lc, level, var);
    mw.leading_coefficient_one = lc == Element::one(ring);
    return mw;
  };

  // a basis element with unit leading coefficient
  for (const auto& g : gb.generators) {
    if (g.degree_in(var) == 0) continue;
    Element lc(ring, g.coefficient_in(var, g.degree_in(var)));
    if (is_coefficient_unit(lc, level, var)) return finish(Element(ring, g) * invert_unit(lc));
  }

  // otherwise combine: U^k in the ideal of leading coefficients
  std::vector<Polynomial> lcs;
  std::vector<std::uint32_t> degs;
  for (const auto& g : gb.generators) {
    degs.push_back(g.degree_in(var));
    lcs.push_back(g.coefficient_in(var, degs.back()));
  }
  Polynomial U = coefficient_unit(*ring, level, var);
  if (!radical_member(U, lcs)) return std::nullopt;
  GroebnerBasis lgb = buchberger(lcs, TermOrder::grevlex(ring->nvars()), true);
  Polynomial Uk = ring->constant(1);
  for (std::uint32_t k = 0;; ++k, Uk *= U) {
    check_budget("monic witness");
    TrackedNormalForm nf = normal_form_tracked(Uk, lgb);
    if (!nf.remainder.is_zero()) continue;
    std::uint32_t D = 0;
    for (std::size_t i = 0; i < lcs.size(); ++i)
      if (!nf.cofactors[i].is_zero()) D = std::max(D, degs[i]);
    Polynomial g(ring->nvars(), ring->field());
    for (std::size_t i = 0; i < lcs.size(); ++i)
      if (!nf.cofactors[i].is_zero())
        g += nf.cofactors[i].mul_term(Scalar::one(ring->field()), Monomial::variable(var, D - degs[i])) *
             gb.generators[i];
    if (g.degree_in(var) != D || g.coefficient_in(var, D) != Uk)
      fail(ErrorKind::Mismatch, "monic combination has an unexpected leading coefficient");
    Element w(ring, g);
    if (k > 0) w = w * invert_unit(Element(ring, U)).pow(k);
    return finish(w);
  }
}

std::optional<UnitShiftWitness> contains_unit_shift(const IdealHandle& I, const Element& v, const Level& target) {
  const RingPtr& ring = I.ring();
  if (!target.subring_of(I.level()) || target.present != I.level().present)
    fail(ErrorKind::LevelMismatch, "unit-shift level must be a localization-free variant of the ideal's level");
  if (!v.is_polynomial()) fail(ErrorKind::DomainMismatch, "unit-shift base must be a polynomial");
  const auto& pre = I.preimage();
  if (pre.empty()) return std::nullopt;

  const std::size_t n = ring->nvars();
  Polynomial U = target.unit(*ring);
  const bool aux = !U.is_constant();
  const std::size_t nv = aux ? n + 1 : n;
  if (nv > kMaxVars) fail(ErrorKind::Unsupported, "too many variables for unit-shift extraction");
  std::vector<Polynomial> inputs;
  for (const auto& p : pre) inputs.push_back(p.extend(nv));
  inputs.push_back(v.num().extend(nv));
  if (aux)
    inputs.push_back(Polynomial::constant(nv, ring->field(), 1) -
                     Polynomial::variable(nv, ring->field(), n) * U.extend(nv));
  GroebnerBasis gb = buchberger(inputs, TermOrder::grevlex(nv), true);
  if (!gb.is_unit()) return std::nullopt;

  // 1 = sum a_i p_i + b v + c (1 - w U): with w = 1/U, 1 - v*b(1/U) lies in I
  const Polynomial& b = (*gb.cofactors)[0][pre.size()];
  Element h = Element::zero(ring);
  if (aux) {
    Element uinv = invert_unit(Element(ring, U));
    for (std::uint32_t k = 0; k <= b.degree_in(n); ++k) {
      Polynomial ck = b.coefficient_in(n, k);
      if (!ck.is_zero()) h += Element(ring, ck.truncate(n)) * uinv.pow(k);
    }
  } else {
    h = Element(ring, b);
  }
  h = -h;
  UnitShiftWitness w{v, h};
  Element kappa = w.element();
  if (!target.contains(kappa) || !I.contains(kappa))
    fail(ErrorKind::Mismatch, "unit-shift witness failed its membership check");
  return w;
}

// ---------------------------------------------------------------------------
// Witnesses for fixed automorphisms

std::optional<NormalizationWitness> suslin_witness(const IdealHandle& I, const Automorphism& theta) {
  IdealHandle J = apply_automorphism(I, theta, false);
  auto m = contains_monic(J, theta.target);
  if (!m || m->degree == 0) return std::nullopt;
  NormalizationWitness w{theta, J, m, std::nullopt, J.level()};
  return w;
}

namespace {

Level without_y_n(const Ring& ring, const Level& level) {
  Level k = level;
  k.inverted_y &= ~(1u << (ring.n() - 1));
  k.name = level.name + "|" + ring.names()[ring.y(ring.n() - 1)];
  return k;
}

}  // namespace

std::optional<NormalizationWitness> laurent_witness(const IdealHandle& I, const Automorphism& theta) {
  const RingPtr& ring = I.ring();
  const std::size_t yn = ring->y(ring->n() - 1);
  IdealHandle J = apply_automorphism(I, theta, false);
  Level kp = without_y_n(*ring, J.level());
  Element vy = Element::var(ring, yn);
  auto shift = contains_unit_shift(J, vy, kp);
  if (!shift) return std::nullopt;
  IdealHandle Jk = contract_ideal(J, kp);

  Element g = shift->element();
  bool unit_lc = degree_in(g, yn) > 0 && is_coefficient_unit(leading_coefficient(g, yn), kp, yn);
  if (!unit_lc) {
    auto m = contains_monic(Jk, yn);
    if (!m || m->degree == 0) return std::nullopt;
    std::uint32_t E = degree_in(g, yn) + 1;
    g = g + vy.pow(E) * m->element;
  }
  // g = 1 + y_n h with h polynomial in y_n
  Element h = (g - Element::one(ring)) * invert_unit(vy);
  if (!kp.contains(h)) fail(ErrorKind::Mismatch, "laurent witness is not of the form 1 + y_n h");
  MonicWitness mw;
  mw.var = yn;
  mw.element = g;
  mw.degree = degree_in(g, yn);
  Element lc = leading_coefficient(g, yn);
  mw.unit_leading_coefficient = is_coefficient_unit(lc, kp, yn);
  mw.leading_coefficient_one = lc == Element::one(ring);
  NormalizationWitness w{theta, J, mw, UnitShiftWitness{vy, h}, kp};
  return w;
}

std::optional<NormalizationWitness> combined_witness(const IdealHandle& I, const Automorphism& theta,
                                                     bool want_monic, bool want_unit_shift) {
  const RingPtr& ring = I.ring();
  IdealHandle J = apply_automorphism(I, theta, false);
  Level bt = Level::BT(*ring);
  NormalizationWitness w{theta, J, std::nullopt, std::nullopt, bt};
  if (want_unit_shift) {
    w.unit_shift = contains_unit_shift(J, Element::f(ring), bt);
    if (!w.unit_shift) return std::nullopt;
  }
  if (want_monic) {
    IdealHandle Jb = contract_ideal(J, bt);
    w.monic = contains_monic(Jb, ring->t());
    if (!w.monic || w.monic->degree == 0) return std::nullopt;
  }
  return w;
}

// ---------------------------------------------------------------------------
// Searches

NormalizationWitness suslin_monicize(const IdealHandle& I, std::size_t target, const NormalizeOptions& opts) {
  require_height_above_d(I, "suslin_monicize");
  const Ring& ring = *I.ring();
  BudgetScope scope(opts.budget);
  auto shifted = shiftable_vars(ring, I.level(), target, true);
  std::size_t attempts = 0;
  std::string last = "identity";
  try {
    for (std::uint32_t N = 0; N <= opts.max_exponent; ++N) {
      for (const auto& ex : exponent_candidates(N, shifted.size())) {
        check_budget("suslin_monicize");
        Automorphism theta = Automorphism::suslin(ring, I.level(), target, shifted, ex);
        last = theta.describe(ring);
        ++attempts;
        if (auto w = suslin_witness(I, theta)) {
          w->exponent = N;
          w->attempts = attempts;
          return *w;
        }
        if (shifted.empty()) break;
      }
      if (shifted.empty()) break;
    }
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::BudgetExceeded)
      fail(ErrorKind::BudgetExceeded, std::string(e.what()) + " (last attempted: " + last + ")");
    throw;
  }
  exhausted("suslin_monicize", opts.max_exponent, last);
}

NormalizationWitness laurent_monicize(const IdealHandle& I, const NormalizeOptions& opts) {
  const Ring& ring = *I.ring();
  if (ring.n() == 0) fail(ErrorKind::Precondition, "laurent_monicize needs n > 0");
  if (!I.level().inverts_y(ring.n() - 1)) fail(ErrorKind::LevelMismatch, "laurent_monicize needs y_n inverted");
  require_height_above_d(I, "laurent_monicize");
  BudgetScope scope(opts.budget);
  auto shifted = shiftable_vars(ring, I.level(), ring.nvars(), opts.shift_t);
  std::size_t attempts = 0;
  std::string last = "identity";
  try {
    for (std::uint32_t N = 0; N <= opts.max_exponent; ++N) {
      for (const auto& ex : exponent_candidates(N, shifted.size())) {
        check_budget("laurent_monicize");
        std::vector<std::int32_t> lj(ring.n(), static_cast<std::int32_t>(N));
        lj.back() = 0;
        Automorphism theta = Automorphism::laurent(ring, I.level(), shifted, ex, ex, lj);
        last = theta.describe(ring);
        ++attempts;
        if (auto w = laurent_witness(I, theta)) {
          w->exponent = N;
          w->attempts = attempts;
          return *w;
        }
      }
    }
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::BudgetExceeded)
      fail(ErrorKind::BudgetExceeded, std::string(e.what()) + " (last attempted: " + last + ")");
    throw;
  }
  exhausted("laurent_monicize", opts.max_exponent, last);
}

NormalizationWitness combined_normalize(const IdealHandle& I, const NormalizeOptions& opts) {
  const Ring& ring = *I.ring();
  if (!(I.level() == Level::A(ring))) fail(ErrorKind::LevelMismatch, "combined_normalize works at level A");
  require_height_above_d(I, "combined_normalize");
  if (opts.want_monic && !tower_report(ring).f_monic_in_t)
    fail(ErrorKind::Unsupported, "a monic witness in t needs f monic in t");
  BudgetScope scope(opts.budget);
  std::size_t attempts = 0;
  std::string last = "identity";
  try {
    for (std::uint32_t N = 0; N <= opts.max_exponent; ++N) {
      for (const auto& ti : exponent_candidates(N, ring.m())) {
        check_budget("combined_normalize");
        std::vector<std::uint32_t> si = ti;
        if (opts.constraint_ratio > 0 && N > 0)
          for (auto& s : si) s = opts.constraint_ratio * N + 1;
        // uniform rescaling first, then rescaling that dominates the f-shifts
        std::vector<std::vector<std::int32_t>> ljs{std::vector<std::int32_t>(ring.n(), static_cast<std::int32_t>(N))};
        if (ring.n() > 0 && N > 0) {
          const auto top = static_cast<std::int32_t>(si.empty() ? N : *std::max_element(si.begin(), si.end()));
          ljs.emplace_back(ring.n(), top + 1);
        }
        for (const auto& lj : ljs) {
          Automorphism theta = Automorphism::combined(ring, ti, si, lj);
          last = theta.describe(ring);
          ++attempts;
          if (auto w = combined_witness(I, theta, opts.want_monic, opts.want_unit_shift)) {
            w->exponent = N;
            w->attempts = attempts;
            return *w;
          }
        }
      }
    }
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::BudgetExceeded)
      fail(ErrorKind::BudgetExceeded, std::string(e.what()) + " (last attempted: " + last + ")");
    throw;
  }
  exhausted("combined_normalize", opts.max_exponent, last);
}

bool verify_witness(const NormalizationWitness& w) {
  const IdealHandle& J = w.image;
  auto replay = [&](const Element& e) {
    if (!J.contains(e)) return false;
    auto cof = J.cofactors(e);
    if (!cof) return false;
    Element sum = Element::zero(J.ring());
    for (std::size_t i = 0; i < cof->size(); ++i) sum += (*cof)[i] * J.generators()[i];
    return sum == e;
  };
  if (w.monic) {
    if (!replay(w.monic->element)) return false;
    if (!w.witness_level.contains(w.monic->element)) return false;
    Element lc = leading_coefficient(w.monic->element, w.monic->var);
    if (!is_coefficient_unit(lc, w.witness_level, w.monic->var)) return false;
  }
  if (w.unit_shift) {
    if (!replay(w.unit_shift->element())) return false;
    if (!w.witness_level.contains(w.unit_shift->h)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// s^2-analytic endomorphism

Element AnalyticDelta::image_of_t() const {
  const RingPtr& ring = s.ring();
  Element t = Element::var(ring, ring->t());
  return t + s * s * b_prime * b_prime * (Element::one(ring) - t);
}

Element AnalyticDelta::apply(const Element& alpha) const {
  if (alpha.b() > 0) fail(ErrorKind::LevelMismatch, "the analytic map acts on B[t]");
  std::vector<std::optional<Element>> img(alpha.ring()->nvars());
  img[alpha.ring()->t()] = image_of_t();
  return substitute(alpha, img);
}

AnalyticDelta analytic_delta(const Element& b_prime, const Element& s) {
  const Level b = Level::B(*s.ring());
  if (!b.contains(b_prime) || !b.contains(s)) fail(ErrorKind::LevelMismatch, "b' and s must lie in B");
  return {b_prime, s};
}

}  // namespace towerlift
