#include "towerlift/lifting.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

#include "towerlift/budget.hpp"
#include "towerlift/errors.hpp"

namespace towerlift {

namespace {

/// t -> 1 for elements without f in the denominator.
Element eval_t1(const Element& e) {
  if (e.b() > 0) return evaluate_at_one(e);
  const Ring& ring = *e.ring();
  return Element(e.ring(), e.num().evaluate(ring.t(), Scalar::one(ring.field())), e.a(), 0);
}

Level without_t(const Ring& ring, const Level& level) {
  Level out = level;
  out.present &= ~(1u << ring.t());
  out.name = level.name + "(t=1)";
  return out;
}

std::vector<Element> pair_products(const std::vector<Element>& q) {
  std::vector<Element> out;
  for (std::size_t j = 0; j < q.size(); ++j)
    for (std::size_t k = j; k < q.size(); ++k) {
      Element p = q[j] * q[k];
      if (!p.is_zero() && std::find(out.begin(), out.end(), p) == out.end()) out.push_back(p);
    }
  return out;
}

/// Sum of c_i * gens_i.
Element combine(const RingPtr& ring, const std::vector<Element>& c, const std::vector<Element>& gens) {
  Element s = Element::zero(ring);
  for (std::size_t i = 0; i < c.size() && i < gens.size(); ++i)
    if (!c[i].is_zero()) s += c[i] * gens[i];
  return s;
}

/// Element of q-products lifting alpha from the t = 1 fibre, or nullopt.
std::optional<Element> lift_square_correction(const RingPtr& ring, const Level& fibre, const std::vector<Element>& q,
                                              const Element& alpha) {
  if (alpha.is_zero()) return Element::zero(ring);
  std::vector<Element> q1;
  for (const auto& x : q) q1.push_back(eval_t1(x));
  std::vector<Element> prods1, prods;
  for (std::size_t j = 0; j < q.size(); ++j)
    for (std::size_t k = j; k < q.size(); ++k) {
      prods1.push_back(q1[j] * q1[k]);
      prods.push_back(q[j] * q[k]);
    }
  IdealHandle H(ring, fibre, prods1);
  auto cof = H.cofactors(alpha);
  if (!cof) return std::nullopt;
  return combine(ring, *cof, prods);
}

std::string join(const std::vector<Element>& v) {
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i].to_string();
  return os.str();
}

}  // namespace

std::vector<Element> square_generators(const IdealHandle& I) {
  std::vector<Element> nz;
  for (const auto& g : I.generators())
    if (!g.is_zero()) nz.push_back(g);
  return pair_products(nz);
}

SurjectionModI2 check_surjection_mod_sq(const IdealHandle& I, const std::vector<Element>& gens) {
  for (const auto& g : gens)
    if (!I.contains(g)) fail(ErrorKind::NotInIdeal, g.to_string() + " is not in the ideal");
  SurjectionModI2 out;
  out.gens = gens;
  out.square_generators = square_generators(I);
  std::vector<Element> all = gens;
  all.insert(all.end(), out.square_generators.begin(), out.square_generators.end());
  IdealHandle H(I.ring(), I.level(), all);
  for (const auto& q : I.generators()) {
    auto c = H.cofactors(q);
    if (!c) {
      out.counterexample = q;
      return out;
    }
    out.transcript.push_back(std::move(*c));
  }
  out.valid = true;
  return out;
}

// ---------------------------------------------------------------------------
// Fiber product gluing

GlueResult fiber_glue(const RingPtr& ring, const Level& level, const LocalizedMatrix& phi, const LocalizedMatrix& psi) {
  if (phi.num.size() != psi.num.size()) fail(ErrorKind::DomainMismatch, "glued matrices differ in shape");
  for (std::size_t r = 0; r < phi.num.size(); ++r)
    if (phi.num[r].size() != psi.num[r].size()) fail(ErrorKind::DomainMismatch, "glued matrices differ in shape");
  const Element F = phi.base.pow(phi.power);
  const Element G = psi.base.pow(psi.power);
  for (std::size_t r = 0; r < phi.num.size(); ++r)
    for (std::size_t c = 0; c < phi.num[r].size(); ++c)
      if (phi.num[r][c] * G != psi.num[r][c] * F)
        fail(ErrorKind::Mismatch, "the two maps disagree on the overlap");

  IdealHandle fg(ring, level, std::vector<Element>{phi.base, psi.base});
  auto ab = fg.cofactors(Element::one(ring));
  if (!ab) fail(ErrorKind::Precondition, "the localizing elements are not comaximal");
  const Element af = (*ab)[0] * phi.base;
  const Element bg = (*ab)[1] * psi.base;

  // (af + bg)^N with N = a + b - 1; each term is divisible by f^a or by g^b
  const std::uint32_t a = phi.power, b = psi.power;
  GlueResult out{{}, Element::zero(ring), Element::zero(ring)};
  if (a + b == 0) {
    out.u = Element::one(ring);
  } else {
    const std::uint32_t N = a + b - 1;
    if (N > 60) fail(ErrorKind::Unsupported, "localization powers too large to glue");
    long binom = 1;
    for (std::uint32_t i = 0; i <= N; ++i) {
      Scalar c(ring->field(), binom);
      if (i >= a)
        out.u += ((*ab)[0].pow(i) * phi.base.pow(i - a) * bg.pow(N - i)).scaled(c);
      else
        out.v += (af.pow(i) * (*ab)[1].pow(N - i) * psi.base.pow(N - i - b)).scaled(c);
      binom = binom * static_cast<long>(N - i) / static_cast<long>(i + 1);
    }
  }
  if (out.u * F + out.v * G != Element::one(ring)) fail(ErrorKind::Mismatch, "partition of unity failed");

  for (std::size_t r = 0; r < phi.num.size(); ++r) {
    std::vector<Element> row;
    for (std::size_t c = 0; c < phi.num[r].size(); ++c) {
      Element x = out.u * phi.num[r][c] + out.v * psi.num[r][c];
      if (!level.contains(x) || x * F != phi.num[r][c] || x * G != psi.num[r][c])
        fail(ErrorKind::Mismatch, "glued matrix does not localize back to its inputs");
      row.push_back(x);
    }
    out.xi.push_back(std::move(row));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Perturbation search

namespace {

class PerturbationSearch {
 public:
  PerturbationSearch(const IdealHandle& K, std::vector<Element> f, const IdealHandle& M, const LiftOptions& opts)
      : K_(K), ring_(K.ring()), f_(std::move(f)), opts_(opts), rng_(opts.seed) {
    for (const auto& p : M.preimage()) mgens_.emplace_back(ring_, p);
    M_ = &M;
    for (std::size_t v = 0; v < ring_->nvars(); ++v)
      if (K.level().has_var(v)) vars_.push_back(v);
  }

  std::optional<std::vector<Element>> run(SearchRecord& rec) {
    const std::size_t p = f_.size();
    std::vector<Element> zero(p, Element::zero(ring_));
    if (accept(zero, rec, "zero")) return zero;

    for (const TermOrder& ord : {TermOrder::grevlex(ring_->nvars()), TermOrder::lex(ring_->nvars())}) {
      const GroebnerBasis& gb = M_->preimage_gb(ord);
      std::vector<Element> reduced(p, Element::zero(ring_));
      for (std::size_t i = 0; i < p; ++i) reduced[i] = reduction(f_[i], gb);
      for (std::size_t i = p; i-- > 0;) {
        std::vector<Element> eps = zero;
        eps[i] = reduced[i];
        if (accept(eps, rec, "normal-form")) return eps;
      }
      if (accept(reduced, rec, "normal-form")) return reduced;
    }

    std::uint32_t D = 0, H = 1;
    while (true) {
      const std::uint32_t d = std::min(D, opts_.max_perturbation_degree);
      const std::uint32_t h = std::min(H, opts_.max_coefficient);
      rec.rounds.push_back({d, h, 0});
      if (auto eps = sweep(d, h, rec)) return eps;
      if (auto eps = sample(d, h, rec)) return eps;
      if (d >= opts_.max_perturbation_degree && h >= opts_.max_coefficient) break;
      D = std::max<std::uint32_t>(1, 2 * D);
      H *= 2;
    }
    return std::nullopt;
  }

 private:
  /// -(f_i - NF(f_i)), when f_i has a unit denominator at the level.
  Element reduction(const Element& fi, const GroebnerBasis& gb) const {
    Element den(ring_, fi.denominator());
    if (!K_.level().contains(invert_unit(den))) return Element::zero(ring_);
    Polynomial r = normal_form(fi.num(), gb);
    Element eps = Element(ring_, r, fi.a(), fi.b()) - fi;
    return M_->contains(eps) ? eps : Element::zero(ring_);
  }

  bool accept(const std::vector<Element>& eps, SearchRecord& rec, const char* stage) {
    std::string key;
    for (const auto& e : eps) key += e.to_string() + "|";
    if (!seen_.insert(key).second) return false;
    check_budget("mandal_lift");
    ++count_;
    if (!rec.rounds.empty()) ++rec.rounds.back().candidates;
    std::vector<Element> g;
    for (std::size_t i = 0; i < f_.size(); ++i) g.push_back(f_[i] + eps[i]);
    IdealHandle G(ring_, K_.level(), g);
    if (!ideal_equal(G, K_)) return false;
    rec.stage = stage;
    rec.candidate = count_;
    return true;
  }

  std::vector<Monomial> monomials(std::uint32_t max_deg) const {
    std::vector<Monomial> out{Monomial()};
    for (std::uint32_t deg = 1; deg <= max_deg; ++deg) {
      std::vector<Monomial> next;
      for (const auto& m : out)
        if (m.degree() == deg - 1)
          for (auto v : vars_) {
            // nondecreasing variable index avoids duplicates
            bool ok = true;
            for (std::size_t w = v + 1; w < ring_->nvars(); ++w)
              if (m[w] > 0) ok = false;
            if (ok) next.push_back(m * Monomial::variable(v));
          }
      out.insert(out.end(), next.begin(), next.end());
    }
    return out;
  }

  Element term(long c, const Monomial& m, std::size_t q) const {
    return Element(ring_, Polynomial::term(ring_->nvars(), Scalar(ring_->field(), c), m)) * mgens_[q];
  }

  std::optional<std::vector<Element>> sweep(std::uint32_t D, std::uint32_t H, SearchRecord& rec) {
    const std::size_t p = f_.size();
    const auto monos = monomials(std::min<std::uint32_t>(D, 2));
    const long hmax = std::min<long>(H, 2);
    for (std::size_t i = p; i-- > 0;)
      for (std::size_t q = 0; q < mgens_.size(); ++q)
        for (const auto& m : monos)
          for (long c = 1; c <= hmax; ++c)
            for (long s : {c, -c}) {
              std::vector<Element> eps(p, Element::zero(ring_));
              eps[i] = term(s, m, q);
              if (accept(eps, rec, "sweep")) return eps;
            }
    return std::nullopt;
  }

  std::optional<std::vector<Element>> sample(std::uint32_t D, std::uint32_t H, SearchRecord& rec) {
    const std::size_t p = f_.size();
    const auto monos = monomials(D);
    for (std::uint32_t s = 0; s < opts_.samples_per_round; ++s) {
      std::vector<Element> eps(p, Element::zero(ring_));
      for (std::size_t i = 0; i < p; ++i) {
        if (rng_() % 2 == 0) continue;
        const std::size_t terms = 1 + rng_() % 2;
        for (std::size_t k = 0; k < terms; ++k) {
          long c = 1 + static_cast<long>(rng_() % H);
          if (rng_() % 2) c = -c;
          const Monomial& m = monos[rng_() % monos.size()];
          eps[i] += term(c, m, rng_() % mgens_.size());
        }
      }
      if (accept(eps, rec, "random")) return eps;
    }
    return std::nullopt;
  }

  const IdealHandle& K_;
  RingPtr ring_;
  std::vector<Element> f_;
  const IdealHandle* M_ = nullptr;
  LiftOptions opts_;
  std::mt19937_64 rng_;
  std::vector<Element> mgens_;
  std::vector<std::size_t> vars_;
  std::set<std::string> seen_;
  std::size_t count_ = 0;
};

}  // namespace

MandalResult mandal_lift(const IdealHandle& K, const std::vector<Element>& gens, std::size_t monic_var,
                         const std::optional<std::vector<Element>>& boundary, const LiftOptions& opts) {
  const RingPtr& ring = K.ring();
  const Level& level = K.level();
  if (level.invert_f) fail(ErrorKind::LevelMismatch, "mandal_lift works over a ring where f is not inverted");
  if (!K.is_proper()) fail(ErrorKind::ImproperIdeal, "mandal_lift: ideal is the unit ideal");
  auto monic = contains_monic(K, monic_var);
  if (!monic || monic->degree == 0)
    fail(ErrorKind::Precondition, "mandal_lift: no monic element in " + ring->names()[monic_var]);
  const std::size_t qdim = K.quotient_dimension();
  if (gens.size() < qdim + 2)
    fail(ErrorKind::Precondition, "mandal_lift: " + std::to_string(gens.size()) + " generators, need at least " +
                                      std::to_string(qdim + 2));
  SurjectionModI2 surj = check_surjection_mod_sq(K, gens);
  if (!surj.valid)
    fail(ErrorKind::Precondition, "generators do not cover " + surj.counterexample->to_string() + " modulo the square");

  std::vector<Element> f = gens;
  std::vector<Element> mgens = square_generators(K);
  if (boundary) {
    if (boundary->size() != gens.size()) fail(ErrorKind::DomainMismatch, "one boundary value per generator");
    if (!level.has_var(ring->t())) fail(ErrorKind::LevelMismatch, "boundary lifting needs t");
    Level fibre = without_t(*ring, level);
    std::vector<Element> k1;
    for (const auto& q : K.generators()) k1.push_back(eval_t1(q));
    for (const auto& d : *boundary)
      if (!fibre.contains(d)) fail(ErrorKind::LevelMismatch, "boundary value " + d.to_string() + " involves t");
    if (!ideal_equal(IdealHandle(ring, fibre, *boundary), IdealHandle(ring, fibre, k1)))
      fail(ErrorKind::Precondition, "boundary values do not generate the ideal at t = 1");
    for (std::size_t i = 0; i < f.size(); ++i) {
      auto corr = lift_square_correction(ring, fibre, K.generators(), (*boundary)[i] - eval_t1(f[i]));
      if (!corr)
        fail(ErrorKind::IncompatibleBoundary, "boundary value " + std::to_string(i + 1) +
                                                   " disagrees with the generator modulo the square at t = 1");
      f[i] += *corr;
    }
    Element tm1 = Element::var(ring, ring->t()) - Element::one(ring);
    for (auto& g : mgens) g = g * tm1;
  }
  IdealHandle M(ring, level, mgens);

  MandalResult out;
  out.monic = *monic;
  PerturbationSearch search(K, f, M, opts);
  auto eps = search.run(out.search);
  if (!eps) {
    const auto& r = out.search.rounds.back();
    fail(ErrorKind::BudgetExceeded, "mandal_lift: no certified lift up to perturbation degree " +
                                        std::to_string(r.degree) + ", height " + std::to_string(r.height));
  }
  for (std::size_t i = 0; i < f.size(); ++i) {
    out.lifted.push_back(f[i] + (*eps)[i]);
    out.epsilons.push_back(out.lifted.back() - gens[i]);
  }
  IdealHandle K2(ring, level, square_generators(K));
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (!K2.contains(out.epsilons[i])) fail(ErrorKind::Mismatch, "perturbation left the square of the ideal");
    if (boundary && eval_t1(out.lifted[i]) != (*boundary)[i]) fail(ErrorKind::Mismatch, "boundary value lost");
  }
  return out;
}

// ---------------------------------------------------------------------------
// Pipelines over A

namespace {

void require_level_A(const IdealHandle& I) {
  if (!(I.level() == Level::A(*I.ring()))) fail(ErrorKind::LevelMismatch, "lifting works over A");
}

void require_covering(const IdealHandle& I, const std::vector<Element>& gens, const char* stage) {
  SurjectionModI2 s = check_surjection_mod_sq(I, gens);
  if (!s.valid)
    fail(ErrorKind::Mismatch, std::string(stage) + ": generators no longer cover " + s.counterexample->to_string() +
                                  " modulo the square");
}

LiftCertificate run_pipeline(const IdealHandle& I, const std::vector<Element>& f, const LiftOptions& opts,
                             bool boundary) {
  const RingPtr& ring = I.ring();
  LiftCertificate cert;
  cert.ring = ring;
  cert.seed = opts.seed;

  if (ideal_equal(IdealHandle(ring, I.level(), f), I)) {
    cert.stages.push_back({"identity", std::nullopt, 0, "generators already generate the ideal"});
    cert.lifted = f;
    return cert;
  }

  NormalizeOptions nopts;
  nopts.max_exponent = opts.max_exponent;
  nopts.budget = opts.budget;
  nopts.want_monic = false;
  NormalizationWitness w1 = combined_normalize(I, nopts);
  cert.stages.push_back({"combined", w1.theta, w1.exponent, "1 + f*h with h = " + w1.unit_shift->h.to_string()});

  std::vector<Element> f2;
  std::uint32_t k = 0;
  for (const auto& x : f) {
    f2.push_back(w1.theta.apply(x));
    k = std::max(k, f2.back().b());
  }
  const Element fk = Element::f(ring).pow(k);
  for (auto& x : f2) x = x * fk;
  IdealHandle J = contract_ideal(w1.image, Level::BT(*ring));
  cert.stages.push_back({"contract-f", std::nullopt, k, "generators multiplied by f^" + std::to_string(k)});
  require_covering(J, f2, "contract-f");

  std::vector<Element> f4;
  std::optional<IdealHandle> K;
  std::size_t monic_var = ring->t();
  std::optional<Automorphism> theta2;
  std::uint32_t l = 0;
  NormalizeOptions n2 = nopts;
  n2.want_monic = true;
  n2.shift_t = !boundary;
  if (ring->n() > 0) {
    NormalizationWitness w2 = laurent_monicize(J, n2);
    theta2 = w2.theta;
    cert.stages.push_back({"laurent", w2.theta, w2.exponent, "1 + y_n*h with h = " + w2.unit_shift->h.to_string()});
    const Level kl = Level::K(*ring);
    const Element yn = Element::var(ring, ring->y(ring->n() - 1));
    std::vector<Element> f3;
    for (const auto& x : f2) f3.push_back(w2.theta.apply(x));
    auto fits = [&](std::uint32_t e) {
      for (const auto& x : f3)
        if (!kl.contains(x * yn.pow(e))) return false;
      return true;
    };
    while (!fits(l)) ++l;
    for (const auto& x : f3) f4.push_back(x * yn.pow(l));
    K = contract_ideal(w2.image, kl);
    monic_var = ring->y(ring->n() - 1);
    cert.stages.push_back({"contract-y", std::nullopt, l, "generators multiplied by y_n^" + std::to_string(l)});
  } else {
    NormalizationWitness w2 = suslin_monicize(J, ring->t(), n2);
    theta2 = w2.theta;
    cert.stages.push_back({"suslin", w2.theta, w2.exponent, "monic " + w2.monic->element.to_string()});
    for (const auto& x : f2) f4.push_back(w2.theta.apply(x));
    K = w2.image;
  }
  require_covering(*K, f4, "contract");

  std::optional<std::vector<Element>> bvals;
  if (boundary) {
    bvals.emplace();
    for (const auto& x : f4) bvals->push_back(eval_t1(x));
  }
  MandalResult m = mandal_lift(*K, f4, monic_var, bvals, opts);
  cert.stages.push_back({"mandal", std::nullopt, 0, "search stage " + m.search.stage});
  cert.search = m.search;

  const Element yinv_l =
      ring->n() > 0 ? invert_unit(Element::var(ring, ring->y(ring->n() - 1))).pow(l) : Element::one(ring);
  const Element finv_k = invert_unit(Element::f(ring)).pow(k);
  const Automorphism inv2 = theta2->inverse();
  const Automorphism inv1 = w1.theta.inverse();
  for (const auto& g : m.lifted) cert.lifted.push_back(inv1.apply(inv2.apply(g * yinv_l) * finv_k));
  return cert;
}

void finalize(LiftCertificate& cert, const IdealHandle& I, const std::vector<Element>& gens,
              const std::optional<std::vector<Element>>& delta) {
  const RingPtr& ring = I.ring();
  cert.ideal = I.generators();
  cert.gens = gens;
  cert.boundary = delta;
  cert.square_generators = square_generators(I);
  IdealHandle I2(ring, I.level(), cert.square_generators);
  IdealHandle G(ring, I.level(), cert.lifted);
  cert.epsilons.clear();
  for (std::size_t i = 0; i < gens.size(); ++i) {
    cert.epsilons.push_back(cert.lifted[i] - gens[i]);
    auto ce = I2.cofactors(cert.epsilons.back());
    if (!ce) fail(ErrorKind::Mismatch, "lift differs from the generators outside the square of the ideal");
    cert.epsilon_cofactors.push_back(std::move(*ce));
    auto cm = I.cofactors(cert.lifted[i]);
    if (!cm) fail(ErrorKind::Mismatch, "lifted generator left the ideal");
    cert.membership_cofactors.push_back(std::move(*cm));
  }
  for (const auto& q : cert.ideal) {
    auto cg = G.cofactors(q);
    if (!cg) fail(ErrorKind::Mismatch, "lifted generators do not generate the ideal");
    cert.generation_cofactors.push_back(std::move(*cg));
  }
  if (delta)
    for (std::size_t i = 0; i < gens.size(); ++i)
      if (evaluate_at_one(cert.lifted[i]) != (*delta)[i]) fail(ErrorKind::Mismatch, "boundary value lost");
}

}  // namespace

LiftCertificate lift_pipeline(const IdealHandle& I, const std::vector<Element>& gens, const LiftOptions& opts) {
  require_level_A(I);
  BudgetScope scope(opts.budget);
  LiftCertificate cert = run_pipeline(I, gens, opts, false);
  finalize(cert, I, gens, std::nullopt);
  return cert;
}

LiftCertificate lift_T2(const IdealHandle& I, const std::vector<Element>& gens, const LiftOptions& opts) {
  require_level_A(I);
  const Ring& ring = *I.ring();
  if (!I.is_proper()) fail(ErrorKind::ImproperIdeal, "lift_T2: ideal is the unit ideal");
  const std::size_t h = height_at_level(I);
  if (h < ring.d() + 1) fail(ErrorKind::Precondition, "lift_T2: height " + std::to_string(h) + " is below d + 1");
  const long p = static_cast<long>(gens.size());
  const long dimA = static_cast<long>(ring.nvars());
  const long bound = std::max(dimA - p + 2, static_cast<long>(ring.d()) + 1);
  if (p < bound)
    fail(ErrorKind::Precondition, "lift_T2: " + std::to_string(p) + " generators, need at least " +
                                      std::to_string(bound));
  SurjectionModI2 s = check_surjection_mod_sq(I, gens);
  if (!s.valid)
    fail(ErrorKind::Precondition, "generators do not cover " + s.counterexample->to_string() + " modulo the square");
  return lift_pipeline(I, gens, opts);
}

LiftCertificate lift_T3(const IdealHandle& I, const std::vector<Element>& gens, const std::vector<Element>& delta,
                        const LiftOptions& opts) {
  require_level_A(I);
  const RingPtr& ring = I.ring();
  TowerReport rep = tower_report(*ring);
  if (!rep.f_monic_in_t || !rep.f_at_one_unit)
    fail(ErrorKind::Precondition, "lift_T3 needs f monic in t with f(1) a unit");
  if (!I.is_proper()) fail(ErrorKind::ImproperIdeal, "lift_T3: ideal is the unit ideal");
  const std::size_t h = height_at_level(I);
  if (h < ring->d() + 1) fail(ErrorKind::Precondition, "lift_T3: height " + std::to_string(h) + " is below d + 1");
  const std::size_t bound = std::max(ring->d() + 1, I.quotient_dimension() + 2);
  if (gens.size() < bound)
    fail(ErrorKind::Precondition, "lift_T3: " + std::to_string(gens.size()) + " generators, need at least " +
                                      std::to_string(bound));
  if (delta.size() != gens.size()) fail(ErrorKind::DomainMismatch, "one boundary value per generator");
  const Level B = Level::B(*ring);
  for (const auto& d : delta)
    if (!B.contains(d)) fail(ErrorKind::LevelMismatch, "boundary value " + d.to_string() + " is not in B");
  SurjectionModI2 s = check_surjection_mod_sq(I, gens);
  if (!s.valid)
    fail(ErrorKind::Precondition, "generators do not cover " + s.counterexample->to_string() + " modulo the square");

  std::vector<Element> i1;
  for (const auto& q : I.generators()) i1.push_back(evaluate_at_one(q));
  if (!ideal_equal(IdealHandle(ring, B, delta), IdealHandle(ring, B, i1)))
    fail(ErrorKind::Precondition, "boundary values do not generate the ideal at t = 1 (" + join(delta) + ")");

  BudgetScope scope(opts.budget);
  std::vector<Element> corrected = gens;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    auto corr = lift_square_correction(ring, B, I.generators(), delta[i] - evaluate_at_one(gens[i]));
    if (!corr)
      fail(ErrorKind::IncompatibleBoundary, "boundary value " + std::to_string(i + 1) +
                                                 " disagrees with the generator modulo the square at t = 1");
    corrected[i] += *corr;
  }
  LiftCertificate cert = run_pipeline(I, corrected, opts, true);
  finalize(cert, I, gens, delta);
  return cert;
}

Verdict verify_lift(const LiftCertificate& cert) {
  const RingPtr& ring = cert.ring;
  const std::size_t p = cert.gens.size();
  auto bad = [](std::string why) { return Verdict{false, std::move(why)}; };
  if (cert.lifted.size() != p || cert.epsilons.size() != p || cert.epsilon_cofactors.size() != p ||
      cert.membership_cofactors.size() != p || cert.generation_cofactors.size() != cert.ideal.size())
    return bad("shape");
  const Level A = Level::A(*ring);
  std::vector<Element> nz;
  for (const auto& q : cert.ideal)
    if (!q.is_zero()) nz.push_back(q);
  if (pair_products(nz) != cert.square_generators) return bad("square_generators");
  auto in_A = [&](const std::vector<Element>& v) {
    return std::all_of(v.begin(), v.end(), [&](const Element& e) { return A.contains(e); });
  };
  for (std::size_t i = 0; i < p; ++i) {
    const std::string idx = "[" + std::to_string(i) + "]";
    if (cert.epsilons[i] != cert.lifted[i] - cert.gens[i]) return bad("epsilons" + idx);
    if (!in_A(cert.epsilon_cofactors[i]) ||
        combine(ring, cert.epsilon_cofactors[i], cert.square_generators) != cert.epsilons[i])
      return bad("epsilon_cofactors" + idx);
    if (!in_A(cert.membership_cofactors[i]) ||
        combine(ring, cert.membership_cofactors[i], cert.ideal) != cert.lifted[i])
      return bad("membership_cofactors" + idx);
  }
  for (std::size_t j = 0; j < cert.ideal.size(); ++j)
    if (!in_A(cert.generation_cofactors[j]) ||
        combine(ring, cert.generation_cofactors[j], cert.lifted) != cert.ideal[j])
      return bad("generation_cofactors[" + std::to_string(j) + "]");
  if (cert.boundary) {
    if (cert.boundary->size() != p) return bad("boundary");
    for (std::size_t i = 0; i < p; ++i)
      if (evaluate_at_one(cert.lifted[i]) != (*cert.boundary)[i]) return bad("boundary[" + std::to_string(i) + "]");
  }

  // second route: fresh Gröbner computations
  IdealHandle I(ring, A, cert.ideal);
  IdealHandle I2(ring, A, cert.square_generators);
  for (std::size_t i = 0; i < p; ++i)
    if (!I2.contains(cert.epsilons[i])) return bad("groebner: epsilon[" + std::to_string(i) + "] not in I^2");
  if (!ideal_equal(IdealHandle(ring, A, cert.lifted), I)) return bad("groebner: lifted generators");
  return {};
}

}  // namespace towerlift
