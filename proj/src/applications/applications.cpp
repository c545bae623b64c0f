#include "towerlift/applications.hpp"

#include <algorithm>

#include "towerlift/budget.hpp"
#include "towerlift/errors.hpp"
#include "towerlift/ideal_ops.hpp"

namespace towerlift {

namespace {

std::uint32_t factorial(std::uint32_t k) {
  std::uint32_t out = 1;
  for (std::uint32_t i = 2; i <= k; ++i) out *= i;
  return out;
}

Element combine(const RingPtr& ring, const std::vector<Element>& c, const std::vector<Element>& gens) {
  Element s = Element::zero(ring);
  for (std::size_t i = 0; i < c.size() && i < gens.size(); ++i)
    if (!c[i].is_zero()) s += c[i] * gens[i];
  return s;
}

std::vector<Element> j_generators(const IdealHandle& I, const std::vector<Element>& gens, std::uint32_t power) {
  std::vector<Element> out(gens.begin(), gens.end() - 1);
  const IdealHandle P = ideal_power(I, power);
  for (const auto& g : P.generators())
    if (std::find(out.begin(), out.end(), g) == out.end()) out.push_back(g);
  return out;
}

std::optional<RadicalTranscript> radical_transcript(const IdealHandle& H, const Element& e, std::uint32_t max_exp) {
  if (!radical_member(e.num(), H.preimage())) return std::nullopt;
  Element power = e;
  for (std::uint32_t k = 1; k <= max_exp; ++k, power *= e) {
    check_budget("radical transcript");
    if (auto c = H.cofactors(power)) return RadicalTranscript{e, k, std::move(*c)};
  }
  return std::nullopt;
}

Matrix times(const Matrix& a, const Matrix& b, const RingPtr& ring) {
  Matrix out(a.size(), std::vector<Element>(b.empty() ? 0 : b[0].size(), Element::zero(ring)));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < b.size(); ++k)
      for (std::size_t j = 0; j < b[k].size(); ++j) out[i][j] += a[i][k] * b[k][j];
  return out;
}

std::vector<Element> apply(const Matrix& e, const std::vector<Element>& v, const RingPtr& ring) {
  std::vector<Element> out(e.size(), Element::zero(ring));
  for (std::size_t i = 0; i < e.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) out[i] += e[i][j] * v[j];
  return out;
}

void check_module(const RingPtr& ring, const std::optional<Matrix>& e, std::size_t rank) {
  if (!e) return;
  if (e->size() != rank) fail(ErrorKind::DomainMismatch, "idempotent size does not match the vector");
  for (const auto& row : *e)
    if (row.size() != rank) fail(ErrorKind::DomainMismatch, "idempotent must be square");
  if (times(*e, *e, ring) != *e) fail(ErrorKind::Precondition, "matrix is not idempotent");
}

}  // namespace

SetTheoreticCertificate settheoretic_generators(const IdealHandle& I, const std::vector<Element>& gens,
                                                const SetTheoreticOptions& opts) {
  const RingPtr& ring = I.ring();
  if (!(I.level() == Level::A(*ring))) fail(ErrorKind::LevelMismatch, "settheoretic_generators works over A");
  const std::size_t n = gens.size();
  if (n == 0) fail(ErrorKind::Precondition, "at least one generator is needed");
  if (n > opts.max_n)
    fail(ErrorKind::Unsupported, "n = " + std::to_string(n) + " exceeds the factorial limit " +
                                     std::to_string(opts.max_n) + " (the power (n-1)! grows too fast)");
  if (!I.is_proper()) fail(ErrorKind::ImproperIdeal, "settheoretic_generators: ideal is the unit ideal");
  const std::size_t h = height_at_level(I);
  if (h <= ring->d()) fail(ErrorKind::Precondition, "height " + std::to_string(h) + " is not above d");
  SurjectionModI2 s = check_surjection_mod_sq(I, gens);
  if (!s.valid)
    fail(ErrorKind::Precondition, "generators do not cover " + s.counterexample->to_string() + " modulo the square");

  BudgetScope scope(opts.lift.budget);
  SetTheoreticCertificate cert;
  cert.ring = ring;
  cert.ideal = I.generators();
  cert.gens = gens;
  cert.power = factorial(static_cast<std::uint32_t>(n - 1));
  cert.j_generators = j_generators(I, gens, cert.power);
  IdealHandle J(ring, I.level(), cert.j_generators);

  // J modulo J^2 is generated by f_1..f_{n-1} and f_n^{(n-1)!}
  std::vector<Element> targets(gens.begin(), gens.end() - 1);
  targets.push_back(gens.back().pow(cert.power));
  SurjectionModI2 sj = check_surjection_mod_sq(J, targets);
  if (!sj.valid) fail(ErrorKind::Mismatch, "J/J^2 is not generated by the expected elements");
  cert.lift = lift_pipeline(J, targets, opts.lift);

  IdealHandle H(ring, I.level(), cert.lift.lifted);
  for (const auto& f : gens) {
    auto tr = radical_transcript(H, f, opts.max_radical_exponent);
    if (!tr) fail(ErrorKind::Mismatch, f.to_string() + " is not in the radical of the produced generators");
    cert.gens_in_radical.push_back(std::move(*tr));
  }
  for (const auto& hj : cert.lift.lifted) {
    auto c = I.cofactors(hj);
    if (!c) fail(ErrorKind::Mismatch, "produced generator " + hj.to_string() + " left the ideal");
    cert.h_in_ideal.push_back({hj, 1, std::move(*c)});
  }
  return cert;
}

Verdict verify_settheoretic(const SetTheoreticCertificate& cert) {
  const RingPtr& ring = cert.ring;
  auto bad = [](std::string why) { return Verdict{false, std::move(why)}; };
  const std::size_t n = cert.gens.size();
  if (n == 0 || cert.power != factorial(static_cast<std::uint32_t>(n - 1))) return bad("power");
  const Level A = Level::A(*ring);
  IdealHandle I(ring, A, cert.ideal);
  if (cert.j_generators != j_generators(I, cert.gens, cert.power)) return bad("j_generators");
  if (cert.lift.ideal != cert.j_generators) return bad("lift.ideal");
  if (cert.lift.lifted.size() != n) return bad("lift.lifted");
  Verdict lv = verify_lift(cert.lift);
  if (!lv.ok) return bad("lift." + lv.failure);
  if (cert.gens_in_radical.size() != n || cert.h_in_ideal.size() != n) return bad("radical transcripts");
  for (std::size_t i = 0; i < n; ++i) {
    const auto& tr = cert.gens_in_radical[i];
    if (tr.element != cert.gens[i] || tr.exponent == 0 ||
        combine(ring, tr.cofactors, cert.lift.lifted) != tr.element.pow(tr.exponent))
      return bad("gens_in_radical[" + std::to_string(i) + "]");
    const auto& hi = cert.h_in_ideal[i];
    if (hi.element != cert.lift.lifted[i] || hi.exponent == 0 ||
        combine(ring, hi.cofactors, cert.ideal) != hi.element.pow(hi.exponent))
      return bad("h_in_ideal[" + std::to_string(i) + "]");
  }
  // second route
  IdealHandle H(ring, A, cert.lift.lifted);
  for (std::size_t i = 0; i < n; ++i) {
    if (!radical_member(cert.gens[i].num(), H.preimage())) return bad("groebner: radical of the generators");
    if (!I.contains(cert.lift.lifted[i])) return bad("groebner: generator outside I");
  }
  return {};
}

LiftCertificate euler_trivial_witness(const IdealHandle& I, const std::vector<Element>& gens, const LiftOptions& opts) {
  const Ring& ring = *I.ring();
  if (!I.is_proper()) fail(ErrorKind::ImproperIdeal, "euler_trivial_witness: ideal is the unit ideal");
  const long p = static_cast<long>(gens.size());
  const long h = static_cast<long>(height_at_level(I));
  if (h != p)
    fail(ErrorKind::NotEulerDatum, "height " + std::to_string(h) + " differs from the rank " + std::to_string(p));
  const long dimA = static_cast<long>(ring.nvars());
  const long bound = std::max(dimA - p + 3, static_cast<long>(ring.d()) + 1);
  if (p < bound)
    fail(ErrorKind::Precondition, "rank " + std::to_string(p) + " is below the bound " + std::to_string(bound));
  return lift_T2(I, gens, opts);
}

UnimodularCertificate unimodular_certify(const RingPtr& ring, const std::optional<Matrix>& idempotent,
                                         const std::vector<Element>& v) {
  check_module(ring, idempotent, v.size());
  const Level A = Level::A(*ring);
  for (const auto& x : v)
    if (!A.contains(x)) fail(ErrorKind::LevelMismatch, "vector entries must lie in A");
  if (idempotent && apply(*idempotent, v, ring) != v) fail(ErrorKind::NotInModule, "vector is not in the module");
  UnimodularCertificate cert{ring, idempotent, v, false, {}};
  IdealHandle O(ring, A, v);
  if (auto c = O.cofactors(Element::one(ring))) {
    cert.unimodular = true;
    cert.cofactors = std::move(*c);
  }
  return cert;
}

std::optional<UnimodularCertificate> unimodular_search(const RingPtr& ring, const std::optional<Matrix>& idempotent,
                                                       std::size_t rank, std::uint32_t max_degree) {
  check_module(ring, idempotent, rank);
  std::vector<Element> pool{Element::zero(ring)};
  std::vector<Monomial> monos{Monomial()};
  for (std::uint32_t deg = 1; deg <= max_degree; ++deg) {
    std::vector<Monomial> next;
    for (const auto& m : monos)
      if (m.degree() == deg - 1)
        for (std::size_t v = 0; v < ring->nvars(); ++v) {
          bool ok = true;
          for (std::size_t w = v + 1; w < ring->nvars(); ++w)
            if (m[w] > 0) ok = false;
          if (ok) next.push_back(m * Monomial::variable(v));
        }
    monos.insert(monos.end(), next.begin(), next.end());
  }
  for (const auto& m : monos)
    pool.emplace_back(ring, Polynomial::term(ring->nvars(), Scalar::one(ring->field()), m));
  pool.push_back(invert_unit(Element::f(ring)));

  std::vector<std::size_t> idx(rank, 0);
  while (true) {
    check_budget("unimodular_search");
    std::vector<Element> u;
    for (auto i : idx) u.push_back(pool[i]);
    std::vector<Element> v = idempotent ? apply(*idempotent, u, ring) : u;
    if (std::any_of(v.begin(), v.end(), [](const Element& x) { return !x.is_zero(); })) {
      UnimodularCertificate c = unimodular_certify(ring, idempotent, v);
      if (c.unimodular) return c;
    }
    std::size_t k = 0;
    while (k < rank && ++idx[k] == pool.size()) idx[k++] = 0;
    if (k == rank) return std::nullopt;
  }
}

Verdict verify_unimodular(const UnimodularCertificate& cert) {
  auto bad = [](std::string why) { return Verdict{false, std::move(why)}; };
  const RingPtr& ring = cert.ring;
  if (cert.idempotent) {
    if (times(*cert.idempotent, *cert.idempotent, ring) != *cert.idempotent) return bad("idempotent");
    if (apply(*cert.idempotent, cert.v, ring) != cert.v) return bad("v");
  }
  IdealHandle O(ring, Level::A(*ring), cert.v);
  if (cert.unimodular) {
    if (cert.cofactors.size() != cert.v.size() || combine(ring, cert.cofactors, cert.v) != Element::one(ring))
      return bad("cofactors");
    if (O.is_proper()) return bad("groebner: order ideal");
  } else if (!O.is_proper()) {
    return bad("groebner: order ideal");
  }
  return {};
}

}  // namespace towerlift
