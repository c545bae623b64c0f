#include "towerlift/tower.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

#include "towerlift/errors.hpp"
#include "towerlift/ideal_ops.hpp"
#include "towerlift/parse.hpp"

namespace towerlift {

RingPtr make_tower(std::size_t d, std::size_t m, std::size_t n, const std::string& f_text, Field field) {
  if (d + m + n + 1 > kMaxVars) fail(ErrorKind::InvalidTower, "tower has too many variables");
  Ring probe(d, m, n, Polynomial::constant(d + m + n + 1, field, 1), field);
  Polynomial f = parse_polynomial(f_text, probe.names(), field);
  return make_ring(d, m, n, f, field);
}

TowerReport tower_report(const Ring& ring) {
  TowerReport rep;
  const Polynomial& f = ring.f();
  Polynomial lc = f.coefficient_in(ring.t(), f.degree_in(ring.t()));
  rep.f_monic_in_t = lc.is_constant() && !lc.is_zero();
  rep.f_at_one = f.evaluate(ring.t(), Scalar::one(ring.field()));
  rep.f_at_one_unit = rep.f_at_one.is_constant() && !rep.f_at_one.is_zero();
  return rep;
}

// ---------------------------------------------------------------------------
// Levels

namespace {

std::uint32_t mask_range(std::size_t from, std::size_t count) {
  std::uint32_t m = 0;
  for (std::size_t i = 0; i < count; ++i) m |= 1u << (from + i);
  return m;
}

}  // namespace

Level Level::R(const Ring& ring) { return {"R", mask_range(0, ring.d()), 0, false}; }

Level Level::B(const Ring& ring) {
  return {"B", mask_range(0, ring.d() + ring.m() + ring.n()), mask_range(0, ring.n()), false};
}

Level Level::BT(const Ring& ring) { return {"B[t]", mask_range(0, ring.nvars()), mask_range(0, ring.n()), false}; }

Level Level::A(const Ring& ring) { return {"A", mask_range(0, ring.nvars()), mask_range(0, ring.n()), true}; }

Level Level::K(const Ring& ring) {
  if (ring.n() == 0) fail(ErrorKind::InvalidTower, "level K needs n > 0");
  return {"K", mask_range(0, ring.nvars()), mask_range(0, ring.n() - 1), false};
}

Level Level::by_name(const Ring& ring, const std::string& name) {
  if (name == "R") return R(ring);
  if (name == "B") return B(ring);
  if (name == "B[t]" || name == "B[Y]" || name == "BT") return BT(ring);
  if (name == "A") return A(ring);
  if (name == "K") return K(ring);
  fail(ErrorKind::Parse, "unknown level '" + name + "'");
}

std::size_t Level::dimension() const { return static_cast<std::size_t>(std::popcount(present)); }

Polynomial Level::unit(const Ring& ring) const {
  Polynomial u = ring.constant(1);
  for (std::size_t j = 0; j < ring.n(); ++j)
    if (inverts_y(j)) u *= ring.var(ring.y(j));
  if (invert_f) u *= ring.f();
  return u;
}

bool Level::contains(const Element& e) const {
  const Ring& ring = *e.ring();
  for (std::size_t v = 0; v < ring.nvars(); ++v)
    if (!has_var(v) && e.num().uses_var(v)) return false;
  if (e.b() > 0 && !invert_f) return false;
  if (e.a() > 0) {
    for (std::size_t j = 0; j < ring.n(); ++j)
      if (!inverts_y(j) && e.num().min_degree_in(ring.y(j)) < e.a()) return false;
  }
  return true;
}

bool Level::subring_of(const Level& o) const {
  return (present & ~o.present) == 0 && (inverted_y & ~o.inverted_y) == 0 && (!invert_f || o.invert_f);
}

// ---------------------------------------------------------------------------
// Ideal handles

IdealHandle::IdealHandle(RingPtr ring, Level level, std::vector<Element> gens)
    : ring_(std::move(ring)), level_(std::move(level)), gens_(std::move(gens)), cache_(std::make_shared<Cache>()) {
  for (const auto& g : gens_) {
    if (!g.ring()->same_as(*ring_)) fail(ErrorKind::DomainMismatch, "generator from a different tower");
    if (!level_.contains(g))
      fail(ErrorKind::LevelMismatch, "generator " + g.to_string() + " does not lie in level " + level_.name);
  }
}

IdealHandle::IdealHandle(RingPtr ring, Level level, const std::vector<Polynomial>& gens)
    : IdealHandle(ring, std::move(level), [&] {
        std::vector<Element> es;
        for (const auto& p : gens) es.emplace_back(ring, p);
        return es;
      }()) {}

const std::vector<Polynomial>& IdealHandle::preimage() const {
  {
    std::lock_guard lock(cache_->mu);
    if (cache_->preimage) return *cache_->preimage;
  }
  std::vector<Polynomial> nums;
  for (const auto& g : gens_)
    if (!g.is_zero()) nums.push_back(g.num());
  std::vector<Polynomial> pre;
  if (!nums.empty()) {
    Polynomial u = level_.unit(*ring_);
    pre = u.is_constant() ? buchberger(nums, TermOrder::grevlex(ring_->nvars())).generators : saturate(nums, u);
  }
  std::lock_guard lock(cache_->mu);
  if (!cache_->preimage) cache_->preimage = std::move(pre);
  return *cache_->preimage;
}

const GroebnerBasis& IdealHandle::preimage_gb(const TermOrder& order) const {
  {
    std::lock_guard lock(cache_->mu);
    auto it = cache_->gbs.find(order);
    if (it != cache_->gbs.end()) return *it->second;
  }
  const auto& pre = preimage();
  GroebnerBasis gb;
  if (pre.empty()) {
    gb.order = order;
  } else {
    gb = buchberger(pre, order);
  }
  auto ptr = std::make_shared<const GroebnerBasis>(std::move(gb));
  std::lock_guard lock(cache_->mu);
  auto [it, inserted] = cache_->gbs.emplace(order, ptr);
  return *it->second;
}

bool IdealHandle::is_proper() const {
  const auto& pre = preimage();
  return !(pre.size() == 1 && pre[0].is_constant());
}

bool IdealHandle::contains(const Element& e) const {
  if (!level_.contains(e)) return false;
  if (e.is_zero()) return true;
  const auto& pre = preimage();
  if (pre.empty()) return false;
  return ideal_member(e.num(), preimage_gb(TermOrder::grevlex(ring_->nvars())));
}

const GroebnerBasis& IdealHandle::tracked_gb() const {
  {
    std::lock_guard lock(cache_->mu);
    if (cache_->tracked) return *cache_->tracked;
  }
  const std::size_t n = ring_->nvars();
  Polynomial u = level_.unit(*ring_);
  std::vector<Polynomial> inputs;
  GroebnerBasis gb;
  if (u.is_constant()) {
    for (const auto& g : gens_) inputs.push_back(g.num());
    inputs.push_back(Polynomial(n, ring_->field()));
    gb = buchberger(inputs, TermOrder::grevlex(n), true);
  } else {
    if (n + 1 > kMaxVars) fail(ErrorKind::Unsupported, "too many variables for cofactor extraction");
    for (const auto& g : gens_) inputs.push_back(g.num().extend(n + 1));
    Polynomial w = Polynomial::variable(n + 1, ring_->field(), n);
    inputs.push_back(Polynomial::constant(n + 1, ring_->field(), 1) - w * u.extend(n + 1));
    gb = buchberger(inputs, TermOrder::grevlex(n + 1), true);
  }
  auto ptr = std::make_shared<const GroebnerBasis>(std::move(gb));
  std::lock_guard lock(cache_->mu);
  if (!cache_->tracked) cache_->tracked = ptr;
  return *cache_->tracked;
}

std::optional<std::vector<Element>> IdealHandle::cofactors(const Element& e) const {
  if (!contains(e)) return std::nullopt;
  std::vector<Element> out(gens_.size(), Element::zero(ring_));
  if (e.is_zero()) return out;
  const std::size_t n = ring_->nvars();
  const GroebnerBasis& gb = tracked_gb();
  const std::size_t ext = gb.inputs.front().nvars();
  TrackedNormalForm nf = normal_form_tracked(e.num().extend(ext), gb);
  if (!nf.remainder.is_zero()) fail(ErrorKind::Mismatch, "membership and tracked reduction disagree");

  Polynomial u = level_.unit(*ring_);
  std::optional<Element> uinv;
  if (!u.is_constant()) uinv = invert_unit(Element(ring_, u));
  Element den_e_inv = Element::raw(ring_, ring_->constant(1), e.a(), e.b());
  for (std::size_t i = 0; i < gens_.size(); ++i) {
    const Polynomial& a = nf.cofactors[i];
    if (a.is_zero()) continue;
    Element value = Element::zero(ring_);
    if (ext == n) {
      value = Element(ring_, a);
    } else {
      for (std::uint32_t k = 0; k <= a.degree_in(n); ++k) {
        Polynomial ck = a.coefficient_in(n, k);
        if (ck.is_zero()) continue;
        value += Element(ring_, ck.truncate(n)) * uinv->pow(k);
      }
    }
    Element den_g(ring_, gens_[i].denominator());
    out[i] = value * den_g * den_e_inv;
  }
  return out;
}

std::size_t IdealHandle::quotient_dimension() const {
  const std::size_t absent = ring_->nvars() - level_.dimension();
  const auto& pre = preimage();
  if (pre.empty()) return level_.dimension();
  return dimension_height(pre).dim - absent;
}

IdealHandle ideal_product(const IdealHandle& I, const IdealHandle& J) {
  if (!(I.level() == J.level())) fail(ErrorKind::LevelMismatch, "product of ideals at different levels");
  std::vector<Element> gens;
  for (const auto& a : I.generators())
    for (const auto& b : J.generators()) {
      Element p = a * b;
      if (!p.is_zero() && std::find(gens.begin(), gens.end(), p) == gens.end()) gens.push_back(p);
    }
  return IdealHandle(I.ring(), I.level(), gens);
}

IdealHandle ideal_power(const IdealHandle& I, std::uint32_t k) {
  if (k == 0) return IdealHandle(I.ring(), I.level(), std::vector<Element>{Element::one(I.ring())});
  IdealHandle out = I;
  for (std::uint32_t i = 1; i < k; ++i) out = ideal_product(out, I);
  return out;
}

IdealHandle ideal_sum(const IdealHandle& I, const std::vector<Element>& extra) {
  std::vector<Element> gens = I.generators();
  gens.insert(gens.end(), extra.begin(), extra.end());
  return IdealHandle(I.ring(), I.level(), gens);
}

bool ideal_equal(const IdealHandle& I, const IdealHandle& J) {
  if (!(I.level() == J.level())) fail(ErrorKind::LevelMismatch, "comparing ideals at different levels");
  // reduced grevlex bases are unique
  return I.preimage() == J.preimage();
}

IdealHandle contract_ideal(const IdealHandle& I, const Level& target) {
  if (!target.subring_of(I.level()))
    fail(ErrorKind::LevelMismatch, "level " + target.name + " is not a subring of " + I.level().name);
  if (!I.is_proper()) fail(ErrorKind::ImproperIdeal, "contraction of the unit ideal");
  std::vector<std::size_t> keep;
  for (std::size_t v = 0; v < I.ring()->nvars(); ++v)
    if (target.has_var(v)) keep.push_back(v);
  return IdealHandle(I.ring(), target, elim_contract(I.preimage(), keep));
}

IdealHandle extend_ideal(const IdealHandle& I, const Level& target) {
  if (!I.level().subring_of(target))
    fail(ErrorKind::LevelMismatch, "level " + I.level().name + " is not a subring of " + target.name);
  return IdealHandle(I.ring(), target, I.generators());
}

std::size_t height_at_level(const IdealHandle& I) {
  if (!I.is_proper()) fail(ErrorKind::ImproperIdeal, "height of the unit ideal");
  const auto& pre = I.preimage();
  if (pre.empty()) return 0;
  return dimension_height(pre).height;
}

// ---------------------------------------------------------------------------
// Automorphisms

std::string to_string(AutoFamily family) {
  switch (family) {
    case AutoFamily::Identity: return "identity";
    case AutoFamily::Suslin: return "suslin";
    case AutoFamily::Laurent: return "laurent";
    case AutoFamily::Combined: return "combined";
  }
  return "identity";
}

AutoFamily auto_family_from_string(const std::string& s) {
  if (s == "identity") return AutoFamily::Identity;
  if (s == "suslin") return AutoFamily::Suslin;
  if (s == "laurent") return AutoFamily::Laurent;
  if (s == "combined") return AutoFamily::Combined;
  fail(ErrorKind::Parse, "unknown automorphism family '" + s + "'");
}

namespace {

void check_shift_shape(const Ring& ring, const Level& level, const std::vector<std::size_t>& shifted,
                       std::size_t ti_size, std::size_t si_size) {
  if (shifted.size() != ti_size || shifted.size() != si_size)
    fail(ErrorKind::DomainMismatch, "exponent lists must match the shifted variables");
  for (auto v : shifted) {
    if (v >= ring.nvars() || ring.is_z(v) || ring.is_y(v) || !level.has_var(v))
      fail(ErrorKind::LevelMismatch, "variable cannot be shifted at level " + level.name);
  }
}

}  // namespace

Automorphism Automorphism::identity(const Level& level) {
  Automorphism a;
  a.level = level;
  return a;
}

Automorphism Automorphism::suslin(const Ring& ring, const Level& level, std::size_t target,
                                  std::vector<std::size_t> shifted, std::vector<std::uint32_t> exponents, int sign) {
  Automorphism a;
  a.family = AutoFamily::Suslin;
  a.level = level;
  a.sign = sign;
  a.target = target;
  a.si.assign(shifted.size(), 0);
  check_shift_shape(ring, level, shifted, exponents.size(), a.si.size());
  if (!level.has_var(target) || (ring.is_y(target) && level.inverts_y(target - ring.y(0))))
    fail(ErrorKind::LevelMismatch, "suslin target must be a polynomial variable of the level");
  if (std::find(shifted.begin(), shifted.end(), target) != shifted.end())
    fail(ErrorKind::DomainMismatch, "suslin target cannot be shifted");
  a.shifted = std::move(shifted);
  a.ti = std::move(exponents);
  a.lj.assign(ring.n(), 0);
  return a;
}

Automorphism Automorphism::laurent(const Ring& ring, const Level& level, std::vector<std::size_t> shifted,
                                   std::vector<std::uint32_t> ti, std::vector<std::uint32_t> si,
                                   std::vector<std::int32_t> lj, int sign) {
  if (ring.n() == 0) fail(ErrorKind::InvalidTower, "laurent automorphisms need n > 0");
  if (!level.inverts_y(ring.n() - 1)) fail(ErrorKind::LevelMismatch, "laurent automorphisms need y_n inverted");
  check_shift_shape(ring, level, shifted, ti.size(), si.size());
  if (lj.size() != ring.n() || lj.back() != 0)
    fail(ErrorKind::DomainMismatch, "laurent rescalings are given for y_1..y_{n-1} and fix y_n");
  Automorphism a;
  a.family = AutoFamily::Laurent;
  a.level = level;
  a.sign = sign;
  a.target = ring.y(ring.n() - 1);
  a.shifted = std::move(shifted);
  a.ti = std::move(ti);
  a.si = std::move(si);
  a.lj = std::move(lj);
  return a;
}

Automorphism Automorphism::combined(const Ring& ring, std::vector<std::uint32_t> ti, std::vector<std::uint32_t> si,
                                    std::vector<std::int32_t> lj, int sign) {
  Automorphism a;
  a.family = AutoFamily::Combined;
  a.level = Level::A(ring);
  a.sign = sign;
  a.target = ring.t();
  for (std::size_t i = 0; i < ring.m(); ++i) a.shifted.push_back(ring.x(i));
  check_shift_shape(ring, a.level, a.shifted, ti.size(), si.size());
  if (lj.size() != ring.n()) fail(ErrorKind::DomainMismatch, "combined rescalings are given for every y_j");
  a.ti = std::move(ti);
  a.si = std::move(si);
  a.lj = std::move(lj);
  return a;
}

bool Automorphism::is_identity() const {
  auto zero = [](auto v) { return v == 0; };
  return std::all_of(ti.begin(), ti.end(), zero) && std::all_of(si.begin(), si.end(), zero) &&
         std::all_of(lj.begin(), lj.end(), zero);
}

Automorphism Automorphism::inverse() const {
  Automorphism a = *this;
  a.sign = -sign;
  for (auto& l : a.lj) l = -l;
  return a;
}

std::vector<std::optional<Element>> Automorphism::images(const RingPtr& ring) const {
  std::vector<std::optional<Element>> img(ring->nvars());
  if (family == AutoFamily::Identity) return img;
  Element pos, neg_inv, scale, scale_inv;
  switch (family) {
    case AutoFamily::Suslin:
      pos = Element::var(ring, target);
      break;
    case AutoFamily::Laurent:
      pos = Element::var(ring, target);
      neg_inv = invert_unit(pos);
      scale = pos;
      scale_inv = neg_inv;
      break;
    case AutoFamily::Combined:
      pos = Element::var(ring, ring->t());
      scale = Element::f(ring);
      neg_inv = invert_unit(scale);
      scale_inv = neg_inv;
      break;
    case AutoFamily::Identity:
      break;
  }
  const Scalar s(ring->field(), static_cast<long>(sign));
  for (std::size_t k = 0; k < shifted.size(); ++k) {
    Element shift = Element::zero(ring);
    if (ti[k] > 0) shift += pos.pow(ti[k]);
    if (si[k] > 0) shift += neg_inv.pow(si[k]);
    if (!shift.is_zero()) img[shifted[k]] = Element::var(ring, shifted[k]) + shift.scaled(s);
  }
  for (std::size_t j = 0; j < lj.size(); ++j) {
    if (lj[j] == 0) continue;
    Element factor = lj[j] > 0 ? scale.pow(static_cast<std::uint32_t>(lj[j]))
                               : scale_inv.pow(static_cast<std::uint32_t>(-lj[j]));
    img[ring->y(j)] = Element::var(ring, ring->y(j)) * factor;
  }
  return img;
}

Element Automorphism::apply(const Element& e) const {
  if (family == AutoFamily::Identity || is_identity()) return e;
  return substitute(e, images(e.ring()));
}

std::string Automorphism::describe(const Ring& ring) const {
  RingPtr rp = std::make_shared<const Ring>(ring);
  auto img = images(rp);
  std::ostringstream os;
  bool first = true;
  for (std::size_t v = 0; v < img.size(); ++v) {
    if (!img[v]) continue;
    os << (first ? "" : "; ") << ring.names()[v] << " -> " << img[v]->to_string();
    first = false;
  }
  return first ? "identity" : os.str();
}

IdealHandle apply_automorphism(const IdealHandle& I, const Automorphism& theta, bool check_height) {
  if (theta.family != AutoFamily::Identity && !(theta.level == I.level()))
    fail(ErrorKind::LevelMismatch, "automorphism at level " + theta.level.name + " applied to an ideal of level " +
                                       I.level().name);
  std::vector<Element> gens;
  for (const auto& g : I.generators()) gens.push_back(theta.apply(g));
  IdealHandle out(I.ring(), I.level(), gens);
  if (check_height && I.is_proper()) {
    if (!out.is_proper() || height_at_level(out) != height_at_level(I))
      fail(ErrorKind::Mismatch, "automorphism changed the height of the ideal");
  }
  return out;
}

bool inverse_fixes_generators(const RingPtr& ring, const Automorphism& theta) {
  Automorphism inv = theta.inverse();
  for (std::size_t v = 0; v < ring->nvars(); ++v) {
    Element x = Element::var(ring, v);
    if (inv.apply(theta.apply(x)) != x) return false;
  }
  return true;
}

}  // namespace towerlift
