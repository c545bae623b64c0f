#include "towerlift/element.hpp"

#include <algorithm>

#include "towerlift/errors.hpp"

namespace towerlift {

Ring::Ring(std::size_t d, std::size_t m, std::size_t n, Polynomial f, Field field)
    : d_(d), m_(m), n_(n), f_(std::move(f)), field_(field) {
  if (nvars() + 2 > kMaxVars)
    fail(ErrorKind::InvalidTower, "too many variables: d+m+n+1 must be at most " + std::to_string(kMaxVars - 2));
  for (std::size_t i = 0; i < d_; ++i) names_.push_back("z" + std::to_string(i + 1));
  for (std::size_t i = 0; i < m_; ++i) names_.push_back("x" + std::to_string(i + 1));
  for (std::size_t i = 0; i < n_; ++i) names_.push_back("y" + std::to_string(i + 1));
  names_.push_back("t");
  if (f_.nvars() != nvars() || !(f_.field() == field_))
    fail(ErrorKind::InvalidTower, "f does not live in the cover ring");
  if (f_.is_zero()) fail(ErrorKind::InvalidTower, "f must be nonzero");
  for (std::size_t v = d_; v < t(); ++v)
    if (f_.uses_var(v)) fail(ErrorKind::InvalidTower, "f must lie in k[z][t], but it mentions " + names_[v]);
  ybar_ = constant(1);
  for (std::size_t j = 0; j < n_; ++j) ybar_ = ybar_ * var(y(j));
}

std::vector<std::string> Ring::names_with_aux(std::size_t total) const {
  std::vector<std::string> out = names_;
  for (std::size_t i = nvars(); i < total; ++i)
    out.push_back(i == nvars() ? std::string("w") : "w" + std::to_string(i - nvars() + 1));
  return out;
}

std::string Ring::poly_to_string(const Polynomial& p) const { return p.to_string(names_with_aux(p.nvars())); }

bool Ring::same_as(const Ring& o) const {
  return this == &o || (d_ == o.d_ && m_ == o.m_ && n_ == o.n_ && field_ == o.field_ && f_ == o.f_);
}

RingPtr make_ring(std::size_t d, std::size_t m, std::size_t n, const Polynomial& f, Field field) {
  return std::make_shared<const Ring>(d, m, n, f, field);
}

// ---------------------------------------------------------------------------

void require_same_ring(const Element& l, const Element& r) {
  if (!l.ring() || !r.ring()) fail(ErrorKind::DomainMismatch, "uninitialized element");
  if (!l.ring()->same_as(*r.ring())) fail(ErrorKind::DomainMismatch, "elements from different towers");
}

Element Element::raw(RingPtr ring, Polynomial num, std::uint32_t a, std::uint32_t b) {
  Element e;
  if (num.nvars() != ring->nvars() || !(num.field() == ring->field()))
    fail(ErrorKind::DomainMismatch, "numerator not in the cover ring");
  e.ring_ = std::move(ring);
  e.num_ = std::move(num);
  e.a_ = e.ring_->n() == 0 ? 0 : a;
  e.b_ = b;
  return e;
}

Element::Element(RingPtr ring, Polynomial num, std::uint32_t a, std::uint32_t b)
    : Element(canonicalize(raw(std::move(ring), std::move(num), a, b))) {}

Element canonicalize(const Element& e) {
  const Ring& R = *e.ring();
  Polynomial num = e.num();
  std::uint32_t a = e.a(), b = e.b();
  if (num.is_zero()) return Element::raw(e.ring(), num, 0, 0);
  if (R.f().is_constant() && b > 0) {
    num *= R.f().constant_coeff().inverse();
    for (std::uint32_t i = 1; i < b; ++i) num *= R.f().constant_coeff().inverse();
    b = 0;
  }
  if (a > 0) {
    std::uint32_t strip = a;
    for (std::size_t j = 0; j < R.n(); ++j) strip = std::min(strip, num.min_degree_in(R.y(j)));
    if (strip > 0) {
      Monomial ym;
      for (std::size_t j = 0; j < R.n(); ++j) ym.set(R.y(j), strip);
      num = num.divide_monomial(ym);
      a -= strip;
    }
  }
  while (b > 0) {
    auto q = num.divide_exact(R.f());
    if (!q) break;
    num = std::move(*q);
    --b;
  }
  return Element::raw(e.ring(), std::move(num), a, b);
}

Element Element::zero(const RingPtr& ring) { return raw(ring, ring->constant(0), 0, 0); }
Element Element::one(const RingPtr& ring) { return raw(ring, ring->constant(1), 0, 0); }
Element Element::constant(const RingPtr& ring, const Scalar& c) { return raw(ring, ring->constant(c), 0, 0); }
Element Element::var(const RingPtr& ring, std::size_t idx) { return raw(ring, ring->var(idx), 0, 0); }
Element Element::f(const RingPtr& ring) { return raw(ring, ring->f(), 0, 0); }

Polynomial Element::denominator() const {
  return ring_->ybar().pow(a_) * ring_->f().pow(b_);
}

Element Element::operator-() const { return raw(ring_, -num_, a_, b_); }

Element Element::scaled(const Scalar& c) const { return Element(ring_, num_ * c, a_, b_); }

Element operator+(const Element& l, const Element& r) { return arith(l, r, ArithKind::Add); }
Element operator-(const Element& l, const Element& r) { return arith(l, r, ArithKind::Sub); }
Element operator*(const Element& l, const Element& r) { return arith(l, r, ArithKind::Mul); }

Element arith(const Element& lhs, const Element& rhs, ArithKind kind) {
  require_same_ring(lhs, rhs);
  const Ring& R = *lhs.ring();
  if (kind == ArithKind::Mul) {
    if (lhs.is_zero() || rhs.is_zero()) return Element::zero(lhs.ring());
    return Element(lhs.ring(), lhs.num() * rhs.num(), lhs.a() + rhs.a(), lhs.b() + rhs.b());
  }
  std::uint32_t a = std::max(lhs.a(), rhs.a());
  std::uint32_t b = std::max(lhs.b(), rhs.b());
  auto lift = [&](const Element& e) {
    Polynomial p = e.num();
    if (a > e.a()) p = p * R.ybar().pow(a - e.a());
    if (b > e.b()) p = p * R.f().pow(b - e.b());
    return p;
  };
  Polynomial num = kind == ArithKind::Add ? lift(lhs) + lift(rhs) : lift(lhs) - lift(rhs);
  return Element(lhs.ring(), std::move(num), a, b);
}

Element Element::pow(std::uint32_t k) const {
  Element result = one(ring_);
  Element base = *this;
  while (k) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k) base = base * base;
  }
  return result;
}

bool Element::operator==(const Element& o) const {
  if (!ring_ || !o.ring_) return !ring_ && !o.ring_;
  return ring_->same_as(*o.ring_) && a_ == o.a_ && b_ == o.b_ && num_ == o.num_;
}

std::string Element::to_string() const {
  const Ring& R = *ring_;
  std::string num = R.poly_to_string(num_);
  if (is_polynomial()) return num;
  std::vector<std::string> parts;
  if (a_ > 0) {
    std::string y = R.poly_to_string(R.ybar());
    if (R.n() > 1) y = "(" + y + ")";
    if (a_ > 1) y += "^" + std::to_string(a_);
    parts.push_back(y);
  }
  if (b_ > 0) {
    std::string fs = "(" + R.poly_to_string(R.f()) + ")";
    if (b_ > 1) fs += "^" + std::to_string(b_);
    parts.push_back(fs);
  }
  std::string den;
  for (const auto& p : parts) den += (den.empty() ? "" : "*") + p;
  return "(" + num + ")/(" + den + ")";
}

// ---------------------------------------------------------------------------

std::optional<Element> try_invert_unit(const Element& e) {
  const Ring& R = *e.ring();
  if (e.is_zero()) return std::nullopt;
  Polynomial num = e.num();
  std::uint32_t k = 0;
  if (!R.f().is_constant()) {
    while (true) {
      auto q = num.divide_exact(R.f());
      if (!q) break;
      num = std::move(*q);
      ++k;
    }
  }
  if (num.size() != 1) return std::nullopt;
  const Term& lead = num.terms().front();
  for (std::size_t v = 0; v < R.nvars(); ++v)
    if (lead.mono[v] != 0 && !R.is_y(v)) return std::nullopt;
  // e = c * y^beta * f^k / (Y^a f^b), inverse = Y^a f^b / (c y^beta f^k)
  std::uint32_t top = 0;
  for (std::size_t j = 0; j < R.n(); ++j) top = std::max(top, lead.mono[R.y(j)]);
  Monomial numer;
  for (std::size_t j = 0; j < R.n(); ++j) numer.set(R.y(j), e.a() + top - lead.mono[R.y(j)]);
  Polynomial inv_num = Polynomial::term(R.nvars(), lead.coeff.inverse(), numer) * R.f().pow(e.b());
  return Element(e.ring(), std::move(inv_num), top, k);
}

Element invert_unit(const Element& e) {
  auto inv = try_invert_unit(e);
  if (!inv) fail(ErrorKind::InvalidSubstitution, "not a unit of the form c*y^beta*f^k: " + e.to_string());
  return *inv;
}

Element substitute(const Element& e, const std::vector<std::optional<Element>>& images) {
  const RingPtr& ring = e.ring();
  const Ring& R = *ring;
  if (images.size() > R.nvars()) fail(ErrorKind::InvalidSubstitution, "too many images");
  bool moves_t = false;
  for (std::size_t v = 0; v < images.size(); ++v) {
    if (!images[v]) continue;
    require_same_ring(e, *images[v]);
    if (R.is_z(v)) fail(ErrorKind::InvalidSubstitution, "base variables z_i are fixed");
    if (v == R.t()) moves_t = true;
  }
  if (moves_t) {
    if (e.b() != 0) fail(ErrorKind::InvalidSubstitution, "t may only move on elements of B[t]");
    for (const auto& img : images)
      if (img && img->b() != 0) fail(ErrorKind::InvalidSubstitution, "t may only move on elements of B[t]");
  }

  // image of y1*...*yn must be a unit for the denominator to map consistently
  Element ybar_image = Element::one(ring);
  for (std::size_t j = 0; j < R.n(); ++j) {
    std::size_t v = R.y(j);
    if (v < images.size() && images[v]) {
      if (!try_invert_unit(*images[v]))
        fail(ErrorKind::InvalidSubstitution, "image of " + R.names()[v] + " is not a unit");
      ybar_image = ybar_image * *images[v];
    } else {
      ybar_image = ybar_image * Element::var(ring, v);
    }
  }

  struct Piece {
    Polynomial num;
    std::uint32_t a, b;
  };
  std::vector<std::vector<Polynomial>> powers(R.nvars());
  auto power_of = [&](std::size_t v, std::uint32_t k) -> const Polynomial& {
    auto& cache = powers[v];
    if (cache.empty()) cache.push_back(R.constant(1));
    while (cache.size() <= k) cache.push_back(cache.back() * images[v]->num());
    return cache[k];
  };
  std::vector<Piece> pieces;
  std::uint32_t amax = 0, bmax = 0;
  for (const auto& t : e.num().terms()) {
    Monomial fixed = t.mono;
    Polynomial acc = Polynomial::term(R.nvars(), t.coeff, Monomial{});
    std::uint32_t pa = 0, pb = 0;
    for (std::size_t v = 0; v < images.size(); ++v) {
      if (!images[v] || t.mono[v] == 0) continue;
      fixed.set(v, 0);
      acc = acc * power_of(v, t.mono[v]);
      pa += images[v]->a() * t.mono[v];
      pb += images[v]->b() * t.mono[v];
    }
    acc = acc.mul_term(Scalar::one(R.field()), fixed);
    amax = std::max(amax, pa);
    bmax = std::max(bmax, pb);
    pieces.push_back({std::move(acc), pa, pb});
  }
  Polynomial total(R.nvars(), R.field());
  for (auto& p : pieces) {
    Polynomial q = std::move(p.num);
    if (amax > p.a) q = q * R.ybar().pow(amax - p.a);
    if (bmax > p.b) q = q * R.f().pow(bmax - p.b);
    total += q;
  }
  Element result(ring, std::move(total), amax, bmax);
  if (e.a() > 0) result = result * invert_unit(ybar_image).pow(e.a());
  if (e.b() > 0) result = result * Element(ring, R.constant(1), 0, e.b());
  return result;
}

Element evaluate_at_one(const Element& e) {
  const Ring& R = *e.ring();
  Scalar one = Scalar::one(R.field());
  Polynomial f1 = R.f().evaluate(R.t(), one);
  if (!f1.is_constant() || f1.is_zero())
    fail(ErrorKind::BoundaryUndefined, "f(1) = " + R.poly_to_string(f1) + " is not a unit of R");
  Polynomial num = e.num().evaluate(R.t(), one);
  Scalar inv = f1.constant_coeff().inverse();
  for (std::uint32_t i = 0; i < e.b(); ++i) num *= inv;
  return Element(e.ring(), std::move(num), e.a(), 0);
}

}  // namespace towerlift
