#include "towerlift/polynomial.hpp"

#include <algorithm>
#include <queue>
#include <sstream>

#include "towerlift/errors.hpp"

namespace towerlift {

namespace {

bool term_greater(const Term& a, const Term& b) { return a.mono.graded_compare(b.mono) > 0; }

}  // namespace

Polynomial Polynomial::constant(std::size_t nvars, const Scalar& c) {
  Polynomial p(nvars, c.field());
  if (!c.is_zero()) p.terms_.push_back({Monomial{}, c});
  return p;
}

Polynomial Polynomial::constant(std::size_t nvars, Field field, long c) {
  return constant(nvars, Scalar(field, c));
}

Polynomial Polynomial::variable(std::size_t nvars, Field field, std::size_t idx, std::uint32_t power) {
  if (idx >= nvars) fail(ErrorKind::DomainMismatch, "variable index out of range");
  Polynomial p(nvars, field);
  p.terms_.push_back({Monomial::variable(idx, power), Scalar::one(field)});
  return p;
}

Polynomial Polynomial::term(std::size_t nvars, const Scalar& c, const Monomial& m) {
  Polynomial p(nvars, c.field());
  if (!c.is_zero()) p.terms_.push_back({m, c});
  return p;
}

Polynomial Polynomial::from_terms(std::size_t nvars, Field field, std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(), term_greater);
  Polynomial p(nvars, field);
  for (auto& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().mono == t.mono) {
      p.terms_.back().coeff += t.coeff;
      if (p.terms_.back().coeff.is_zero()) p.terms_.pop_back();
    } else if (!t.coeff.is_zero()) {
      p.terms_.push_back(std::move(t));
    }
  }
  return p;
}

void Polynomial::check_same(const Polynomial& o) const {
  if (nvars_ != o.nvars_ || !(field_ == o.field_))
    fail(ErrorKind::DomainMismatch, "polynomials from different rings");
}

Scalar Polynomial::constant_coeff() const {
  if (!terms_.empty() && terms_.back().mono.is_one()) return terms_.back().coeff;
  return Scalar::zero(field_);
}

std::uint32_t Polynomial::degree() const { return terms_.empty() ? 0 : terms_.front().mono.degree(); }

std::uint32_t Polynomial::degree_in(std::size_t var) const {
  std::uint32_t d = 0;
  for (const auto& t : terms_) d = std::max(d, t.mono[var]);
  return d;
}

std::uint32_t Polynomial::min_degree_in(std::size_t var) const {
  if (terms_.empty()) return 0;
  std::uint32_t d = terms_.front().mono[var];
  for (const auto& t : terms_) d = std::min(d, t.mono[var]);
  return d;
}

bool Polynomial::uses_var(std::size_t var) const {
  return std::any_of(terms_.begin(), terms_.end(), [&](const Term& t) { return t.mono[var] != 0; });
}

Polynomial Polynomial::coefficient_in(std::size_t var, std::uint32_t k) const {
  std::vector<Term> out;
  for (const auto& t : terms_) {
    if (t.mono[var] != k) continue;
    Term c = t;
    c.mono.set(var, 0);
    out.push_back(std::move(c));
  }
  return from_terms(nvars_, field_, std::move(out));
}

Polynomial Polynomial::operator-() const {
  Polynomial r = *this;
  for (auto& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

namespace {

std::vector<Term> merge_terms(const std::vector<Term>& a, const std::vector<Term>& b, bool subtract) {
  std::vector<Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    int c;
    if (i == a.size())
      c = -1;
    else if (j == b.size())
      c = 1;
    else
      c = a[i].mono.graded_compare(b[j].mono);
    if (c > 0) {
      out.push_back(a[i++]);
    } else if (c < 0) {
      out.push_back(subtract ? Term{b[j].mono, -b[j].coeff} : b[j]);
      ++j;
    } else {
      Scalar s = subtract ? a[i].coeff - b[j].coeff : a[i].coeff + b[j].coeff;
      if (!s.is_zero()) out.push_back({a[i].mono, std::move(s)});
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  check_same(o);
  terms_ = merge_terms(terms_, o.terms_, false);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  check_same(o);
  terms_ = merge_terms(terms_, o.terms_, true);
  return *this;
}

Polynomial& Polynomial::operator*=(const Scalar& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.coeff *= c;
  return *this;
}

Polynomial& Polynomial::operator*=(const Polynomial& o) {
  *this = *this * o;
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  a.check_same(b);
  Polynomial r(a.nvars_, a.field_);
  if (a.is_zero() || b.is_zero()) return r;
  const auto& small = a.size() <= b.size() ? a.terms_ : b.terms_;
  const auto& large = a.size() <= b.size() ? b.terms_ : a.terms_;
  if (a.size() == 1) return b.mul_term(a.terms_[0].coeff, a.terms_[0].mono);
  if (b.size() == 1) return a.mul_term(b.terms_[0].coeff, b.terms_[0].mono);
  // k-way merge of the streams small[i] * large[j], j = 0, 1, ...; each stream
  // is already decreasing because graded lex is a monomial order.
  struct Head {
    Monomial mono;
    std::size_t i, j;
  };
  auto cmp = [](const Head& x, const Head& y) {
    int c = x.mono.graded_compare(y.mono);
    if (c != 0) return c < 0;
    return x.i > y.i;
  };
  std::priority_queue<Head, std::vector<Head>, decltype(cmp)> heap(cmp);
  for (std::size_t i = 0; i < small.size(); ++i) heap.push({small[i].mono * large[0].mono, i, 0});
  r.terms_.reserve(small.size() + large.size());
  while (!heap.empty()) {
    Head h = heap.top();
    heap.pop();
    Scalar c = small[h.i].coeff * large[h.j].coeff;
    if (!r.terms_.empty() && r.terms_.back().mono == h.mono) {
      r.terms_.back().coeff += c;
    } else {
      if (!r.terms_.empty() && r.terms_.back().coeff.is_zero()) r.terms_.pop_back();
      r.terms_.push_back({h.mono, std::move(c)});
    }
    if (h.j + 1 < large.size()) heap.push({small[h.i].mono * large[h.j + 1].mono, h.i, h.j + 1});
  }
  if (!r.terms_.empty() && r.terms_.back().coeff.is_zero()) r.terms_.pop_back();
  return r;
}

Polynomial Polynomial::mul_term(const Scalar& c, const Monomial& m) const {
  Polynomial r(nvars_, field_);
  if (c.is_zero()) return r;
  r.terms_.reserve(terms_.size());
  for (const auto& t : terms_) r.terms_.push_back({t.mono * m, t.coeff * c});
  return r;
}

Polynomial Polynomial::pow(std::uint32_t k) const {
  Polynomial result = constant(nvars_, field_, 1);
  Polynomial base = *this;
  while (k) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k) base = base * base;
  }
  return result;
}

std::optional<Polynomial> Polynomial::divide_exact(const Polynomial& divisor) const {
  check_same(divisor);
  if (divisor.is_zero()) fail(ErrorKind::DomainMismatch, "division by zero polynomial");
  if (is_zero()) return *this;
  const Term& lead = divisor.terms_.front();
  Scalar inv = lead.coeff.inverse();
  Polynomial rem = *this;
  std::vector<Term> quot;
  while (!rem.is_zero()) {
    const Term& lt = rem.terms_.front();
    if (!lead.mono.divides(lt.mono)) return std::nullopt;
    Term q{lead.mono.quotient_of(lt.mono), lt.coeff * inv};
    rem -= divisor.mul_term(q.coeff, q.mono);
    quot.push_back(std::move(q));
  }
  // quotient terms were produced in decreasing order
  Polynomial q(nvars_, field_);
  q.terms_ = std::move(quot);
  return q;
}

Polynomial Polynomial::divide_monomial(const Monomial& m) const {
  Polynomial r(nvars_, field_);
  r.terms_.reserve(terms_.size());
  for (const auto& t : terms_) {
    if (!m.divides(t.mono)) fail(ErrorKind::DomainMismatch, "monomial does not divide polynomial");
    r.terms_.push_back({m.quotient_of(t.mono), t.coeff});
  }
  return r;
}

Monomial Polynomial::monomial_content() const {
  if (terms_.empty()) return Monomial{};
  Monomial g = terms_.front().mono;
  for (const auto& t : terms_) g = g.gcd(t.mono);
  return g;
}

Polynomial Polynomial::evaluate(std::size_t var, const Scalar& value) const {
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) {
    Scalar c = t.coeff;
    for (std::uint32_t k = 0; k < t.mono[var]; ++k) c *= value;
    Monomial m = t.mono;
    m.set(var, 0);
    out.push_back({m, std::move(c)});
  }
  return from_terms(nvars_, field_, std::move(out));
}

Polynomial Polynomial::substitute(const std::vector<std::optional<Polynomial>>& images) const {
  // cache powers of each image
  std::vector<std::vector<Polynomial>> powers(nvars_);
  auto power_of = [&](std::size_t v, std::uint32_t k) -> const Polynomial& {
    auto& cache = powers[v];
    if (cache.empty()) cache.push_back(constant(nvars_, field_, 1));
    while (cache.size() <= k) cache.push_back(cache.back() * *images[v]);
    return cache[k];
  };
  Polynomial result(nvars_, field_);
  for (const auto& t : terms_) {
    Monomial fixed = t.mono;
    Polynomial acc = term(nvars_, t.coeff, Monomial{});
    for (std::size_t v = 0; v < nvars_ && v < images.size(); ++v) {
      if (!images[v] || t.mono[v] == 0) continue;
      fixed.set(v, 0);
      acc = acc * power_of(v, t.mono[v]);
    }
    result += acc.mul_term(Scalar::one(field_), fixed);
  }
  return result;
}

Polynomial Polynomial::extend(std::size_t nvars) const {
  if (nvars < nvars_) fail(ErrorKind::DomainMismatch, "extend to fewer variables");
  Polynomial r = *this;
  r.nvars_ = nvars;
  return r;
}

Polynomial Polynomial::truncate(std::size_t nvars) const {
  for (std::size_t v = nvars; v < nvars_; ++v)
    if (uses_var(v)) fail(ErrorKind::DomainMismatch, "truncated variable still occurs");
  Polynomial r = *this;
  r.nvars_ = nvars;
  return r;
}

Polynomial Polynomial::remap(const std::vector<std::size_t>& mapping, std::size_t nvars) const {
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) {
    Monomial m;
    for (std::size_t v = 0; v < nvars_; ++v)
      if (t.mono[v]) m.set(mapping[v], m[mapping[v]] + t.mono[v]);
    out.push_back({m, t.coeff});
  }
  return from_terms(nvars, field_, std::move(out));
}

bool Polynomial::operator==(const Polynomial& o) const {
  if (nvars_ != o.nvars_ || !(field_ == o.field_) || terms_.size() != o.terms_.size()) return false;
  for (std::size_t i = 0; i < terms_.size(); ++i)
    if (!(terms_[i].mono == o.terms_[i].mono) || terms_[i].coeff != o.terms_[i].coeff) return false;
  return true;
}

std::string monomial_to_string(const Monomial& m, const std::vector<std::string>& names) {
  std::string s;
  for (std::size_t v = 0; v < names.size(); ++v) {
    if (m[v] == 0) continue;
    if (!s.empty()) s += '*';
    s += names[v];
    if (m[v] > 1) s += '^' + std::to_string(m[v]);
  }
  return s;
}

std::string Polynomial::to_string(const std::vector<std::string>& names) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    Scalar c = t.coeff;
    bool negative = field_.is_rational() && c.sign() < 0;
    if (negative) c = -c;
    if (first)
      os << (negative ? "-" : "");
    else
      os << (negative ? " - " : " + ");
    first = false;
    std::string mono = monomial_to_string(t.mono, names);
    if (mono.empty()) {
      os << c.to_string();
    } else {
      if (!c.is_one()) os << c.to_string() << '*';
      os << mono;
    }
  }
  return os.str();
}

}  // namespace towerlift
