#include "towerlift/scalar.hpp"

#include "towerlift/errors.hpp"

namespace towerlift {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DomainMismatch: return "domain-mismatch";
    case ErrorKind::InvalidSubstitution: return "invalid-substitution";
    case ErrorKind::BoundaryUndefined: return "boundary-undefined";
    case ErrorKind::InvalidTower: return "invalid-tower";
    case ErrorKind::ImproperIdeal: return "improper-ideal";
    case ErrorKind::Precondition: return "precondition";
    case ErrorKind::BudgetExceeded: return "budget-exceeded";
    case ErrorKind::Unsupported: return "unsupported";
    case ErrorKind::NotInIdeal: return "not-in-ideal";
    case ErrorKind::Mismatch: return "mismatch";
    case ErrorKind::Parse: return "parse";
    case ErrorKind::IncompatibleBoundary: return "incompatible-boundary";
    case ErrorKind::NotInModule: return "not-in-module";
    case ErrorKind::NotEulerDatum: return "not-an-euler-class-datum";
    case ErrorKind::LevelMismatch: return "level-mismatch";
  }
  return "unknown";
}

std::string Field::name() const {
  return p == 0 ? std::string("Q") : "F" + std::to_string(p);
}

Field make_field(std::uint32_t prime) {
  if (prime == 0) return Field{0};
  if (prime < 2 || prime >= (1u << 31))
    fail(ErrorKind::DomainMismatch, "prime must satisfy 2 <= p < 2^31");
  for (std::uint64_t d = 2; d * d <= prime; ++d)
    if (prime % d == 0)
      fail(ErrorKind::DomainMismatch, std::to_string(prime) + " is not prime");
  return Field{prime};
}

namespace {

std::uint32_t reduce_mpz(const mpz_class& v, std::uint32_t p) {
  mpz_class r;
  mpz_fdiv_r_ui(r.get_mpz_t(), v.get_mpz_t(), p);
  return static_cast<std::uint32_t>(r.get_ui());
}

std::uint32_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint32_t p) {
  std::uint64_t result = 1;
  base %= p;
  while (exp) {
    if (exp & 1) result = result * base % p;
    base = base * base % p;
    exp >>= 1;
  }
  return static_cast<std::uint32_t>(result);
}

}  // namespace

Scalar::Scalar(const Field& field, long value) : p_(field.p) {
  if (p_ == 0) {
    q_ = value;
  } else {
    long r = value % static_cast<long>(p_);
    if (r < 0) r += p_;
    r_ = static_cast<std::uint32_t>(r);
  }
}

Scalar::Scalar(const Field& field, const mpq_class& value) : p_(field.p) {
  if (p_ == 0) {
    // copy the parts separately: mpq_set assumes a positive denominator
    q_.get_num() = value.get_num();
    q_.get_den() = value.get_den();
    q_.canonicalize();
    return;
  }
  std::uint32_t num = reduce_mpz(value.get_num(), p_);
  std::uint32_t den = reduce_mpz(value.get_den(), p_);
  if (den == 0)
    fail(ErrorKind::DomainMismatch,
         "denominator of " + value.get_str() + " vanishes mod " + std::to_string(p_));
  r_ = static_cast<std::uint32_t>(static_cast<std::uint64_t>(num) * pow_mod(den, p_ - 2, p_) % p_);
}

void Scalar::check_same(const Scalar& o) const {
  if (p_ != o.p_) fail(ErrorKind::DomainMismatch, "scalars over different fields");
}

bool Scalar::is_zero() const { return p_ == 0 ? sgn(q_) == 0 : r_ == 0; }

bool Scalar::is_one() const { return p_ == 0 ? q_ == 1 : r_ == 1; }

bool Scalar::is_integer() const { return p_ != 0 || q_.get_den() == 1; }

int Scalar::sign() const { return p_ == 0 ? sgn(q_) : (r_ != 0 ? 1 : 0); }

Scalar Scalar::operator-() const {
  Scalar r = *this;
  if (p_ == 0)
    r.q_ = -q_;
  else
    r.r_ = r_ == 0 ? 0 : p_ - r_;
  return r;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  check_same(o);
  if (p_ == 0)
    q_ += o.q_;
  else
    r_ = static_cast<std::uint32_t>((static_cast<std::uint64_t>(r_) + o.r_) % p_);
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  check_same(o);
  if (p_ == 0)
    q_ -= o.q_;
  else
    r_ = static_cast<std::uint32_t>((static_cast<std::uint64_t>(r_) + p_ - o.r_) % p_);
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  check_same(o);
  if (p_ == 0)
    q_ *= o.q_;
  else
    r_ = static_cast<std::uint32_t>(static_cast<std::uint64_t>(r_) * o.r_ % p_);
  return *this;
}

Scalar Scalar::inverse() const {
  if (is_zero()) fail(ErrorKind::DomainMismatch, "division by zero scalar");
  Scalar r = *this;
  if (p_ == 0)
    r.q_ = 1 / q_;
  else
    r.r_ = pow_mod(r_, p_ - 2, p_);
  return r;
}

Scalar& Scalar::operator/=(const Scalar& o) {
  check_same(o);
  return *this *= o.inverse();
}

bool Scalar::operator==(const Scalar& o) const {
  if (p_ != o.p_) return false;
  return p_ == 0 ? q_ == o.q_ : r_ == o.r_;
}

int Scalar::compare(const Scalar& o) const {
  check_same(o);
  if (p_ == 0) return cmp(q_, o.q_);
  return r_ < o.r_ ? -1 : (r_ > o.r_ ? 1 : 0);
}

std::string Scalar::to_string() const {
  return p_ == 0 ? q_.get_str() : std::to_string(r_);
}

}  // namespace towerlift
