#pragma once

#include <cstdint>
#include <string>

#include <gmpxx.h>

namespace towerlift {

/// Coefficient domain tag. p == 0 means the rationals, otherwise F_p.
struct Field {
  std::uint32_t p = 0;

  bool is_rational() const { return p == 0; }
  bool operator==(const Field&) const = default;
  std::string name() const;
};

Field make_field(std::uint32_t prime);  // validates 2 <= p < 2^31 and primality

/// An exact coefficient: a reduced rational or a residue in [0, p).
class Scalar {
 public:
  Scalar() = default;
  Scalar(const Field& field, long value);
  Scalar(const Field& field, const mpq_class& value);  // reduces mod p for F_p

  static Scalar zero(const Field& field) { return Scalar(field, 0L); }
  static Scalar one(const Field& field) { return Scalar(field, 1L); }

  Field field() const { return Field{p_}; }
  bool is_zero() const;
  bool is_one() const;
  bool is_integer() const;
  int sign() const;  // for F_p: 0 or 1

  const mpq_class& rational() const { return q_; }
  std::uint32_t residue() const { return r_; }

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);
  Scalar inverse() const;

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

  bool operator==(const Scalar& o) const;
  bool operator!=(const Scalar& o) const { return !(*this == o); }

  /// Deterministic total order used only for tie-breaking in enumeration.
  int compare(const Scalar& o) const;

  std::string to_string() const;

 private:
  void check_same(const Scalar& o) const;

  mpq_class q_;
  std::uint32_t p_ = 0;
  std::uint32_t r_ = 0;
};

}  // namespace towerlift
