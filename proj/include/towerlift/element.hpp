#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "towerlift/ring.hpp"

namespace towerlift {

/// An element of A = B[t, 1/f]: num / ((y1*...*yn)^a * f^b).
///
/// The public constructor always canonicalizes, so two Elements are equal as
/// values iff they are structurally equal.
class Element {
 public:
  Element() = default;
  Element(RingPtr ring, Polynomial num, std::uint32_t a = 0, std::uint32_t b = 0);

  /// Unnormalized representation (for testing canonicalize).
  static Element raw(RingPtr ring, Polynomial num, std::uint32_t a, std::uint32_t b);

  static Element zero(const RingPtr& ring);
  static Element one(const RingPtr& ring);
  static Element constant(const RingPtr& ring, const Scalar& c);
  static Element var(const RingPtr& ring, std::size_t idx);
  /// The localizing polynomial f as an element.
  static Element f(const RingPtr& ring);

  const RingPtr& ring() const { return ring_; }
  const Polynomial& num() const { return num_; }
  std::uint32_t a() const { return a_; }
  std::uint32_t b() const { return b_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return a_ == 0 && b_ == 0; }
  /// Denominator (y1*...*yn)^a * f^b as a polynomial of S.
  Polynomial denominator() const;

  Element operator-() const;
  friend Element operator+(const Element& l, const Element& r);
  friend Element operator-(const Element& l, const Element& r);
  friend Element operator*(const Element& l, const Element& r);
  Element& operator+=(const Element& o) { return *this = *this + o; }
  Element& operator-=(const Element& o) { return *this = *this - o; }
  Element& operator*=(const Element& o) { return *this = *this * o; }
  Element scaled(const Scalar& c) const;
  Element pow(std::uint32_t k) const;

  bool operator==(const Element& o) const;
  bool operator!=(const Element& o) const { return !(*this == o); }

  std::string to_string() const;

 private:
  RingPtr ring_;
  Polynomial num_;
  std::uint32_t a_ = 0;
  std::uint32_t b_ = 0;
};

enum class ArithKind { Add, Sub, Mul };

Element arith(const Element& lhs, const Element& rhs, ArithKind kind);

/// Strip common factors of y1*...*yn and f from numerator and denominator.
Element canonicalize(const Element& e);

/// Inverse of a unit of the form c * y^beta * f^k; nullopt otherwise.
std::optional<Element> try_invert_unit(const Element& e);
Element invert_unit(const Element& e);

/// Ring homomorphism of A given images of x_i, y_j (and optionally t for
/// elements without f in the denominator); identity on unmapped variables.
/// Images of y_j must be units of the form c * y^beta * f^k.
Element substitute(const Element& e, const std::vector<std::optional<Element>>& images);

/// Image under t -> 1; requires f(1) to be a nonzero constant.
Element evaluate_at_one(const Element& e);

void require_same_ring(const Element& l, const Element& r);

}  // namespace towerlift
