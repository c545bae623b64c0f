#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "towerlift/polynomial.hpp"

namespace towerlift {

/// Variable layout of the polynomial cover S = k[z1..zd, x1..xm, y1..yn, t]
/// together with the localizing polynomial f in k[z][t].
///
/// Variables are indexed z first, then x, then y, with t last. Every element
/// of the tower is stored as a polynomial of S over a denominator (y1..yn)^a f^b.
class Ring {
 public:
  Ring(std::size_t d, std::size_t m, std::size_t n, Polynomial f, Field field);

  std::size_t d() const { return d_; }
  std::size_t m() const { return m_; }
  std::size_t n() const { return n_; }
  std::size_t nvars() const { return d_ + m_ + n_ + 1; }
  Field field() const { return field_; }

  std::size_t z(std::size_t i) const { return i; }
  std::size_t x(std::size_t i) const { return d_ + i; }
  std::size_t y(std::size_t j) const { return d_ + m_ + j; }
  std::size_t t() const { return d_ + m_ + n_; }

  bool is_z(std::size_t v) const { return v < d_; }
  bool is_x(std::size_t v) const { return v >= d_ && v < d_ + m_; }
  bool is_y(std::size_t v) const { return v >= d_ + m_ && v < d_ + m_ + n_; }

  const Polynomial& f() const { return f_; }
  /// Product y1*...*yn (1 when n = 0).
  const Polynomial& ybar() const { return ybar_; }

  Polynomial var(std::size_t idx) const { return Polynomial::variable(nvars(), field_, idx); }
  Polynomial constant(long c) const { return Polynomial::constant(nvars(), field_, c); }
  Polynomial constant(const Scalar& c) const { return Polynomial::constant(nvars(), c); }

  const std::vector<std::string>& names() const { return names_; }
  /// Names of an extension of S by auxiliary variables (w, w2, ...).
  std::vector<std::string> names_with_aux(std::size_t total) const;
  std::string poly_to_string(const Polynomial& p) const;

  /// Structural identity: same layout, same f, same field.
  bool same_as(const Ring& o) const;

 private:
  std::size_t d_, m_, n_;
  Polynomial f_;
  Polynomial ybar_;
  Field field_;
  std::vector<std::string> names_;
};

using RingPtr = std::shared_ptr<const Ring>;

RingPtr make_ring(std::size_t d, std::size_t m, std::size_t n, const Polynomial& f, Field field);

}  // namespace towerlift
