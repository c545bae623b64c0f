#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "towerlift/monomial.hpp"
#include "towerlift/scalar.hpp"

namespace towerlift {

struct Term {
  Monomial mono;
  Scalar coeff;
};

/// Sparse multivariate polynomial over a fixed number of variables. Terms are
/// kept strictly decreasing in graded-lex order with nonzero coefficients, so
/// structural equality is value equality.
class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(std::size_t nvars, Field field) : nvars_(nvars), field_(field) {}

  static Polynomial constant(std::size_t nvars, const Scalar& c);
  static Polynomial constant(std::size_t nvars, Field field, long c);
  static Polynomial variable(std::size_t nvars, Field field, std::size_t idx, std::uint32_t power = 1);
  static Polynomial term(std::size_t nvars, const Scalar& c, const Monomial& m);
  /// Sorts and merges arbitrary terms; zero coefficients are dropped.
  static Polynomial from_terms(std::size_t nvars, Field field, std::vector<Term> terms);

  std::size_t nvars() const { return nvars_; }
  Field field() const { return field_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }
  bool is_one() const { return is_constant() && !terms_.empty() && terms_[0].coeff.is_one(); }
  /// Constant term (zero if absent).
  Scalar constant_coeff() const;

  std::uint32_t degree() const;
  std::uint32_t degree_in(std::size_t var) const;
  std::uint32_t min_degree_in(std::size_t var) const;  // valuation; 0 for the zero polynomial
  bool uses_var(std::size_t var) const;

  /// Coefficient of var^k, as a polynomial not involving var.
  Polynomial coefficient_in(std::size_t var, std::uint32_t k) const;

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Polynomial& o);
  Polynomial& operator*=(const Scalar& c);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Polynomial a, const Scalar& c) { return a *= c; }

  Polynomial mul_term(const Scalar& c, const Monomial& m) const;
  Polynomial pow(std::uint32_t k) const;

  /// Exact quotient if divisor divides *this, otherwise nullopt.
  std::optional<Polynomial> divide_exact(const Polynomial& divisor) const;
  /// Divide every exponent vector by m; requires m to divide every term.
  Polynomial divide_monomial(const Monomial& m) const;
  /// gcd of all term monomials.
  Monomial monomial_content() const;

  Polynomial evaluate(std::size_t var, const Scalar& value) const;
  /// Ring homomorphism sending variable i to images[i] (identity when nullopt).
  Polynomial substitute(const std::vector<std::optional<Polynomial>>& images) const;

  /// Same polynomial viewed in a ring with more variables appended.
  Polynomial extend(std::size_t nvars) const;
  /// Drop trailing variables; they must not occur.
  Polynomial truncate(std::size_t nvars) const;
  /// Move variable i to position mapping[i] in a ring with nvars variables.
  Polynomial remap(const std::vector<std::size_t>& mapping, std::size_t nvars) const;

  bool operator==(const Polynomial& o) const;
  bool operator!=(const Polynomial& o) const { return !(*this == o); }

  std::string to_string(const std::vector<std::string>& names) const;

 private:
  void check_same(const Polynomial& o) const;

  std::size_t nvars_ = 0;
  Field field_{};
  std::vector<Term> terms_;
};

/// Exponent of a monomial printed as `x1^2*y1`; empty string for 1.
std::string monomial_to_string(const Monomial& m, const std::vector<std::string>& names);

}  // namespace towerlift
