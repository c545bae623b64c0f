#pragma once

#include <chrono>
#include <optional>
#include <vector>

#include "towerlift/tower.hpp"

namespace towerlift {

/// An element of an ideal whose leading coefficient in `var` is a unit.
struct MonicWitness {
  std::size_t var = 0;
  Element element;  // leading coefficient normalized to 1
  std::uint32_t degree = 0;
  bool unit_leading_coefficient = false;
  bool leading_coefficient_one = false;
};

/// An element 1 + v*h of an ideal.
struct UnitShiftWitness {
  Element v;
  Element h;
  Element element() const { return Element::one(v.ring()) + v * h; }
};

/// Element with a Laurent-monomial-times-f-power shape, i.e. a unit of `level`
/// that does not involve `var`.
bool is_coefficient_unit(const Element& e, const Level& level, std::size_t var);

/// Leading coefficient of e in variable `var` (as an Element with e's denominator).
Element leading_coefficient(const Element& e, std::size_t var);

/// A monic element in `var` of I, from a block order with `var` first.
std::optional<MonicWitness> contains_monic(const IdealHandle& I, std::size_t var);

/// 1 + v*h in I ∩ target, from tracked cofactors of 1 ∈ P + (v) + (1 - w*U).
/// target must be a subring of I's level with the same variables.
std::optional<UnitShiftWitness> contains_unit_shift(const IdealHandle& I, const Element& v, const Level& target);

struct NormalizeOptions {
  std::uint32_t max_exponent = 12;
  std::chrono::milliseconds budget{60000};
  bool want_monic = true;
  bool want_unit_shift = true;
  /// When positive, f-exponents are forced above ratio * (rescaling exponent).
  std::uint32_t constraint_ratio = 0;
  /// Laurent search: also shift t when the level contains it.
  bool shift_t = true;
};

struct NormalizationWitness {
  Automorphism theta;
  IdealHandle image;  // Θ(I)
  std::optional<MonicWitness> monic;
  std::optional<UnitShiftWitness> unit_shift;
  /// Level in which the witnesses were found (a contraction of Θ(I)).
  Level witness_level;
  std::uint32_t exponent = 0;
  std::size_t attempts = 0;
};

/// Suslin-style shifts x_i -> x_i + target^{s_i}; identity first, then
/// uniform exponents N and staggered exponents N, N+1, ...
NormalizationWitness suslin_monicize(const IdealHandle& I, std::size_t target, const NormalizeOptions& opts = {});

/// x_i -> x_i + y_n^{N} + y_n^{-N}, y_j -> y_j*y_n^{N}; the witness is 1 + y_n*h,
/// monic in y_n, in Θ(I) with y_n kept polynomial.
NormalizationWitness laurent_monicize(const IdealHandle& I, const NormalizeOptions& opts = {});

/// x_i -> x_i + t^{N} + f^{-N}, y_j -> y_j*f^{N}; witnesses: monic in t over B
/// and 1 + f*h with h in B[t].
NormalizationWitness combined_normalize(const IdealHandle& I, const NormalizeOptions& opts = {});

/// Witnesses for a fixed automorphism, without search (replay from exponents).
/// Returns nullopt when a requested witness does not exist for this Θ.
std::optional<NormalizationWitness> suslin_witness(const IdealHandle& I, const Automorphism& theta);
std::optional<NormalizationWitness> laurent_witness(const IdealHandle& I, const Automorphism& theta);
std::optional<NormalizationWitness> combined_witness(const IdealHandle& I, const Automorphism& theta,
                                                     bool want_monic = true, bool want_unit_shift = true);

/// Re-checks every witness by membership in Θ(I) and by replaying cofactors.
bool verify_witness(const NormalizationWitness& w);

/// The B-algebra endomorphism of B[t] with t -> t + s^2 b'^2 (1 - t).
struct AnalyticDelta {
  Element b_prime;
  Element s;
  Element image_of_t() const;
  Element apply(const Element& alpha) const;
};

AnalyticDelta analytic_delta(const Element& b_prime, const Element& s);

}  // namespace towerlift
