#pragma once

#include <optional>
#include <vector>

#include "towerlift/lifting.hpp"

namespace towerlift {

/// element^exponent = sum cofactors_i * gens_i.
struct RadicalTranscript {
  Element element;
  std::uint32_t exponent = 1;
  std::vector<Element> cofactors;
};

struct SetTheoreticCertificate {
  RingPtr ring;
  std::vector<Element> ideal;  // generators of I
  std::vector<Element> gens;   // f_1..f_n
  std::uint32_t power = 1;     // (n-1)!
  /// f_1..f_{n-1} followed by the generators of I^power.
  std::vector<Element> j_generators;
  /// Lift whose `lifted` are the n generators h_j of J.
  LiftCertificate lift;
  std::vector<RadicalTranscript> gens_in_radical;  // f_i over h
  std::vector<RadicalTranscript> h_in_ideal;       // h_j over the generators of I
};

struct SetTheoreticOptions {
  LiftOptions lift;
  std::uint32_t max_n = 4;
  std::uint32_t max_radical_exponent = 32;
};

/// n elements with the same radical as I, given f_1..f_n generating I mod I^2.
SetTheoreticCertificate settheoretic_generators(const IdealHandle& I, const std::vector<Element>& gens,
                                                const SetTheoreticOptions& opts = {});

Verdict verify_settheoretic(const SetTheoreticCertificate& cert);

/// Surjective lift witnessing that (I, gens) is trivial in the p-th Euler class group.
LiftCertificate euler_trivial_witness(const IdealHandle& I, const std::vector<Element>& gens,
                                      const LiftOptions& opts = {});

using Matrix = std::vector<std::vector<Element>>;

struct UnimodularCertificate {
  RingPtr ring;
  std::optional<Matrix> idempotent;  // none for a free module
  std::vector<Element> v;
  bool unimodular = false;
  std::vector<Element> cofactors;  // sum cofactors_i * v_i = 1
};

/// Whether v is unimodular in the image of the idempotent (or in A^r).
UnimodularCertificate unimodular_certify(const RingPtr& ring, const std::optional<Matrix>& idempotent,
                                         const std::vector<Element>& v);

/// Brute force over images of vectors with monomial entries of degree <= max_degree.
std::optional<UnimodularCertificate> unimodular_search(const RingPtr& ring, const std::optional<Matrix>& idempotent,
                                                       std::size_t rank, std::uint32_t max_degree = 2);

Verdict verify_unimodular(const UnimodularCertificate& cert);

}  // namespace towerlift
