#pragma once

#include <optional>
#include <vector>

#include "towerlift/groebner.hpp"

namespace towerlift {

/// Ideal-level operations on generator lists in a polynomial ring. Results
/// that are ideals are returned as reduced Gröbner bases.

/// I : u^inf, eliminating one auxiliary variable w from I + (1 - w*u).
std::vector<Polynomial> saturate(const std::vector<Polynomial>& gens, const Polynomial& u);

/// I ∩ k[keep]; the output lives in the same ambient ring.
std::vector<Polynomial> elim_contract(const std::vector<Polynomial>& gens, const std::vector<std::size_t>& keep);

/// p ∈ sqrt(I), decided by 1 ∈ I + (1 - w*p).
bool radical_member(const Polynomial& p, const std::vector<Polynomial>& gens);

struct DimHeight {
  std::size_t dim = 0;
  std::size_t height = 0;
};

/// Krull dimension of S/I and height nvars - dim. Throws ImproperIdeal for (1).
DimHeight dimension_height(const std::vector<Polynomial>& gens);

bool ideal_contains(const std::vector<Polynomial>& outer, const std::vector<Polynomial>& inner);
bool ideal_equal(const std::vector<Polynomial>& a, const std::vector<Polynomial>& b);
bool is_unit_ideal(const std::vector<Polynomial>& gens);

enum class OracleVerdict { Member, Unknown };

struct OracleResult {
  OracleVerdict verdict = OracleVerdict::Unknown;
  /// p = sum cofactors[i] * gens[i] when verdict is Member.
  std::vector<Polynomial> cofactors;
};

/// Membership by exact linear algebra over the coefficients of cofactors of
/// degree at most `degree_bound`. Never reports non-membership.
OracleResult oracle_member(const Polynomial& p, const std::vector<Polynomial>& gens, std::uint32_t degree_bound);

}  // namespace towerlift
