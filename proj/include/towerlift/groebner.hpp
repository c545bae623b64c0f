#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "towerlift/polynomial.hpp"

namespace towerlift {

/// Monomial order given by an ordered partition of the variables into blocks.
/// Blocks are compared in sequence, each by graded reverse lexicographic order
/// on its own variables. Pure lex is the all-singletons partition and grevlex
/// the single-block one.
class TermOrder {
 public:
  enum class Kind { Lex, Grevlex, Block };

  TermOrder() = default;

  static TermOrder grevlex(std::size_t nvars);
  /// Lex with variable 0 largest.
  static TermOrder lex(std::size_t nvars);
  /// Lex with the given variables listed from largest to smallest.
  static TermOrder lex(const std::vector<std::size_t>& order);
  static TermOrder block(const std::vector<std::vector<std::size_t>>& blocks);
  /// Block order eliminating `eliminate` (first block) in favour of the rest.
  static TermOrder elimination(std::size_t nvars, const std::vector<std::size_t>& eliminate);

  Kind kind() const { return kind_; }
  std::size_t nvars() const { return nvars_; }
  const std::vector<std::vector<std::size_t>>& blocks() const { return blocks_; }

  /// <0 if a < b, 0 if equal, >0 if a > b.
  int compare(const Monomial& a, const Monomial& b) const;

  /// Stable textual form, e.g. "grevlex", "lex", "block[[3],[0,1,2]]".
  std::string describe() const;

  bool operator==(const TermOrder& o) const { return kind_ == o.kind_ && nvars_ == o.nvars_ && blocks_ == o.blocks_; }
  bool operator<(const TermOrder& o) const { return describe() < o.describe(); }

 private:
  Kind kind_ = Kind::Grevlex;
  std::size_t nvars_ = 0;
  std::vector<std::vector<std::size_t>> blocks_;
};

Monomial leading_monomial(const Polynomial& p, const TermOrder& order);
Term leading_term(const Polynomial& p, const TermOrder& order);

/// Reduced Gröbner basis. Generators are monic and sorted by increasing
/// leading monomial. With tracking, cofactors[i][j] is the multiplier of
/// inputs[j] in the representation of generators[i].
struct GroebnerBasis {
  TermOrder order;
  std::vector<Polynomial> generators;
  std::vector<Polynomial> inputs;
  std::optional<std::vector<std::vector<Polynomial>>> cofactors;

  bool tracked() const { return cofactors.has_value(); }
  bool is_unit() const { return generators.size() == 1 && generators[0].is_constant() && !generators[0].is_zero(); }
  bool is_zero_ideal() const { return generators.empty(); }
};

struct GroebnerStats {
  std::size_t pairs_reduced = 0;
  std::size_t zero_reductions = 0;
};

/// Buchberger's algorithm with Gebauer–Möller pair pruning and the normal
/// selection strategy (lcm degree, then term order, then indices).
GroebnerBasis buchberger(const std::vector<Polynomial>& gens, const TermOrder& order, bool track = false,
                         GroebnerStats* stats = nullptr);

Polynomial normal_form(const Polynomial& p, const GroebnerBasis& gb);

struct TrackedNormalForm {
  Polynomial remainder;
  /// p - remainder = sum cofactors[j] * gb.inputs[j]
  std::vector<Polynomial> cofactors;
};

TrackedNormalForm normal_form_tracked(const Polynomial& p, const GroebnerBasis& gb);

bool ideal_member(const Polynomial& p, const GroebnerBasis& gb);

/// Krull dimension of k[x]/I from the leading monomials of a Gröbner basis,
/// via maximal independent sets. Requires a proper ideal.
std::size_t krull_dimension(const GroebnerBasis& gb);

/// Checks the Gröbner property directly: every S-polynomial reduces to zero.
bool verify_groebner(const GroebnerBasis& gb);

}  // namespace towerlift
