#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "towerlift/element.hpp"
#include "towerlift/groebner.hpp"

namespace towerlift {

/// Validated tower from textual f; f may only mention z1..zd and t.
RingPtr make_tower(std::size_t d, std::size_t m, std::size_t n, const std::string& f_text, Field field = Field{});

struct TowerReport {
  bool f_monic_in_t = false;
  Polynomial f_at_one;
  bool f_at_one_unit = false;
};

TowerReport tower_report(const Ring& ring);

/// A subring of A cut out by the variables it contains and the elements it
/// inverts. The named presets are R = k[z], B = R[x, y^±], B[t] and A.
struct Level {
  std::string name;
  std::uint32_t present = 0;     // bit v: variable v belongs to the subring
  std::uint32_t inverted_y = 0;  // bit j: y_{j+1} is inverted
  bool invert_f = false;

  static Level R(const Ring& ring);
  static Level B(const Ring& ring);
  static Level BT(const Ring& ring);
  static Level A(const Ring& ring);
  /// B[t] with y_n kept polynomial; requires n > 0.
  static Level K(const Ring& ring);
  static Level by_name(const Ring& ring, const std::string& name);

  bool has_var(std::size_t v) const { return (present >> v) & 1u; }
  bool inverts_y(std::size_t j) const { return (inverted_y >> j) & 1u; }
  std::size_t dimension() const;  // number of present variables

  /// Product of the inverted y's, times f when f is inverted.
  Polynomial unit(const Ring& ring) const;

  /// Whether e lies in this subring of A.
  bool contains(const Element& e) const;

  /// Whether this subring is contained in `o`.
  bool subring_of(const Level& o) const;

  bool operator==(const Level& o) const {
    return present == o.present && inverted_y == o.inverted_y && invert_f == o.invert_f;
  }
};

/// An ideal of a level, with its saturated preimage in S and memoized
/// Gröbner bases. Copies share the cache; the cache is safe for concurrent
/// readers and results never depend on interleaving.
class IdealHandle {
 public:
  IdealHandle(RingPtr ring, Level level, std::vector<Element> gens);
  IdealHandle(RingPtr ring, Level level, const std::vector<Polynomial>& gens);

  const RingPtr& ring() const { return ring_; }
  const Level& level() const { return level_; }
  const std::vector<Element>& generators() const { return gens_; }
  std::size_t size() const { return gens_.size(); }

  /// Reduced grevlex basis of the preimage in S, saturated at the level unit.
  const std::vector<Polynomial>& preimage() const;
  const GroebnerBasis& preimage_gb(const TermOrder& order) const;
  bool is_proper() const;

  bool contains(const Element& e) const;

  /// Coefficients c_i in the level ring (as Elements of A) with
  /// e = sum c_i * generators[i], or nullopt when e is not a member.
  std::optional<std::vector<Element>> cofactors(const Element& e) const;

  /// dim of the level ring modulo this ideal.
  std::size_t quotient_dimension() const;

 private:
  struct Cache {
    std::mutex mu;
    std::optional<std::vector<Polynomial>> preimage;
    std::map<TermOrder, std::shared_ptr<const GroebnerBasis>> gbs;
    std::shared_ptr<const GroebnerBasis> tracked;
  };

  const GroebnerBasis& tracked_gb() const;

  RingPtr ring_;
  Level level_;
  std::vector<Element> gens_;
  std::shared_ptr<Cache> cache_;
};

/// Generators of the ideal generated by `gens` in A, then in the product.
IdealHandle ideal_product(const IdealHandle& I, const IdealHandle& J);
IdealHandle ideal_power(const IdealHandle& I, std::uint32_t k);
IdealHandle ideal_sum(const IdealHandle& I, const std::vector<Element>& extra);

/// Ideal equality at a common level, compared through saturated preimages.
bool ideal_equal(const IdealHandle& I, const IdealHandle& J);

/// I ∩ target; target must be a subring of I's level.
IdealHandle contract_ideal(const IdealHandle& I, const Level& target);

/// The ideal generated by I's generators in a larger level.
IdealHandle extend_ideal(const IdealHandle& I, const Level& target);

/// Height of I, computed on the saturated preimage in S. Throws for (1).
std::size_t height_at_level(const IdealHandle& I);

enum class AutoFamily { Identity, Suslin, Laurent, Combined };

std::string to_string(AutoFamily family);
AutoFamily auto_family_from_string(const std::string& s);

/// Substitution x_i -> x_i + sign*(pos^{ti} + neg^{-si}), y_j -> y_j * scale^{lj}
/// on the listed shifted variables, where (pos, neg, scale) is
///   Suslin:   (v, -, -)       with v the target variable
///   Laurent:  (y_n, y_n, y_n)
///   Combined: (t, f, f)
/// An exponent of zero drops the corresponding term.
struct Automorphism {
  AutoFamily family = AutoFamily::Identity;
  Level level;
  int sign = 1;
  std::size_t target = 0;
  std::vector<std::size_t> shifted;
  std::vector<std::uint32_t> ti;
  std::vector<std::uint32_t> si;
  std::vector<std::int32_t> lj;

  static Automorphism identity(const Level& level);
  static Automorphism suslin(const Ring& ring, const Level& level, std::size_t target, std::vector<std::size_t> shifted,
                             std::vector<std::uint32_t> exponents, int sign = 1);
  static Automorphism laurent(const Ring& ring, const Level& level, std::vector<std::size_t> shifted,
                              std::vector<std::uint32_t> ti, std::vector<std::uint32_t> si, std::vector<std::int32_t> lj,
                              int sign = 1);
  static Automorphism combined(const Ring& ring, std::vector<std::uint32_t> ti, std::vector<std::uint32_t> si,
                               std::vector<std::int32_t> lj, int sign = 1);

  bool is_identity() const;
  Automorphism inverse() const;
  std::vector<std::optional<Element>> images(const RingPtr& ring) const;
  Element apply(const Element& e) const;
  std::string describe(const Ring& ring) const;
};

/// Image of I under Θ; by default also checks that the height is preserved.
IdealHandle apply_automorphism(const IdealHandle& I, const Automorphism& theta, bool check_height = true);

/// Θ^{-1}(Θ(v)) == v for every ring variable v.
bool inverse_fixes_generators(const RingPtr& ring, const Automorphism& theta);

}  // namespace towerlift
