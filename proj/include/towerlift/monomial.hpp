#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>

namespace towerlift {

/// Upper bound on the size of any variable universe, including the auxiliary
/// variables introduced for saturation and radical membership.
inline constexpr std::size_t kMaxVars = 16;

/// Dense exponent vector. Entries past the ring's variable count stay zero.
class Monomial {
 public:
  Monomial() = default;

  static Monomial variable(std::size_t idx, std::uint32_t power = 1) {
    Monomial m;
    m.exp_[idx] = power;
    m.deg_ = power;
    return m;
  }

  std::uint32_t operator[](std::size_t i) const { return exp_[i]; }
  std::uint32_t degree() const { return deg_; }
  bool is_one() const { return deg_ == 0; }

  void set(std::size_t i, std::uint32_t v) {
    deg_ = deg_ - exp_[i] + v;
    exp_[i] = v;
  }

  Monomial operator*(const Monomial& o) const {
    Monomial r;
    for (std::size_t i = 0; i < kMaxVars; ++i) r.exp_[i] = exp_[i] + o.exp_[i];
    r.deg_ = deg_ + o.deg_;
    return r;
  }

  bool divides(const Monomial& o) const {
    if (deg_ > o.deg_) return false;
    for (std::size_t i = 0; i < kMaxVars; ++i)
      if (exp_[i] > o.exp_[i]) return false;
    return true;
  }

  /// Requires divides(o); returns o / *this.
  Monomial quotient_of(const Monomial& o) const {
    Monomial r;
    for (std::size_t i = 0; i < kMaxVars; ++i) r.exp_[i] = o.exp_[i] - exp_[i];
    r.deg_ = o.deg_ - deg_;
    return r;
  }

  Monomial lcm(const Monomial& o) const {
    Monomial r;
    for (std::size_t i = 0; i < kMaxVars; ++i) {
      r.exp_[i] = exp_[i] > o.exp_[i] ? exp_[i] : o.exp_[i];
      r.deg_ += r.exp_[i];
    }
    return r;
  }

  Monomial gcd(const Monomial& o) const {
    Monomial r;
    for (std::size_t i = 0; i < kMaxVars; ++i) {
      r.exp_[i] = exp_[i] < o.exp_[i] ? exp_[i] : o.exp_[i];
      r.deg_ += r.exp_[i];
    }
    return r;
  }

  bool coprime(const Monomial& o) const {
    for (std::size_t i = 0; i < kMaxVars; ++i)
      if (exp_[i] != 0 && o.exp_[i] != 0) return false;
    return true;
  }

  bool operator==(const Monomial& o) const { return deg_ == o.deg_ && exp_ == o.exp_; }

  /// Graded lexicographic comparison (variable 0 largest); the canonical
  /// storage order for polynomials. Returns <0, 0, >0.
  int graded_compare(const Monomial& o) const {
    if (deg_ != o.deg_) return deg_ < o.deg_ ? -1 : 1;
    for (std::size_t i = 0; i < kMaxVars; ++i)
      if (exp_[i] != o.exp_[i]) return exp_[i] < o.exp_[i] ? -1 : 1;
    return 0;
  }

  std::size_t hash() const {
    std::size_t h = 1469598103934665603ull;
    for (auto e : exp_) h = (h ^ e) * 1099511628211ull;
    return h;
  }

 private:
  std::array<std::uint32_t, kMaxVars> exp_{};
  std::uint32_t deg_ = 0;
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const { return m.hash(); }
};

}  // namespace towerlift
