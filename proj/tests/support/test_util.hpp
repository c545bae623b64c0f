#pragma once

#include <random>
#include <string>
#include <vector>

#include "towerlift/parse.hpp"
#include "towerlift/ring.hpp"

namespace towerlift::testing {

inline RingPtr tower(std::size_t d, std::size_t m, std::size_t n, const std::string& f, Field field = Field{}) {
  Ring probe(d, m, n, Polynomial::constant(d + m + n + 1, field, 1), field);
  return make_ring(d, m, n, parse_polynomial(f, probe.names(), field), field);
}

inline Element el(const RingPtr& ring, const std::string& text) { return parse_element(text, ring); }

inline Polynomial poly(const RingPtr& ring, const std::string& text) {
  Element e = parse_element(text, ring);
  return e.num();
}

/// Random polynomial in the given variables with small integer coefficients.
inline Polynomial random_poly(std::mt19937_64& rng, std::size_t nvars, Field field, const std::vector<std::size_t>& vars,
                              std::uint32_t max_deg, std::size_t max_terms) {
  Polynomial p(nvars, field);
  std::size_t terms = 1 + rng() % max_terms;
  for (std::size_t k = 0; k < terms; ++k) {
    Monomial m;
    std::uint32_t budget = static_cast<std::uint32_t>(rng() % (max_deg + 1));
    for (std::size_t i = 0; i < vars.size() && budget > 0; ++i) {
      std::uint32_t e = static_cast<std::uint32_t>(rng() % (budget + 1));
      m.set(vars[i], e);
      budget -= e;
    }
    long c = static_cast<long>(rng() % 7) - 3;
    if (c == 0) c = 1;
    p += Polynomial::term(nvars, Scalar(field, c), m);
  }
  return p;
}

}  // namespace towerlift::testing
