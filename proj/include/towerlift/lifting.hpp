#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "towerlift/transforms.hpp"

namespace towerlift {

/// gens generate I modulo I^2. The transcript expresses every generator of I
/// over gens followed by `square_generators`.
struct SurjectionModI2 {
  std::vector<Element> gens;
  std::vector<Element> square_generators;
  bool valid = false;
  std::optional<Element> counterexample;
  std::vector<std::vector<Element>> transcript;
};

/// Throws NotInIdeal when some gens[i] is not in I.
SurjectionModI2 check_surjection_mod_sq(const IdealHandle& I, const std::vector<Element>& gens);

/// Generators q_j q_k (j <= k) of I^2, from I's generators.
std::vector<Element> square_generators(const IdealHandle& I);

/// Matrix over the localization at `base`, stored as num / base^power.
struct LocalizedMatrix {
  std::vector<std::vector<Element>> num;
  Element base;
  std::uint32_t power = 0;
};

struct GlueResult {
  std::vector<std::vector<Element>> xi;
  Element u;  // u * f^a + v * g^b = 1
  Element v;
};

/// Glues phi over the localization at f and psi over the localization at g
/// into a matrix over `level`, for comaximal f and g.
GlueResult fiber_glue(const RingPtr& ring, const Level& level, const LocalizedMatrix& phi, const LocalizedMatrix& psi);

struct LiftOptions {
  std::uint64_t seed = 0;
  std::chrono::milliseconds budget{120000};
  std::uint32_t max_exponent = 12;
  std::uint32_t max_perturbation_degree = 4;
  std::uint32_t max_coefficient = 8;
  std::uint32_t samples_per_round = 24;
};

/// One (degree, height) round of the perturbation search.
struct SearchRound {
  std::uint32_t degree = 0;
  std::uint32_t height = 0;
  std::size_t candidates = 0;
};

struct SearchRecord {
  std::string stage;  // "zero", "normal-form", "sweep", "random"
  std::size_t candidate = 0;
  std::vector<SearchRound> rounds;
};

struct MandalResult {
  std::vector<Element> lifted;
  std::vector<Element> epsilons;
  MonicWitness monic;
  SearchRecord search;
};

/// g_i = f_i + eps_i with eps_i in K^2 (in (t-1)K^2 when a boundary is given,
/// after correcting f_i(1) to the boundary values) and (g) = K.
/// K must be at a level where monic_var is polynomial and f is not inverted.
MandalResult mandal_lift(const IdealHandle& K, const std::vector<Element>& gens, std::size_t monic_var,
                         const std::optional<std::vector<Element>>& boundary = std::nullopt,
                         const LiftOptions& opts = {});

/// A stage of the lifting pipeline, in application order.
struct PipelineStage {
  std::string name;
  std::optional<Automorphism> theta;
  std::uint32_t unit_power = 0;  // k for f^k, l for y_n^l
  std::string detail;
};

struct LiftCertificate {
  RingPtr ring;
  std::vector<Element> ideal;  // generators of I over A
  std::vector<Element> gens;   // f_i
  std::vector<Element> lifted;  // g_i
  std::vector<Element> epsilons;
  std::vector<Element> square_generators;
  std::vector<std::vector<Element>> epsilon_cofactors;     // eps_i over square_generators
  std::vector<std::vector<Element>> membership_cofactors;  // g_i over ideal
  std::vector<std::vector<Element>> generation_cofactors;  // ideal_j over lifted
  std::optional<std::vector<Element>> boundary;
  std::vector<PipelineStage> stages;
  std::optional<SearchRecord> search;
  std::uint64_t seed = 0;
};

/// Lift of gens to generators of I over A with gens - lift in I^2.
LiftCertificate lift_T2(const IdealHandle& I, const std::vector<Element>& gens, const LiftOptions& opts = {});

/// As lift_T2, with the additional requirement lift_i(1) = delta_i.
LiftCertificate lift_T3(const IdealHandle& I, const std::vector<Element>& gens, const std::vector<Element>& delta,
                        const LiftOptions& opts = {});

struct Verdict {
  bool ok = true;
  std::string failure;  // first violated check
};

/// Replays every transcript arithmetically, then re-checks membership and
/// ideal equality with fresh Gröbner computations.
Verdict verify_lift(const LiftCertificate& cert);

/// Lifting without the rank bounds of lift_T2; used by the applications.
LiftCertificate lift_pipeline(const IdealHandle& I, const std::vector<Element>& gens, const LiftOptions& opts);

}  // namespace towerlift
