#include <gtest/gtest.h>

#include <random>

#include "test_util.hpp"
#include "towerlift/certificate.hpp"

using namespace towerlift;
using namespace towerlift::testing;

namespace {

std::vector<Element> els(const RingPtr& r, std::initializer_list<const char*> texts) {
  std::vector<Element> out;
  for (auto t : texts) out.push_back(el(r, t));
  return out;
}

}  // namespace

TEST(ElementText, RoundTrips) {
  auto r = tower(1, 1, 2, "t^2 + z1");
  for (const char* s : {"0", "1/2*x1 - 3", "(x1 + t)/f^2", "x1/(y1*y2)", "(z1 - y1)/(y1^3*y2^3*f)", "-7/3/f"}) {
    Element e = el(r, s);
    EXPECT_EQ(el(r, element_text(e)), e) << s;
  }
  auto rp = tower(0, 1, 1, "t + 1", make_field(7));
  Element e = el(rp, "(3*x1 + y1)/(y1*f)");
  EXPECT_EQ(el(rp, element_text(e)), e);
}

TEST(TowerJson, RoundTrips) {
  auto r = make_tower(1, 2, 1, "t^2 + z1*t + 1", make_field(5));
  RingPtr back = tower_from_json(tower_json(*r));
  EXPECT_TRUE(back->same_as(*r));
}

TEST(Certificate, LiftRoundTripAndDigest) {
  auto r = make_tower(0, 1, 0, "t");
  IdealHandle J(r, Level::A(*r), els(r, {"x1", "t - 2"}));
  LiftCertificate c = lift_T2(J, els(r, {"x1 + (t-2)^2", "t - 2 + x1^2"}));
  Json env = certificate_json(c);
  EXPECT_EQ(env["kind"], "lift");
  EXPECT_EQ(env["digest"].get<std::string>().size(), 64u);
  EXPECT_EQ(certificate_digest(env), env["digest"]);
  EXPECT_TRUE(verify_certificate(env).ok);
  LiftCertificate back = lift_from_payload(r, env["payload"]);
  EXPECT_EQ(back.lifted, c.lifted);
  EXPECT_EQ(back.generation_cofactors, c.generation_cofactors);
  EXPECT_EQ(canonical_dump(certificate_json(back)), canonical_dump(env));

  Json tampered = env;
  tampered["payload"]["generation_cofactors"][0][0] =
      "(" + env["payload"]["generation_cofactors"][0][0].get<std::string>() + ") + 1";
  Verdict v = verify_certificate(tampered, false);
  EXPECT_FALSE(v.ok);
  EXPECT_EQ(v.failure, "generation_cofactors[0]");

  Json stale = env;
  stale["payload"]["seed"] = 99;
  EXPECT_TRUE(verify_certificate(stale, false).ok);
  EXPECT_EQ(verify_certificate(stale, true).failure, "digest");
}

TEST(Certificate, OtherKinds) {
  auto r = make_tower(0, 2, 0, "t");
  IdealHandle I(r, Level::A(*r), els(r, {"x1", "x2", "t - 2"}));
  SetTheoreticCertificate st = settheoretic_generators(I, els(r, {"x1", "x2", "t - 2"}));
  EXPECT_TRUE(verify_certificate(certificate_json(st)).ok);

  UnimodularCertificate u = unimodular_certify(r, std::nullopt, els(r, {"x1", "1 - x1*t"}));
  ASSERT_TRUE(u.unimodular);
  Json ue = certificate_json(u);
  EXPECT_TRUE(verify_certificate(ue).ok);
  ue["payload"]["cofactors"][0] = "0";
  EXPECT_EQ(verify_certificate(ue, false).failure, "cofactors");

  IdealHandle K(r, Level::A(*r), els(r, {"x1*x2 - 1"}));
  NormalizationWitness w = combined_normalize(K);
  Json ne = certificate_json(K, w);
  EXPECT_TRUE(verify_certificate(ne).ok);
  ne["payload"]["image"][0] = "x1";
  EXPECT_FALSE(verify_certificate(ne, false).ok);
}

TEST(Certificate, MalformedRejected) {
  EXPECT_FALSE(verify_certificate(Json::array()).ok);
  auto r = make_tower(0, 0, 0, "t");
  UnimodularCertificate u = unimodular_certify(r, std::nullopt, els(r, {"t", "1 - t"}));
  Json e = certificate_json(u);
  e["payload"]["v"][0] = "t +* 1";
  Verdict v = verify_certificate(e);
  EXPECT_FALSE(v.ok);
  EXPECT_EQ(v.failure.rfind("malformed", 0), 0u);
  e = certificate_json(u);
  e["kind"] = "other";
  EXPECT_EQ(verify_certificate(e).failure, "kind");
}

TEST(Certificate, Deterministic) {
  auto r = make_tower(0, 1, 0, "t - 2");
  IdealHandle J(r, Level::A(*r), els(r, {"x1", "t"}));
  auto g = els(r, {"x1 + t^2", "t + x1^2"});
  EXPECT_EQ(canonical_dump(certificate_json(lift_T2(J, g))), canonical_dump(certificate_json(lift_T2(J, g))));
}
