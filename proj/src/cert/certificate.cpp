#include "towerlift/certificate.hpp"

#include <openssl/evp.h>

#include <cstdio>

#include "towerlift/errors.hpp"
#include "towerlift/parse.hpp"

namespace towerlift {

namespace {

constexpr int kFormat = 1;

using Vec = std::vector<Element>;

Json vec_json(const Vec& v) {
  Json out = Json::array();
  for (const auto& e : v) out.push_back(element_text(e));
  return out;
}

Json mat_json(const std::vector<Vec>& m) {
  Json out = Json::array();
  for (const auto& row : m) out.push_back(vec_json(row));
  return out;
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) fail(ErrorKind::Parse, std::string("missing field '") + key + "'");
  return j.at(key);
}

Element element_from(const RingPtr& ring, const Json& j) {
  if (!j.is_string()) fail(ErrorKind::Parse, "element must be a string");
  return parse_element(j.get<std::string>(), ring);
}

Vec vec_from(const RingPtr& ring, const Json& j) {
  if (!j.is_array()) fail(ErrorKind::Parse, "expected a list of elements");
  Vec out;
  for (const auto& e : j) out.push_back(element_from(ring, e));
  return out;
}

std::vector<Vec> mat_from(const RingPtr& ring, const Json& j) {
  if (!j.is_array()) fail(ErrorKind::Parse, "expected a matrix of elements");
  std::vector<Vec> out;
  for (const auto& row : j) out.push_back(vec_from(ring, row));
  return out;
}

template <typename T>
T number(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number_integer()) fail(ErrorKind::Parse, std::string("field '") + key + "' must be an integer");
  return v.get<T>();
}

Json envelope(const std::string& kind, const Ring& ring, Json payload) {
  Json env = {{"format", kFormat}, {"kind", kind}, {"tower", tower_json(ring)}, {"payload", std::move(payload)}};
  env["digest"] = certificate_digest(env);
  return env;
}

Json search_json(const SearchRecord& s) {
  Json rounds = Json::array();
  for (const auto& r : s.rounds)
    rounds.push_back({{"degree", r.degree}, {"height", r.height}, {"candidates", r.candidates}});
  return {{"stage", s.stage}, {"candidate", s.candidate}, {"rounds", rounds}};
}

SearchRecord search_from(const Json& j) {
  SearchRecord s;
  s.stage = field(j, "stage").get<std::string>();
  s.candidate = number<std::size_t>(j, "candidate");
  for (const auto& r : field(j, "rounds"))
    s.rounds.push_back({number<std::uint32_t>(r, "degree"), number<std::uint32_t>(r, "height"),
                        number<std::size_t>(r, "candidates")});
  return s;
}

Json radical_json(const std::vector<RadicalTranscript>& v) {
  Json out = Json::array();
  for (const auto& r : v)
    out.push_back({{"element", element_text(r.element)}, {"exponent", r.exponent}, {"cofactors", vec_json(r.cofactors)}});
  return out;
}

std::vector<RadicalTranscript> radical_from(const RingPtr& ring, const Json& j) {
  std::vector<RadicalTranscript> out;
  for (const auto& r : j)
    out.push_back({element_from(ring, field(r, "element")), number<std::uint32_t>(r, "exponent"),
                   vec_from(ring, field(r, "cofactors"))});
  return out;
}

Verdict verify_normalization(const RingPtr& ring, const Json& p) {
  auto bad = [](std::string why) { return Verdict{false, std::move(why)}; };
  const Level level = level_from_json(field(p, "level"));
  const IdealHandle I(ring, level, vec_from(ring, field(p, "ideal")));
  NormalizationWitness w{automorphism_from_json(*ring, field(p, "theta")),
                         IdealHandle(ring, level, vec_from(ring, field(p, "image"))),
                         std::nullopt,
                         std::nullopt,
                         level_from_json(field(p, "witness_level")),
                         number<std::uint32_t>(p, "exponent"),
                         number<std::size_t>(p, "attempts")};
  if (const Json& m = field(p, "monic"); !m.is_null()) {
    MonicWitness mw;
    mw.var = number<std::size_t>(m, "var");
    mw.element = element_from(ring, field(m, "element"));
    mw.degree = number<std::uint32_t>(m, "degree");
    mw.unit_leading_coefficient = field(m, "unit_leading_coefficient").get<bool>();
    mw.leading_coefficient_one = field(m, "leading_coefficient_one").get<bool>();
    if (mw.var >= ring->nvars()) return bad("monic.var");
    w.monic = mw;
  }
  if (const Json& u = field(p, "unit_shift"); !u.is_null())
    w.unit_shift = UnitShiftWitness{element_from(ring, field(u, "v")), element_from(ring, field(u, "h"))};

  if (!w.witness_level.subring_of(level)) return bad("witness_level");
  if (w.image.generators() != apply_automorphism(I, w.theta, false).generators()) return bad("image");
  if (!inverse_fixes_generators(ring, w.theta)) return bad("theta");
  if (w.monic) {
    Element lc = leading_coefficient(w.monic->element, w.monic->var);
    if (w.monic->leading_coefficient_one && lc != Element::one(ring)) return bad("monic.leading_coefficient_one");
  }
  if (!verify_witness(w)) return bad(w.monic && !w.unit_shift ? "monic" : "witness");
  return {};
}

}  // namespace

std::string canonical_dump(const Json& j) { return j.dump(); }

Json tower_json(const Ring& ring) {
  return {{"d", ring.d()},
          {"m", ring.m()},
          {"n", ring.n()},
          {"f", ring.poly_to_string(ring.f())},
          {"field", ring.field().is_rational() ? "Q" : "Fp"},
          {"prime", ring.field().p}};
}

RingPtr tower_from_json(const Json& j) {
  const std::string fld = field(j, "field").get<std::string>();
  if (fld != "Q" && fld != "Fp") fail(ErrorKind::Parse, "field must be Q or Fp");
  Field F = fld == "Q" ? Field{} : make_field(number<std::uint32_t>(j, "prime"));
  return make_tower(number<std::size_t>(j, "d"), number<std::size_t>(j, "m"), number<std::size_t>(j, "n"),
                    field(j, "f").get<std::string>(), F);
}

std::string element_text(const Element& e) {
  const Ring& R = *e.ring();
  std::string num = R.poly_to_string(e.num());
  if (e.is_polynomial()) return num;
  std::string den;
  if (e.a() > 0) {
    den = R.n() > 1 ? "(" + R.poly_to_string(R.ybar()) + ")" : R.poly_to_string(R.ybar());
    if (e.a() > 1) den += "^" + std::to_string(e.a());
  }
  if (e.b() > 0) {
    if (!den.empty()) den += "*";
    den += "f";
    if (e.b() > 1) den += "^" + std::to_string(e.b());
  }
  return "(" + num + ")/(" + den + ")";
}

Json level_json(const Level& level) {
  return {{"name", level.name}, {"present", level.present}, {"inverted_y", level.inverted_y}, {"invert_f", level.invert_f}};
}

Level level_from_json(const Json& j) {
  Level l;
  l.name = field(j, "name").get<std::string>();
  l.present = number<std::uint32_t>(j, "present");
  l.inverted_y = number<std::uint32_t>(j, "inverted_y");
  l.invert_f = field(j, "invert_f").get<bool>();
  return l;
}

Json automorphism_json(const Ring&, const Automorphism& theta) {
  return {{"family", to_string(theta.family)}, {"level", level_json(theta.level)}, {"sign", theta.sign},
          {"target", theta.target},           {"shifted", theta.shifted},          {"ti", theta.ti},
          {"si", theta.si},                   {"lj", theta.lj}};
}

Automorphism automorphism_from_json(const Ring& ring, const Json& j) {
  Automorphism a;
  a.family = auto_family_from_string(field(j, "family").get<std::string>());
  a.level = level_from_json(field(j, "level"));
  a.sign = number<int>(j, "sign");
  a.target = number<std::size_t>(j, "target");
  a.shifted = field(j, "shifted").get<std::vector<std::size_t>>();
  a.ti = field(j, "ti").get<std::vector<std::uint32_t>>();
  a.si = field(j, "si").get<std::vector<std::uint32_t>>();
  a.lj = field(j, "lj").get<std::vector<std::int32_t>>();
  if (a.sign != 1 && a.sign != -1) fail(ErrorKind::Parse, "automorphism sign must be 1 or -1");
  if (a.target >= ring.nvars()) fail(ErrorKind::Parse, "automorphism target out of range");
  for (auto v : a.shifted)
    if (v >= ring.nvars()) fail(ErrorKind::Parse, "shifted variable out of range");
  if (a.family != AutoFamily::Identity && (a.ti.size() != a.shifted.size() || a.si.size() != a.shifted.size()))
    fail(ErrorKind::Parse, "automorphism exponents do not match the shifted variables");
  if (a.lj.size() > ring.n()) fail(ErrorKind::Parse, "too many y rescaling exponents");
  return a;
}

Json lift_payload(const LiftCertificate& c) {
  const Ring& R = *c.ring;
  Json stages = Json::array();
  for (const auto& s : c.stages)
    stages.push_back({{"name", s.name},
                      {"theta", s.theta ? automorphism_json(R, *s.theta) : Json(nullptr)},
                      {"unit_power", s.unit_power},
                      {"detail", s.detail}});
  return {{"ideal", vec_json(c.ideal)},
          {"gens", vec_json(c.gens)},
          {"lifted", vec_json(c.lifted)},
          {"epsilons", vec_json(c.epsilons)},
          {"square_generators", vec_json(c.square_generators)},
          {"epsilon_cofactors", mat_json(c.epsilon_cofactors)},
          {"membership_cofactors", mat_json(c.membership_cofactors)},
          {"generation_cofactors", mat_json(c.generation_cofactors)},
          {"boundary", c.boundary ? vec_json(*c.boundary) : Json(nullptr)},
          {"stages", stages},
          {"search", c.search ? search_json(*c.search) : Json(nullptr)},
          {"seed", c.seed}};
}

LiftCertificate lift_from_payload(const RingPtr& ring, const Json& j) {
  LiftCertificate c;
  c.ring = ring;
  c.ideal = vec_from(ring, field(j, "ideal"));
  c.gens = vec_from(ring, field(j, "gens"));
  c.lifted = vec_from(ring, field(j, "lifted"));
  c.epsilons = vec_from(ring, field(j, "epsilons"));
  c.square_generators = vec_from(ring, field(j, "square_generators"));
  c.epsilon_cofactors = mat_from(ring, field(j, "epsilon_cofactors"));
  c.membership_cofactors = mat_from(ring, field(j, "membership_cofactors"));
  c.generation_cofactors = mat_from(ring, field(j, "generation_cofactors"));
  if (const Json& b = field(j, "boundary"); !b.is_null()) c.boundary = vec_from(ring, b);
  for (const auto& s : field(j, "stages")) {
    PipelineStage st;
    st.name = field(s, "name").get<std::string>();
    if (const Json& t = field(s, "theta"); !t.is_null()) st.theta = automorphism_from_json(*ring, t);
    st.unit_power = number<std::uint32_t>(s, "unit_power");
    st.detail = field(s, "detail").get<std::string>();
    c.stages.push_back(std::move(st));
  }
  if (const Json& s = field(j, "search"); !s.is_null()) c.search = search_from(s);
  c.seed = number<std::uint64_t>(j, "seed");
  return c;
}

Json certificate_json(const LiftCertificate& cert) { return envelope("lift", *cert.ring, lift_payload(cert)); }

Json certificate_json(const SetTheoreticCertificate& c) {
  Json p = {{"ideal", vec_json(c.ideal)},
            {"gens", vec_json(c.gens)},
            {"power", c.power},
            {"j_generators", vec_json(c.j_generators)},
            {"lift", lift_payload(c.lift)},
            {"gens_in_radical", radical_json(c.gens_in_radical)},
            {"h_in_ideal", radical_json(c.h_in_ideal)}};
  return envelope("settheoretic", *c.ring, std::move(p));
}

Json certificate_json(const UnimodularCertificate& c) {
  Json p = {{"idempotent", c.idempotent ? mat_json(*c.idempotent) : Json(nullptr)},
            {"v", vec_json(c.v)},
            {"unimodular", c.unimodular},
            {"cofactors", vec_json(c.cofactors)}};
  return envelope("unimodular", *c.ring, std::move(p));
}

Json certificate_json(const IdealHandle& ideal, const NormalizationWitness& w) {
  const Ring& R = *ideal.ring();
  Json monic = nullptr, shift = nullptr;
  if (w.monic)
    monic = {{"var", w.monic->var},
             {"element", element_text(w.monic->element)},
             {"degree", w.monic->degree},
             {"unit_leading_coefficient", w.monic->unit_leading_coefficient},
             {"leading_coefficient_one", w.monic->leading_coefficient_one}};
  if (w.unit_shift) shift = {{"v", element_text(w.unit_shift->v)}, {"h", element_text(w.unit_shift->h)}};
  Json p = {{"level", level_json(ideal.level())},
            {"ideal", vec_json(ideal.generators())},
            {"theta", automorphism_json(R, w.theta)},
            {"image", vec_json(w.image.generators())},
            {"monic", monic},
            {"unit_shift", shift},
            {"witness_level", level_json(w.witness_level)},
            {"exponent", w.exponent},
            {"attempts", w.attempts}};
  return envelope("normalization", R, std::move(p));
}

std::string certificate_digest(const Json& env) {
  Json body = env;
  if (body.is_object()) body.erase("digest");
  const std::string bytes = canonical_dump(body);
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1)
    fail(ErrorKind::Unsupported, "SHA-256 unavailable");
  std::string hex;
  char buf[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", md[i]);
    hex += buf;
  }
  return hex;
}

Verdict verify_certificate(const Json& env, bool check_digest) {
  auto bad = [](std::string why) { return Verdict{false, std::move(why)}; };
  Verdict v;
  try {
    if (!env.is_object()) return bad("envelope");
    if (number<int>(env, "format") != kFormat) return bad("format");
    const std::string kind = field(env, "kind").get<std::string>();
    RingPtr ring = tower_from_json(field(env, "tower"));
    const Json& p = field(env, "payload");
    if (kind == "lift") {
      v = verify_lift(lift_from_payload(ring, p));
    } else if (kind == "settheoretic") {
      SetTheoreticCertificate c;
      c.ring = ring;
      c.ideal = vec_from(ring, field(p, "ideal"));
      c.gens = vec_from(ring, field(p, "gens"));
      c.power = number<std::uint32_t>(p, "power");
      c.j_generators = vec_from(ring, field(p, "j_generators"));
      c.lift = lift_from_payload(ring, field(p, "lift"));
      c.gens_in_radical = radical_from(ring, field(p, "gens_in_radical"));
      c.h_in_ideal = radical_from(ring, field(p, "h_in_ideal"));
      v = verify_settheoretic(c);
    } else if (kind == "unimodular") {
      UnimodularCertificate c;
      c.ring = ring;
      if (const Json& e = field(p, "idempotent"); !e.is_null()) c.idempotent = mat_from(ring, e);
      c.v = vec_from(ring, field(p, "v"));
      c.unimodular = field(p, "unimodular").get<bool>();
      c.cofactors = vec_from(ring, field(p, "cofactors"));
      v = verify_unimodular(c);
    } else if (kind == "normalization") {
      v = verify_normalization(ring, p);
    } else {
      return bad("kind");
    }
  } catch (const Error& e) {
    return bad(std::string("malformed: ") + e.what());
  } catch (const Json::exception& e) {
    return bad(std::string("malformed: ") + e.what());
  }
  if (!v.ok) return v;
  if (check_digest) {
    const Json& d = env.contains("digest") ? env.at("digest") : Json(nullptr);
    if (!d.is_string() || d.get<std::string>() != certificate_digest(env)) return bad("digest");
  }
  return {};
}

}  // namespace towerlift
