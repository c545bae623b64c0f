#include "towerlift/cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "towerlift/budget.hpp"
#include "towerlift/certificate.hpp"
#include "towerlift/errors.hpp"
#include "towerlift/ideal_ops.hpp"
#include "towerlift/parse.hpp"

namespace towerlift::cli {

namespace {

const std::set<std::string> kCommands = {"height",       "normalize", "lift",
                                         "lift-boundary", "settheoretic", "euler",
                                         "certify-unimodular", "verify", "oracle-check"};

const std::set<std::string> kJobFields = {"command", "d",          "m",        "n",          "f",
                                          "field",   "prime",      "level",    "generators", "gens",
                                          "boundary", "vector",    "idempotent", "search",   "certificate",
                                          "query",   "degree_bound", "options", "family",    "target"};

const std::set<std::string> kOptionFields = {"seed", "budget_ms", "max_exponent", "max_perturbation_degree",
                                             "max_n_factorial"};

struct Flags {
  std::string command;
  std::string input;
  std::string output;
  std::optional<std::uint64_t> seed;
  std::optional<std::int64_t> budget_ms;
  std::optional<std::uint32_t> max_exponent;
  std::optional<std::string> field;
  std::optional<std::uint32_t> prime;
  std::optional<std::uint32_t> max_n_factorial;
  std::optional<std::uint32_t> max_perturbation_degree;
};

struct Settings {
  LiftOptions lift;
  std::uint32_t max_exponent = 12;
  std::uint32_t max_n = 4;
};

[[noreturn]] void parse_fail(const std::string& where, const std::string& what) {
  fail(ErrorKind::Parse, where + ": " + what);
}

const Json& require(const Json& job, const char* key) {
  if (!job.contains(key)) parse_fail(key, "missing");
  return job.at(key);
}

template <typename T>
T get_as(const Json& v, const std::string& where) {
  try {
    return v.get<T>();
  } catch (const Json::exception& e) {
    parse_fail(where, e.what());
  }
}

Element element_at(const RingPtr& ring, const Json& v, const std::string& where) {
  if (!v.is_string()) parse_fail(where, "expected a string");
  try {
    return parse_element(v.get<std::string>(), ring);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Parse) parse_fail(where, e.what());
    throw;
  }
}

std::vector<Element> elements_at(const RingPtr& ring, const Json& job, const char* key) {
  const Json& v = require(job, key);
  if (!v.is_array()) parse_fail(key, "expected a list");
  std::vector<Element> out;
  for (std::size_t i = 0; i < v.size(); ++i)
    out.push_back(element_at(ring, v[i], std::string(key) + "[" + std::to_string(i) + "]"));
  return out;
}

RingPtr ring_of(const Json& job, const Flags& flags) {
  std::string field = flags.field.value_or(job.contains("field") ? get_as<std::string>(job["field"], "field") : "Q");
  if (field != "Q" && field != "Fp") parse_fail("field", "must be Q or Fp");
  Field F{};
  if (field == "Fp") {
    std::optional<std::uint32_t> p = flags.prime;
    if (!p && job.contains("prime")) p = get_as<std::uint32_t>(job["prime"], "prime");
    if (!p) parse_fail("prime", "required for Fp");
    F = make_field(*p);
  }
  return make_tower(get_as<std::size_t>(require(job, "d"), "d"), get_as<std::size_t>(require(job, "m"), "m"),
                    get_as<std::size_t>(require(job, "n"), "n"), get_as<std::string>(require(job, "f"), "f"), F);
}

Level level_of(const RingPtr& ring, const Json& job) {
  return Level::by_name(*ring, job.contains("level") ? get_as<std::string>(job["level"], "level") : "A");
}

Settings settings_of(const Json& job, const Flags& flags) {
  Settings s;
  if (job.contains("options")) {
    const Json& o = job["options"];
    if (!o.is_object()) parse_fail("options", "expected an object");
    for (const auto& [k, v] : o.items())
      if (!kOptionFields.count(k)) parse_fail("options." + k, "unknown field");
    if (o.contains("seed")) s.lift.seed = get_as<std::uint64_t>(o["seed"], "options.seed");
    if (o.contains("budget_ms"))
      s.lift.budget = std::chrono::milliseconds(get_as<std::int64_t>(o["budget_ms"], "options.budget_ms"));
    if (o.contains("max_exponent")) s.max_exponent = get_as<std::uint32_t>(o["max_exponent"], "options.max_exponent");
    if (o.contains("max_perturbation_degree"))
      s.lift.max_perturbation_degree = get_as<std::uint32_t>(o["max_perturbation_degree"], "options.max_perturbation_degree");
    if (o.contains("max_n_factorial")) s.max_n = get_as<std::uint32_t>(o["max_n_factorial"], "options.max_n_factorial");
  }
  if (flags.seed) s.lift.seed = *flags.seed;
  if (flags.budget_ms) s.lift.budget = std::chrono::milliseconds(*flags.budget_ms);
  if (flags.max_exponent) s.max_exponent = *flags.max_exponent;
  if (flags.max_perturbation_degree) s.lift.max_perturbation_degree = *flags.max_perturbation_degree;
  if (flags.max_n_factorial) s.max_n = *flags.max_n_factorial;
  if (s.lift.budget.count() <= 0) parse_fail("budget_ms", "must be positive");
  s.lift.max_exponent = s.max_exponent;
  return s;
}

std::size_t variable_index(const Ring& ring, const std::string& name) {
  const auto& names = ring.names();
  for (std::size_t v = 0; v < names.size(); ++v)
    if (names[v] == name) return v;
  parse_fail("target", "unknown variable '" + name + "'");
}

Json run_normalize(const Json& job, const RingPtr& ring, const Settings& s) {
  IdealHandle I(ring, level_of(ring, job), elements_at(ring, job, "generators"));
  const std::string family = job.contains("family") ? get_as<std::string>(job["family"], "family") : "combined";
  NormalizeOptions o;
  o.max_exponent = s.max_exponent;
  o.budget = s.lift.budget;
  NormalizationWitness w = [&] {
    if (family == "combined") return combined_normalize(I, o);
    if (family == "laurent") return laurent_monicize(I, o);
    if (family == "suslin") {
      const std::string target = job.contains("target") ? get_as<std::string>(job["target"], "target") : "t";
      return suslin_monicize(I, variable_index(*ring, target), o);
    }
    parse_fail("family", "must be combined, laurent or suslin");
  }();
  return certificate_json(I, w);
}

Json run_unimodular(const Json& job, const RingPtr& ring) {
  std::optional<Matrix> e;
  if (job.contains("idempotent") && !job["idempotent"].is_null()) {
    const Json& m = job["idempotent"];
    if (!m.is_array()) parse_fail("idempotent", "expected a matrix");
    Matrix rows;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (!m[i].is_array()) parse_fail("idempotent[" + std::to_string(i) + "]", "expected a list");
      std::vector<Element> row;
      for (std::size_t j = 0; j < m[i].size(); ++j)
        row.push_back(element_at(ring, m[i][j], "idempotent[" + std::to_string(i) + "][" + std::to_string(j) + "]"));
      rows.push_back(std::move(row));
    }
    e = std::move(rows);
  }
  const bool search = job.contains("search") && get_as<bool>(job["search"], "search");
  if (!search) return certificate_json(unimodular_certify(ring, e, elements_at(ring, job, "vector")));
  if (!e && !job.contains("vector")) parse_fail("idempotent", "search needs the idempotent or a vector length");
  const std::size_t rank = e ? e->size() : require(job, "vector").size();
  const std::uint32_t deg = job.contains("degree_bound") ? get_as<std::uint32_t>(job["degree_bound"], "degree_bound") : 2;
  auto c = unimodular_search(ring, e, rank, deg);
  if (!c) fail(ErrorKind::Mismatch, "no unimodular element among the searched candidates");
  return certificate_json(*c);
}

Json run_oracle(const Json& job, const RingPtr& ring) {
  auto as_poly = [](const Element& e, const std::string& where) {
    if (!e.is_polynomial()) parse_fail(where, "oracle-check works with polynomials");
    return e.num();
  };
  std::vector<Polynomial> gens;
  auto g = elements_at(ring, job, "generators");
  for (std::size_t i = 0; i < g.size(); ++i) gens.push_back(as_poly(g[i], "generators[" + std::to_string(i) + "]"));
  Polynomial q = as_poly(element_at(ring, require(job, "query"), "query"), "query");
  const std::uint32_t deg = job.contains("degree_bound") ? get_as<std::uint32_t>(job["degree_bound"], "degree_bound") : 4;
  const bool gb = ideal_contains(gens, {q});
  const OracleResult o = oracle_member(q, gens, deg);
  const bool member = o.verdict == OracleVerdict::Member;
  return {{"groebner", gb}, {"oracle", member ? "member" : "unknown"}, {"agree", !member || gb}};
}

int emit(const Json& report, const Flags& flags, std::ostream& out) {
  const std::string text = canonical_dump(report) + "\n";
  if (flags.output.empty()) {
    out << text;
  } else {
    std::ofstream f(flags.output, std::ios::binary);
    if (!f) fail(ErrorKind::Parse, "cannot write " + flags.output);
    f << text;
  }
  return Ok;
}

int execute(const Flags& flags, std::ostream& out) {
  std::string text;
  if (flags.input.empty() || flags.input == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    text = ss.str();
  } else {
    std::ifstream f(flags.input, std::ios::binary);
    if (!f) fail(ErrorKind::Parse, "cannot read " + flags.input);
    std::ostringstream ss;
    ss << f.rdbuf();
    text = ss.str();
  }
  Json job;
  try {
    job = Json::parse(text);
  } catch (const Json::parse_error& e) {
    fail(ErrorKind::Parse, std::string("input: ") + e.what());
  }
  if (!job.is_object()) parse_fail("input", "expected a JSON object");

  std::string command = flags.command;
  const bool bare_certificate = job.contains("kind") && job.contains("payload");
  if (!bare_certificate) {
    for (const auto& [k, v] : job.items())
      if (!kJobFields.count(k)) parse_fail(k, "unknown field");
    if (job.contains("command")) {
      const std::string c = get_as<std::string>(job["command"], "command");
      if (!command.empty() && command != c) parse_fail("command", "differs from the command line");
      command = c;
    }
  } else if (command.empty()) {
    command = "verify";
  }
  if (command.empty()) parse_fail("command", "missing");
  if (!kCommands.count(command)) parse_fail("command", "unknown command '" + command + "'");

  if (command == "verify") {
    const Json& cert = bare_certificate ? job : require(job, "certificate");
    Verdict v = verify_certificate(cert);
    emit({{"verdict", v.ok ? "pass" : "fail"}, {"failure", v.ok ? Json(nullptr) : Json(v.failure)}}, flags, out);
    return v.ok ? Ok : VerifyFailed;
  }

  const RingPtr ring = ring_of(job, flags);
  const Settings s = settings_of(job, flags);
  BudgetScope scope(s.lift.budget);

  if (command == "height") {
    IdealHandle I(ring, level_of(ring, job), elements_at(ring, job, "generators"));
    return emit({{"height", height_at_level(I)}}, flags, out);
  }
  if (command == "normalize") return emit(run_normalize(job, ring, s), flags, out);
  if (command == "certify-unimodular") return emit(run_unimodular(job, ring), flags, out);
  if (command == "oracle-check") {
    Json r = run_oracle(job, ring);
    emit(r, flags, out);
    return r["agree"].get<bool>() ? Ok : Failure;
  }

  IdealHandle I(ring, Level::A(*ring), elements_at(ring, job, "generators"));
  const auto gens = elements_at(ring, job, "gens");
  if (command == "lift") return emit(certificate_json(lift_T2(I, gens, s.lift)), flags, out);
  if (command == "lift-boundary")
    return emit(certificate_json(lift_T3(I, gens, elements_at(ring, job, "boundary"), s.lift)), flags, out);
  if (command == "euler") return emit(certificate_json(euler_trivial_witness(I, gens, s.lift)), flags, out);
  SetTheoreticOptions so;
  so.lift = s.lift;
  so.max_n = s.max_n;
  return emit(certificate_json(settheoretic_generators(I, gens, so)), flags, out);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Flags flags;
  CLI::App app{"Certified lifting of ideal generators over Laurent polynomial towers"};
  app.add_option("command", flags.command, "height|normalize|lift|lift-boundary|settheoretic|euler|"
                                           "certify-unimodular|verify|oracle-check");
  app.add_option("--input", flags.input, "job JSON file (default: stdin)");
  app.add_option("--output", flags.output, "report file (default: stdout)");
  app.add_option("--seed", flags.seed);
  app.add_option("--budget-ms", flags.budget_ms);
  app.add_option("--max-exponent", flags.max_exponent);
  app.add_option("--field", flags.field)->check(CLI::IsMember({"Q", "Fp"}));
  app.add_option("--prime", flags.prime);
  app.add_option("--max-n-factorial", flags.max_n_factorial);
  app.add_option("--max-perturbation-degree", flags.max_perturbation_degree);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return Ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return ParseError;
  }

  auto report = [&](const Error& e, int code) {
    Json r = {{"error", std::string(to_string(e.kind()))}, {"message", e.what()}};
    err << "error: " << e.what() << "\n";
    if (code != ParseError) {
      try {
        emit(r, flags, out);
      } catch (const Error&) {
      }
    }
    return code;
  };
  try {
    return execute(flags, out);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Parse) return report(e, ParseError);
    if (e.kind() == ErrorKind::BudgetExceeded) return report(e, BudgetExhausted);
    return report(e, Failure);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return Failure;
  }
}

}  // namespace towerlift::cli
