// nmds-lab: constructions, predicates and the claim suite from the command line.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "nmds/objects.hpp"
#include "nmds/planecubics.hpp"
#include "nmds/polarspaces.hpp"
#include "nmds/suite.hpp"
#include "nmds/twistedcubic.hpp"
#include "nmds/verify.hpp"

using json = nlohmann::ordered_json;
using namespace nmds;

namespace {

enum Exit { kOk = 0, kCheckFailed = 1, kBadArgs = 2, kBudget = 3 };

struct Flags {
  std::vector<std::uint32_t> q;
  std::uint32_t p = 0, m = 1;
  std::uint64_t seed = 0;
  int depth = 1;
  std::string out, format = "json";
  int jobs = 1;
  std::optional<double> budget_ms;
  std::string object, curve, kind, property = "nmds", code;
  std::optional<Elem> lambda, s, delta, xi, b;
  bool irreducible = false, lines = false;
};

struct Usage : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::uint32_t single_q(const Flags& f) {
  if (f.q.size() > 1) throw Usage("this subcommand takes a single --q");
  if (!f.q.empty()) return f.q.front();
  if (f.p == 0) throw Usage("--q or --p/--m is required");
  if (!is_prime(f.p)) throw Usage("--p must be prime");
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < f.m; ++i) {
    q *= f.p;
    if (q > Field::kMaxOrder) throw Usage("p^m exceeds the largest supported field");
  }
  return static_cast<std::uint32_t>(q);
}

void emit(const Flags& f, const std::string& text) {
  if (f.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream os(f.out, std::ios::binary);
  if (!os) throw Usage("cannot write " + f.out);
  os << text;
}

void emit_json(const Flags& f, const json& j) { emit(f, j.dump(2) + "\n"); }

std::string spectrum_csv(const SpectrumReport& r) {
  std::ostringstream os;
  os << "size,count\n";
  for (auto [k, v] : r.histogram) os << k << ',' << v << '\n';
  return os.str();
}

json spectrum_json(const SpectrumReport& r) {
  json h = json::object();
  for (auto [k, v] : r.histogram) h[std::to_string(k)] = v;
  return json{{"histogram", h}, {"max_size", r.max_size}, {"total", r.total}};
}

BuiltObject object_from(const Flags& f) {
  if (f.object.empty()) throw Usage("--object is required");
  return build_object({f.object, single_q(f), f.seed, f.kind});
}

Property property_from(const Flags& f) {
  if (f.property == "cap") return Property::Cap;
  if (f.property == "nmds") return Property::Nmds;
  throw Usage("--property must be cap or nmds");
}

std::string points_csv(const PointSet& s) {
  std::ostringstream os;
  for (const auto& p : s.points()) {
    for (std::size_t i = 0; i < p.size(); ++i) os << (i ? "," : "") << p[i];
    os << '\n';
  }
  return os.str();
}

json index_tuples(const PointSet& base, const std::vector<std::vector<std::uint32_t>>& tuples) {
  json a = json::array();
  for (const auto& t : tuples) {
    json pts = json::array();
    for (auto i : t) {
      Point p = base.space().point(i);
      json c = json::array();
      for (std::size_t k = 0; k < p.size(); ++k) c.push_back(p[k]);
      pts.push_back(c);
    }
    a.push_back(pts);
  }
  return a;
}

int cmd_field_info(const Flags& f) {
  FieldPtr fp = Field::of_order(single_q(f));
  json j = field_json(fp->q());
  j["description"] = fp->describe();
  if (fp->even()) {
    j["delta"] = fp->pick_delta();
    if (fp->is_suzuki()) j["sigma_exponent"] = fp->sqrt_2q();
  } else {
    j["nonsquare"] = fp->pick_nonsquare();
  }
  j["q_mod_3"] = fp->q() % 3;
  emit_json(f, j);
  return kOk;
}

int cmd_construct(const Flags& f) {
  BuiltObject o = object_from(f);
  if (f.format == "csv") {
    emit(f, points_csv(o.points));
    return kOk;
  }
  emit_json(f, json{{"construction", o.descriptor}, {"size", o.points.size()}, {"points", points_json(o.points)}});
  return kOk;
}

int cmd_verify(const Flags& f) {
  BuiltObject o = object_from(f);
  const Property prop = property_from(f);
  json j{{"construction", o.descriptor}, {"size", o.points.size()}, {"property", to_string(prop)}};

  if (!f.code.empty()) {
    CodeRole role;
    if (f.code == "generator") role = CodeRole::Generator;
    else if (f.code == "parity-check") role = CodeRole::ParityCheck;
    else throw Usage("--code must be generator or parity-check");
    CodeExport c = export_code_matrices(o.points, role);
    if (f.format == "csv") {
      emit(f, matrix_csv(c));
      return kOk;
    }
    j["code"] = {{"role", f.code}, {"n", c.n}, {"k", c.k}, {"distance_status", c.distance_status}};
    if (c.distance) j["code"]["distance"] = *c.distance;
    if (c.dual_distance) j["code"]["dual_distance"] = *c.dual_distance;
    j["code"]["matrix"] = c.matrix;
    emit_json(f, j);
    return kOk;
  }

  bool holds;
  if (prop == Property::Cap) {
    holds = is_cap(o.points, f.jobs);
  } else {
    NmdsResult r = is_nmds(o.points);
    holds = r.ok;
    j["violation"] = to_string(r.violation);
    json w = json::array();
    for (const auto& p : r.witness) {
      json c = json::array();
      for (std::size_t i = 0; i < p.size(); ++i) c.push_back(p[i]);
      w.push_back(c);
    }
    if (!w.empty()) j["witness"] = w;
  }
  j["holds"] = holds;
  if (holds) {
    ExtensionReport r = f.depth <= 1 ? addable_points(o.points, prop, f.jobs)
                                     : extension_search(o.points, prop, f.depth, f.jobs);
    j["complete"] = r.complete;
    j["addable"] = points_json(r.addable);
    j["witness_extensions"] = index_tuples(o.points, r.witness_extensions);
    if (f.depth > 1) {
      j["extensions_by_size"] = r.extensions_by_size;
      j["nodes"] = r.nodes;
    }
  }
  emit_json(f, j);
  return holds ? kOk : kCheckFailed;
}

int cmd_spectrum(const Flags& f) {
  BuiltObject o = object_from(f);
  SpectrumReport r = f.lines ? line_spectrum(o.points) : plane_spectrum(o.points);
  if (f.format == "csv") {
    emit(f, spectrum_csv(r));
    return kOk;
  }
  json j{{"construction", o.descriptor}, {"size", o.points.size()}, {"kind", f.lines ? "lines" : "hyperplanes"}};
  j.update(spectrum_json(r));
  emit_json(f, j);
  return kOk;
}

int cmd_lemma_plane(const Flags& f) {
  auto fam = curve_from_string(f.curve);
  if (!fam) throw Usage("--curve must be one of D1..D7");
  CurveParams prm;
  prm.lambda = f.lambda;
  prm.s = f.s;
  prm.delta = f.delta;
  prm.xi = f.xi;
  prm.b = f.b;
  if (f.irreducible) prm.irreducible = true;
  FieldPtr fp = Field::of_order(single_q(f));
  LemmaPlaneResult r = verify_lemma_plane(fp, *fam, prm);
  json params = json::object();
  for (auto& [k, v] : r.curve.params) params[k] = v;
  json j{{"curve", to_string(*fam)},
         {"field", field_json(fp->q())},
         {"case", r.curve.variant},
         {"params", params},
         {"coefficients", r.curve.coeffs},
         {"curve_points", r.curve_size},
         {"trisecants", r.trisecants},
         {"match", r.match},
         {"expected", points_json(r.expected.sorted())},
         {"computed", points_json(r.computed.sorted())}};
  if (f.format == "csv") {
    emit(f, points_csv(r.computed.sorted()));
  } else {
    emit_json(f, j);
  }
  return r.match ? kOk : kCheckFailed;
}

int cmd_orbits(const Flags& f) {
  const std::uint32_t q = single_q(f);
  const std::string obj = f.object.empty() ? "twisted-cubic" : f.object;
  json j{{"object", obj}, {"field", field_json(q)}};
  std::map<std::uint64_t, std::uint64_t> rows;
  if (obj == "twisted-cubic") {
    TwistedCubic c(Field::of_order(q));
    Chords ch = chords(c);
    ChordPartition part = classify_all(c, ch);
    json counts = json::object();
    for (auto [k, v] : part.counts) counts[to_string(k)] = v;
    j["real_chords"] = ch.real.size();
    j["imaginary_chords"] = ch.imaginary.size();
    j["classes"] = counts;
    j["exact"] = part.exact;
    // Orbit-invariant proxy for points off C: osculating planes through the point.
    std::map<std::string, std::map<int, std::uint64_t>> osc;
    for (std::uint32_t i = 0; i < c.space().size(); ++i)
      if (part.kind[i] != ChordKind::OnCurve) ++osc[to_string(part.kind[i])][osculating_count(c, c.space().point(i))];
    json o = json::object();
    for (auto& [k, m] : osc) {
      o[k] = json::object();
      for (auto [n, v] : m) o[k][std::to_string(n)] = v;
    }
    j["osculating_planes_through_point"] = o;
    if (f.format == "csv") {
      std::ostringstream os;
      os << "class,count\n";
      for (auto [k, v] : part.counts) os << to_string(k) << ',' << v << '\n';
      emit(f, os.str());
      return part.exact ? kOk : kCheckFailed;
    }
    emit_json(f, j);
    return part.exact ? kOk : kCheckFailed;
  }
  if (obj == "quadric-suzuki-ovoid") {
    ParabolicQuadric q4(Field::of_order(q));
    SecantProfile prof = secant_profile(suzuki_ovoid_Q4(q4), q4, f.jobs);
    if (f.format == "csv") {
      std::ostringstream os;
      os << "secants,count\n";
      for (auto [k, v] : prof.histogram) os << k << ',' << v << '\n';
      emit(f, os.str());
      return kOk;
    }
    json h = json::object();
    for (auto [k, v] : prof.histogram) h[std::to_string(k)] = v;
    j["secants"] = prof.secants;
    j["points_off_quadric_by_secant_count"] = h;
    j["nucleus"] = 1;
    j["quadric"] = q4.points().size();
    emit_json(f, j);
    return kOk;
  }
  throw Usage("orbits supports --object twisted-cubic or quadric-suzuki-ovoid");
}

int cmd_paper_suite(const Flags& f) {
  SuiteOptions opts;
  opts.qs = f.q;
  opts.seed = f.seed;
  opts.jobs = f.jobs;
  opts.budget_ms = f.budget_ms;
  SuiteResult r = run_suite(opts, [](const Check& c) {
    std::cerr << to_string(c.status) << "  " << c.claim_id << "  (" << static_cast<long>(c.elapsed_ms) << " ms)\n";
  });
  json rep = report_json(opts, r);
  if (f.format == "csv") {
    std::ostringstream os;
    os << "claim_id,criterion,status,elapsed_ms\n";
    for (const auto& c : r.checks) os << c.claim_id << ',' << c.criterion << ',' << to_string(c.status) << ',' << c.elapsed_ms << '\n';
    emit(f, os.str());
  } else {
    emit_json(f, rep);
  }
  if (r.budget_exhausted) return kBudget;
  return r.all_pass ? kOk : kCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Constructions and checks for NMDS-sets, ovoids, caps and the twisted cubic."};
  app.require_subcommand(1);
  Flags f;
  if (const char* env = std::getenv("NMDS_LAB_JOBS")) {
    try {
      f.jobs = std::max(1, std::stoi(env));
    } catch (const std::exception&) {
      std::cerr << "NMDS_LAB_JOBS must be an integer\n";
      return kBadArgs;
    }
  }

  auto common = [&f](CLI::App* s) {
    s->add_option("--q", f.q, "field order (comma separated list for paper-suite)")->delimiter(',');
    s->add_option("--p", f.p, "characteristic, with --m");
    s->add_option("--m", f.m, "extension degree");
    s->add_option("--seed", f.seed, "seed for randomized constructions");
    s->add_option("--out", f.out, "write output to this file");
    s->add_option("--format", f.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    s->add_option("--jobs", f.jobs, "worker threads")->check(CLI::PositiveNumber);
    s->add_option("--budget-ms", f.budget_ms, "wall-clock budget in milliseconds");
  };
  auto objects = [&f](CLI::App* s) {
    s->add_option("--object", f.object, "construction name")->check(CLI::IsMember(object_names()));
    s->add_option("--kind", f.kind, "points added to the twisted cubic, e.g. Q or S1,R");
  };

  auto* field_info = app.add_subcommand("field-info", "field tables and distinguished elements");
  auto* construct = app.add_subcommand("construct", "build a named point set");
  auto* verify = app.add_subcommand("verify", "cap/NMDS predicates, addable points, extensions, codes");
  auto* spectrum = app.add_subcommand("spectrum", "hyperplane (or line) intersection histogram");
  auto* lemma = app.add_subcommand("lemma-plane", "points off every trisecant of a plane cubic");
  auto* orbits = app.add_subcommand("orbits", "point classes under the chord partition or secant profile");
  auto* suite = app.add_subcommand("paper-suite", "run every registered claim");
  for (auto* s : {field_info, construct, verify, spectrum, lemma, orbits, suite}) common(s);
  for (auto* s : {construct, verify, spectrum, orbits}) objects(s);
  verify->add_option("--property", f.property, "cap or nmds");
  verify->add_option("--depth", f.depth, "extension depth, 1 to 3")->check(CLI::Range(1, 3));
  verify->add_option("--code", f.code, "export generator or parity-check matrix instead");
  spectrum->add_flag("--lines", f.lines, "histogram over lines rather than hyperplanes");
  lemma->add_option("--curve", f.curve, "D1..D7")->required();
  lemma->add_option("--lambda", f.lambda);
  lemma->add_option("--s", f.s);
  lemma->add_option("--delta", f.delta);
  lemma->add_option("--xi", f.xi);
  lemma->add_option("--b", f.b);
  lemma->add_flag("--irreducible", f.irreducible, "pick lambda with an irreducible attached cubic");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kBadArgs;
  }

  try {
    if (*field_info) return cmd_field_info(f);
    if (*construct) return cmd_construct(f);
    if (*verify) return cmd_verify(f);
    if (*spectrum) return cmd_spectrum(f);
    if (*lemma) return cmd_lemma_plane(f);
    if (*orbits) return cmd_orbits(f);
    if (*suite) return cmd_paper_suite(f);
  } catch (const Usage& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kBadArgs;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.code() == ErrorCode::Timeout ? kBudget : kBadArgs;
  }
  return kBadArgs;
}
