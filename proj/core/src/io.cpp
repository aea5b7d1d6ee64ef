#include "c0dynamo/io.hpp"

#include "c0dynamo/version.hpp"

#include "json.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <utility>

namespace c0dynamo {

namespace {

using json = nlohmann::json;

json parse_checked(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    int line = 1, column = 1;
    const std::size_t stop = e.byte > 0 ? e.byte - 1 : 0;
    for (std::size_t i = 0; i < stop && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ParseError(std::string("malformed JSON: ") + e.what(), line, column, "");
  }
}

[[noreturn]] void fail(const std::string& message, const std::string& path) {
  throw ParseError(message + " at " + (path.empty() ? "document root" : path), 0, 0, path);
}

const json& field(const json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) fail("expected an object", path);
  auto it = j.find(key);
  if (it == j.end()) fail("missing field '" + key + "'", path + "/" + key);
  return *it;
}

std::string get_string(const json& j, const std::string& key, const std::string& path) {
  const json& v = field(j, key, path);
  if (!v.is_string()) fail("expected a string", path + "/" + key);
  return v.get<std::string>();
}

std::int64_t get_int(const json& j, const std::string& key, const std::string& path) {
  const json& v = field(j, key, path);
  if (!v.is_number_integer()) fail("expected an integer", path + "/" + key);
  return v.get<std::int64_t>();
}

double get_double(const json& j, const std::string& key, const std::string& path) {
  const json& v = field(j, key, path);
  if (!v.is_number()) fail("expected a number", path + "/" + key);
  const double x = v.get<double>();
  if (!std::isfinite(x)) fail("non-finite number", path + "/" + key);
  return x;
}

Rat rat_from(const json& v, const std::string& path) {
  if (!v.is_string()) fail("expected a rational \"p/q\" string", path);
  try {
    return parse_rational(v.get<std::string>());
  } catch (const std::invalid_argument& e) {
    fail(e.what(), path);
  }
}

Rat get_rat(const json& j, const std::string& key, const std::string& path) {
  return rat_from(field(j, key, path), path + "/" + key);
}

void check_version(const json& j, const std::string& path) {
  if (get_int(j, "schema_version", path) != kSchemaVersion)
    fail("unsupported schema_version", path + "/schema_version");
}

double finite_checked(double v, const std::string& what) {
  if (!std::isfinite(v)) throw std::invalid_argument("non-finite number in " + what);
  return v;
}

json rat_array(const std::vector<Rat>& values) {
  json out = json::array();
  for (const Rat& v : values) out.push_back(format_rational(v));
  return out;
}

std::vector<Rat> rat_vector(const json& v, const std::string& path) {
  if (!v.is_array()) fail("expected an array of rational strings", path);
  std::vector<Rat> out;
  for (std::size_t i = 0; i < v.size(); ++i)
    out.push_back(rat_from(v[i], path + "/" + std::to_string(i)));
  return out;
}

json spec_to_obj(const SequenceSpec& spec) {
  json out;
  switch (spec.kind()) {
    case SpecKind::EventuallyConstant:
      out["kind"] = "eventually_constant";
      out["prefix"] = rat_array(spec.prefix());
      out["value"] = format_rational(spec.block().front());
      break;
    case SpecKind::PeriodicTail:
      out["kind"] = "periodic_tail";
      out["prefix"] = rat_array(spec.prefix());
      out["block"] = rat_array(spec.block());
      break;
    case SpecKind::Opaque:
      throw std::invalid_argument("opaque sequence specs are not serializable");
  }
  return out;
}

SequenceSpec spec_from_obj(const json& j, const std::string& path) {
  const std::string kind = get_string(j, "kind", path);
  try {
    if (kind == "eventually_constant")
      return SequenceSpec::eventually_constant(rat_vector(field(j, "prefix", path), path + "/prefix"),
                                               get_rat(j, "value", path));
    if (kind == "periodic_tail")
      return SequenceSpec::periodic_tail(rat_vector(field(j, "prefix", path), path + "/prefix"),
                                         rat_vector(field(j, "block", path), path + "/block"));
  } catch (const std::invalid_argument& e) {
    fail(e.what(), path);
  }
  fail("unknown sequence kind '" + kind + "'", path + "/kind");
}

json formal_real_to_obj(const FormalReal& value) {
  json out = json::object();
  out["1"] = format_rational(value.rational());
  for (const auto& [name, c] : value.terms()) out[name] = format_rational(c);
  return out;
}

FormalReal formal_real_from_obj(const json& j, const std::string& path) {
  if (!j.is_object()) fail("expected a coefficient object", path);
  FormalReal out;
  for (auto it = j.begin(); it != j.end(); ++it) {
    const Rat c = rat_from(it.value(), path + "/" + it.key());
    if (it.key() == "1") {
      out += FormalReal(c);
    } else {
      try {
        out += FormalReal::symbol(it.key(), c);
      } catch (const std::invalid_argument& e) {
        fail(e.what(), path + "/" + it.key());
      }
    }
  }
  return out;
}

json versioned() {
  json out;
  out["schema_version"] = kSchemaVersion;
  return out;
}

}  // namespace

std::string spec_to_json(const SequenceSpec& spec) {
  json out = spec_to_obj(spec);
  out["schema_version"] = kSchemaVersion;
  return out.dump(2) + "\n";
}

SequenceSpec spec_from_json(const std::string& text) {
  json j = parse_checked(text);
  check_version(j, "");
  return spec_from_obj(j, "");
}

std::string system_to_json(const SystemConfig& config) {
  json out = versioned();
  out["d"] = config.params.dimension;
  out["radius_rule"] = config.params.radius_rule;
  out["dense_rule"] = config.params.dense_rule;
  out["profile"] = profile_name(config.profile);
  out["spec"] = spec_to_obj(config.spec);
  return out.dump(2) + "\n";
}

SystemConfig system_from_json(const std::string& text) {
  json j = parse_checked(text);
  check_version(j, "");
  SystemConfig out;
  const std::int64_t d = get_int(j, "d", "");
  if (d < 2 || d > 64) fail("dimension must be in [2, 64]", "/d");
  out.params.dimension = static_cast<int>(d);
  out.params.radius_rule = get_string(j, "radius_rule", "");
  out.params.dense_rule = get_string(j, "dense_rule", "");
  try {
    out.params.validate();
  } catch (const std::invalid_argument& e) {
    fail(e.what(), "/radius_rule");
  }
  try {
    out.profile = profile_from_name(get_string(j, "profile", ""));
  } catch (const std::invalid_argument& e) {
    fail(e.what(), "/profile");
  }
  out.spec = spec_from_obj(field(j, "spec", ""), "/spec");
  return out;
}

std::string witness_to_json(const ConjugacyWitness& witness) {
  json out = versioned();
  out["d"] = witness.dimension();
  json entries = json::array();
  for (const WitnessEntry& e : witness.entries()) {
    json je;
    je["strip"] = e.strip;
    json box = json::array();
    for (const auto& [lo, hi] : e.box)
      box.push_back(json::array({format_rational(lo), format_rational(hi)}));
    je["box"] = box;
    je["source_center"] = rat_array(e.source_center);
    je["target_center"] = rat_array(e.target_center);
    je["radius"] = format_rational(e.radius);
    je["margin"] = format_rational(e.margin);
    entries.push_back(std::move(je));
  }
  out["entries"] = entries;
  return out.dump(2) + "\n";
}

ConjugacyWitness witness_from_json(const std::string& text) {
  json j = parse_checked(text);
  check_version(j, "");
  const std::int64_t d = get_int(j, "d", "");
  if (d < 2 || d > 64) fail("dimension must be in [2, 64]", "/d");
  const json& entries = field(j, "entries", "");
  if (!entries.is_array()) fail("expected an array", "/entries");
  std::vector<WitnessEntry> list;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const std::string path = "/entries/" + std::to_string(i);
    const json& je = entries[i];
    WitnessEntry e;
    e.strip = get_int(je, "strip", path);
    const json& box = field(je, "box", path);
    if (!box.is_array()) fail("expected an array of [lo, hi] pairs", path + "/box");
    for (std::size_t k = 0; k < box.size(); ++k) {
      const std::string bp = path + "/box/" + std::to_string(k);
      if (!box[k].is_array() || box[k].size() != 2) fail("expected a [lo, hi] pair", bp);
      e.box.emplace_back(rat_from(box[k][0], bp + "/0"), rat_from(box[k][1], bp + "/1"));
    }
    e.source_center = rat_vector(field(je, "source_center", path), path + "/source_center");
    e.target_center = rat_vector(field(je, "target_center", path), path + "/target_center");
    e.radius = get_rat(je, "radius", path);
    e.margin = get_rat(je, "margin", path);
    list.push_back(std::move(e));
  }
  return ConjugacyWitness(static_cast<int>(d), std::move(list));
}

std::string certificate_to_json(const NonConjugacyCertificate& cert) {
  json out = versioned();
  out["value_a"] = format_rational(cert.value_a);
  out["value_b"] = format_rational(cert.value_b);
  out["gap"] = format_rational(cert.gap);
  out["residue"] = {{"start", cert.residue.start}, {"period", cert.residue.period}};
  out["dense_indices"] = cert.dense_indices;
  return out.dump(2) + "\n";
}

NonConjugacyCertificate certificate_from_json(const std::string& text) {
  json j = parse_checked(text);
  check_version(j, "");
  NonConjugacyCertificate out;
  out.value_a = get_rat(j, "value_a", "");
  out.value_b = get_rat(j, "value_b", "");
  out.gap = get_rat(j, "gap", "");
  const json& residue = field(j, "residue", "");
  out.residue.start = get_int(residue, "start", "/residue");
  out.residue.period = get_int(residue, "period", "/residue");
  const json& idx = field(j, "dense_indices", "");
  if (!idx.is_array()) fail("expected an array of integers", "/dense_indices");
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (!idx[i].is_number_integer())
      fail("expected an integer", "/dense_indices/" + std::to_string(i));
    out.dense_indices.push_back(idx[i].get<std::int64_t>());
  }
  return out;
}

std::string formal_real_to_json(const FormalReal& value) {
  return formal_real_to_obj(value).dump(2) + "\n";
}

FormalReal formal_real_from_json(const std::string& text) {
  return formal_real_from_obj(parse_checked(text), "");
}

std::string rotation_to_json(const TorusRotation& rotation) {
  json out = versioned();
  out["x"] = formal_real_to_obj(rotation.x);
  out["y"] = formal_real_to_obj(rotation.y);
  return out.dump(2) + "\n";
}

TorusRotation rotation_from_json(const std::string& text) {
  json j = parse_checked(text);
  check_version(j, "");
  TorusRotation out;
  out.x = formal_real_from_obj(field(j, "x", ""), "/x");
  out.y = formal_real_from_obj(field(j, "y", ""), "/y");
  return out;
}

std::string report_to_json(const RunReport& report) {
  json out = versioned();
  out["command"] = report.command;
  out["version"] = report.version.empty() ? std::string(kVersion) : report.version;
  out["wall_seconds"] = finite_checked(report.wall_seconds, "wall_seconds");
  out["input_digests"] = report.input_digests;
  out["verdicts"] = report.verdicts;
  json numbers = json::object();
  for (const auto& [key, value] : report.numbers)
    numbers[key] = finite_checked(value, "numbers/" + key);
  out["numbers"] = numbers;
  return out.dump(2) + "\n";
}

RunReport report_from_json(const std::string& text) {
  json j = parse_checked(text);
  check_version(j, "");
  RunReport out;
  out.command = get_string(j, "command", "");
  out.version = get_string(j, "version", "");
  out.wall_seconds = get_double(j, "wall_seconds", "");
  auto read_string_map = [&](const std::string& label, std::map<std::string, std::string>& into) {
    const json& m = field(j, label, "");
    if (!m.is_object()) fail("expected an object", "/" + label);
    for (auto it = m.begin(); it != m.end(); ++it) {
      if (!it.value().is_string()) fail("expected a string", "/" + label + "/" + it.key());
      into[it.key()] = it.value().get<std::string>();
    }
  };
  read_string_map("input_digests", out.input_digests);
  read_string_map("verdicts", out.verdicts);
  const json& numbers = field(j, "numbers", "");
  if (!numbers.is_object()) fail("expected an object", "/numbers");
  for (auto it = numbers.begin(); it != numbers.end(); ++it) {
    if (!it.value().is_number()) fail("expected a number", "/numbers/" + it.key());
    const double v = it.value().get<double>();
    if (!std::isfinite(v)) fail("non-finite number", "/numbers/" + it.key());
    out.numbers[it.key()] = v;
  }
  return out;
}

std::string profile_name(BumpProfile profile) {
  return profile == BumpProfile::Smooth ? "smooth" : "cubic";
}

BumpProfile profile_from_name(const std::string& name) {
  if (name == "smooth") return BumpProfile::Smooth;
  if (name == "cubic") return BumpProfile::Cubic;
  throw std::invalid_argument("unknown bump profile '" + name + "'");
}

std::string c0_decision_to_json(const C0Decision& decision) {
  json out = versioned();
  switch (decision.verdict) {
    case C0Verdict::Equivalent:
      out["verdict"] = "equivalent";
      out["tail_agreement_index"] = decision.tail_agreement_index;
      break;
    case C0Verdict::NotEquivalent:
      out["verdict"] = "not_equivalent";
      out["refute_index"] = decision.refute_index;
      out["refute_gap"] = format_rational(decision.refute_gap);
      break;
    case C0Verdict::UndecidableForKind:
      out["verdict"] = "undecidable_for_kind";
      break;
  }
  return out.dump(2) + "\n";
}

std::string decode_reports_to_json(const std::vector<DecodeReport>& reports) {
  json out = versioned();
  json list = json::array();
  json values = json::array();
  for (const DecodeReport& r : reports) {
    json jr;
    jr["strip"] = r.strip;
    jr["center"] = finite_checked(r.center, "center");
    jr["period"] = r.period;
    jr["support_lo"] = finite_checked(r.support_lo, "support_lo");
    jr["support_hi"] = finite_checked(r.support_hi, "support_hi");
    jr["residual"] = finite_checked(r.residual, "residual");
    list.push_back(std::move(jr));
    values.push_back(r.center);
  }
  out["reports"] = list;
  out["values"] = values;
  return out.dump(2) + "\n";
}

std::string smoothness_report_to_json(const SmoothnessReport& report) {
  json out = versioned();
  out["strip"] = report.strip;
  out["samples"] = report.samples;
  out["max_quotient"] = finite_checked(report.max_quotient, "max_quotient");
  out["bound"] = finite_checked(report.bound, "bound");
  out["violations"] = report.violations;
  out["max_det_err_off_support"] =
      finite_checked(report.max_det_err_off_support, "max_det_err_off_support");
  out["min_det"] = finite_checked(report.min_det, "min_det");
  return out.dump(2) + "\n";
}

std::string torus_decision_to_json(const ConjugacyDecision& decision) {
  json out = versioned();
  out["conjugate"] = decision.conjugate;
  out["stage"] = refutation_stage_name(decision.stage);
  if (decision.forced) {
    out["forced"] = {{"a", format_rational(decision.forced->a)},
                     {"b", format_rational(decision.forced->b)},
                     {"c", format_rational(decision.forced->c)},
                     {"d", format_rational(decision.forced->d)}};
  }
  if (decision.witness) {
    const Mat2Z& A = decision.witness->matrix;
    out["witness"] = {
        {"matrix", json::array({A.a.str(), A.b.str(), A.c.str(), A.d.str()})},
        {"shift",
         json::array({decision.witness->shift[0].str(), decision.witness->shift[1].str()})}};
  }
  return out.dump(2) + "\n";
}

std::string fixed_locus_to_json(const FixedLocus& locus) {
  json out = versioned();
  switch (locus.kind) {
    case FixedLocusKind::FullTorus:
      out["kind"] = "full_torus";
      break;
    case FixedLocusKind::Lines: {
      out["kind"] = "lines";
      json lines = json::array();
      for (const FixedLine& line : locus.lines)
        lines.push_back({{"normal", json::array({line.normal[0].str(), line.normal[1].str()})},
                         {"offset", format_rational(line.offset)}});
      out["lines"] = lines;
      break;
    }
    case FixedLocusKind::Points: {
      out["kind"] = "points";
      json points = json::array();
      for (const auto& p : locus.points)
        points.push_back(json::array({format_rational(p[0]), format_rational(p[1])}));
      out["points"] = points;
      break;
    }
  }
  return out.dump(2) + "\n";
}

std::string rotations_to_json(const std::vector<TorusRotation>& rotations) {
  json out = versioned();
  json list = json::array();
  for (const TorusRotation& r : rotations)
    list.push_back({{"x", formal_real_to_obj(r.x)}, {"y", formal_real_to_obj(r.y)}});
  out["rotations"] = list;
  return out.dump(2) + "\n";
}

std::string point_to_json(const Point& p) {
  json out = versioned();
  json coords = json::array();
  for (double x : p) coords.push_back(finite_checked(x, "point"));
  out["point"] = coords;
  return out.dump(2) + "\n";
}

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot read file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot write file: " + path);
  out << text;
  if (!out) throw std::invalid_argument("failed writing file: " + path);
}

}  // namespace c0dynamo
