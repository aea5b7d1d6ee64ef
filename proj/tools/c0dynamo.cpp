// c0dynamo: build, probe, and compare strip-twist diffeomorphisms of the
// cube, and decide conjugacy of minimal 2-torus rotations.
//
// Exit codes: 0 success / true verdict, 1 refutation / false verdict,
// 2 usage or validation error.

#include "c0dynamo/analysis.hpp"
#include "c0dynamo/io.hpp"
#include "c0dynamo/svg.hpp"
#include "c0dynamo/system.hpp"
#include "c0dynamo/torus.hpp"
#include "c0dynamo/version.hpp"
#include "c0dynamo/witness.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace {

using namespace c0dynamo;
using nlohmann::json;

struct Runner {
  RunReport report;
  std::string report_path;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  int exit_code = 0;

  std::string slurp(const std::string& label, const std::string& path) {
    std::string text = read_text_file(path);
    report.input_digests[label] = fnv1a_hex(text);
    return text;
  }

  void emit(const std::string& text, const std::string& out) {
    if (out.empty() || out == "-") {
      std::fputs(text.c_str(), stdout);
      if (text.empty() || text.back() != '\n') std::fputc('\n', stdout);
    } else {
      write_text_file(out, text);
    }
  }

  void finish() {
    if (report_path.empty()) return;
    report.version = kVersion;
    report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    write_text_file(report_path, report_to_json(report));
  }
};

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::size_t begin = 0;
  while (true) {
    std::size_t end = text.find(sep, begin);
    if (end == std::string::npos) {
      parts.push_back(text.substr(begin));
      return parts;
    }
    parts.push_back(text.substr(begin, end - begin));
    begin = end + 1;
  }
}

std::string trimmed(const std::string& text) {
  std::size_t a = text.find_first_not_of(" \t");
  if (a == std::string::npos) return "";
  std::size_t b = text.find_last_not_of(" \t");
  return text.substr(a, b - a + 1);
}

Point parse_point(const std::string& text) {
  Point p;
  for (const std::string& raw : split(text, ',')) {
    const std::string tok = trimmed(raw);
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(tok, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("point: bad coordinate '" + tok + "'");
    }
    if (used != tok.size() || !std::isfinite(v))
      throw std::invalid_argument("point: bad coordinate '" + tok + "'");
    p.push_back(v);
  }
  if (p.size() < 2) throw std::invalid_argument("point: need at least 2 coordinates");
  return p;
}

TorusRotation parse_rotation_arg(const std::string& text) {
  auto parts = split(text, ',');
  if (parts.size() != 2)
    throw std::invalid_argument("rotation: expected 'x,y' with two coordinate expressions");
  return TorusRotation{FormalReal::parse(parts[0]), FormalReal::parse(parts[1])};
}

Mat2Z parse_matrix_arg(const std::string& text) {
  auto parts = split(text, ',');
  if (parts.size() != 4) throw std::invalid_argument("matrix: expected 'a,b,c,d'");
  std::array<BigInt, 4> v;
  for (int i = 0; i < 4; ++i) {
    try {
      v[i] = BigInt(trimmed(parts[i]));
    } catch (const std::exception&) {
      throw std::invalid_argument("matrix: bad integer '" + trimmed(parts[i]) + "'");
    }
  }
  return Mat2Z{v[0], v[1], v[2], v[3]};
}

LayoutParams make_params(int d) {
  LayoutParams params;
  params.dimension = d;
  params.validate();
  return params;
}

std::string orbit_csv(const AssembledSystem& system, Point p, std::int64_t iterations) {
  std::string out = "k";
  for (int i = 1; i <= system.dimension(); ++i) out += ",x" + std::to_string(i);
  out += "\n";
  char buf[64];
  for (std::int64_t k = 0; k <= iterations; ++k) {
    out += std::to_string(k);
    for (double v : p) {
      std::snprintf(buf, sizeof buf, ",%.17g", v);
      out += buf;
    }
    out += "\n";
    if (k < iterations) p = system.eval(std::move(p));
  }
  return out;
}

std::string stage_detail(const ConjugacyDecision& decision) {
  if (decision.stage == RefutationStage::DeterminantNotUnimodular && decision.forced) {
    const Mat2Q& f = *decision.forced;
    const Rat det = f.a * f.d - f.b * f.c;
    return "det=" + format_rational(det);
  }
  return refutation_stage_name(decision.stage);
}

}  // namespace

int main(int argc, char** argv) {
  Runner run;
  CLI::App app{"strip-twist diffeomorphisms of the cube and 2-torus rotation conjugacy"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  app.add_option("--report", run.report_path, "write a run report JSON to this path");

  // encode
  auto* encode = app.add_subcommand("encode", "sequence spec JSON -> system config JSON");
  struct {
    std::string spec, out, profile = "smooth", radius_rule = "quarter", dense_rule = "dyadic";
    int d = 2;
  } enc;
  encode->add_option("--spec", enc.spec, "sequence spec JSON file")->required();
  encode->add_option("--d", enc.d, "cube dimension")->check(CLI::Range(2, 64));
  encode->add_option("--profile", enc.profile, "bump profile: smooth|cubic");
  encode->add_option("--radius-rule", enc.radius_rule, "disk radius rule name");
  encode->add_option("--dense-rule", enc.dense_rule, "dense value rule name");
  encode->add_option("--out", enc.out, "output path (default stdout)");
  encode->callback([&] {
    run.report.command = "encode";
    SystemConfig config;
    config.params.dimension = enc.d;
    config.params.radius_rule = enc.radius_rule;
    config.params.dense_rule = enc.dense_rule;
    config.params.validate();
    config.spec = spec_from_json(run.slurp("spec", enc.spec));
    config.profile = profile_from_name(enc.profile);
    run.report.verdicts["encoded"] = "ok";
    run.emit(system_to_json(config), enc.out);
  });

  // eval
  auto* eval_cmd = app.add_subcommand("eval", "apply the system map to a point");
  struct {
    std::string system, point, out;
    std::int64_t iterations = 1;
    bool inverse = false;
  } ev;
  eval_cmd->add_option("--system", ev.system, "system config JSON file")->required();
  eval_cmd->add_option("--point", ev.point, "comma-separated coordinates")->required();
  eval_cmd->add_option("--iterations", ev.iterations, "iteration count")->check(CLI::NonNegativeNumber);
  eval_cmd->add_flag("--inverse", ev.inverse, "iterate the inverse map");
  eval_cmd->add_option("--out", ev.out, "output path (default stdout)");
  eval_cmd->callback([&] {
    run.report.command = "eval";
    SystemConfig config = system_from_json(run.slurp("system", ev.system));
    AssembledSystem system = assemble(config.spec, config.params, config.profile);
    Point p = system.iterate(parse_point(ev.point), ev.inverse ? -ev.iterations : ev.iterations);
    run.report.numbers["iterations"] = static_cast<double>(ev.iterations);
    run.emit(point_to_json(p), ev.out);
  });

  // orbit
  auto* orbit_cmd = app.add_subcommand("orbit", "orbit of a point as CSV");
  struct {
    std::string system, point, out;
    std::int64_t iterations = 0;
  } ob;
  orbit_cmd->add_option("--system", ob.system, "system config JSON file")->required();
  orbit_cmd->add_option("--point", ob.point, "comma-separated coordinates")->required();
  orbit_cmd->add_option("--iterations", ob.iterations, "orbit length")
      ->required()
      ->check(CLI::PositiveNumber);
  orbit_cmd->add_option("--out", ob.out, "output path (default stdout)");
  orbit_cmd->callback([&] {
    run.report.command = "orbit";
    SystemConfig config = system_from_json(run.slurp("system", ob.system));
    AssembledSystem system = assemble(config.spec, config.params, config.profile);
    run.report.numbers["iterations"] = static_cast<double>(ob.iterations);
    run.emit(orbit_csv(system, parse_point(ob.point), ob.iterations), ob.out);
  });

  // decode
  auto* decode_cmd = app.add_subcommand("decode", "recover alpha(1..N) from the map as a black box");
  struct {
    std::string system, out;
    std::int64_t depth = 8;
    double tol = 1e-9;
  } dc;
  decode_cmd->add_option("--system", dc.system, "system config JSON file")->required();
  decode_cmd->add_option("--depth", dc.depth, "number of values to recover")
      ->check(CLI::PositiveNumber);
  decode_cmd->add_option("--tol", dc.tol, "fixed-point tolerance")->check(CLI::PositiveNumber);
  decode_cmd->add_option("--out", dc.out, "output path (default stdout)");
  decode_cmd->callback([&] {
    run.report.command = "decode";
    SystemConfig config = system_from_json(run.slurp("system", dc.system));
    AssembledSystem system = assemble(config.spec, config.params, config.profile);
    CubeMap g = [&system](const Point& p) { return system.eval(p); };
    auto reports = decode(g, config.params, dc.depth, dc.tol);
    double worst = 0.0;
    for (const auto& r : reports) worst = std::max(worst, r.residual);
    run.report.verdicts["decoded"] = "ok";
    run.report.numbers["values"] = static_cast<double>(reports.size());
    run.report.numbers["max_residual"] = worst;
    run.emit(decode_reports_to_json(reports), dc.out);
  });

  // c0
  auto* c0_cmd = app.add_subcommand("c0", "decide c0-equivalence of two sequence specs");
  struct {
    std::string a, b, out;
  } cz;
  c0_cmd->add_option("--a", cz.a, "first spec JSON file")->required();
  c0_cmd->add_option("--b", cz.b, "second spec JSON file")->required();
  c0_cmd->add_option("--out", cz.out, "output path (default stdout)");
  c0_cmd->callback([&] {
    run.report.command = "c0";
    SequenceSpec a = spec_from_json(run.slurp("a", cz.a));
    SequenceSpec b = spec_from_json(run.slurp("b", cz.b));
    C0Decision decision = c0_equivalent(a, b);
    switch (decision.verdict) {
      case C0Verdict::Equivalent:
        run.report.verdicts["verdict"] = "equivalent";
        run.exit_code = 0;
        break;
      case C0Verdict::NotEquivalent:
        run.report.verdicts["verdict"] = "not_equivalent";
        run.exit_code = 1;
        break;
      case C0Verdict::UndecidableForKind:
        run.report.verdicts["verdict"] = "undecidable_for_kind";
        run.exit_code = 2;
        break;
    }
    run.emit(c0_decision_to_json(decision), cz.out);
  });

  // witness
  auto* witness_cmd = app.add_subcommand("witness", "build a conjugacy witness for an equivalent pair");
  struct {
    std::string a, b, out;
    int d = 2;
  } wt;
  witness_cmd->add_option("--a", wt.a, "first spec JSON file")->required();
  witness_cmd->add_option("--b", wt.b, "second spec JSON file")->required();
  witness_cmd->add_option("--d", wt.d, "cube dimension")->check(CLI::Range(2, 64));
  witness_cmd->add_option("--out", wt.out, "output path (default stdout)");
  witness_cmd->callback([&] {
    run.report.command = "witness";
    SequenceSpec a = spec_from_json(run.slurp("a", wt.a));
    SequenceSpec b = spec_from_json(run.slurp("b", wt.b));
    ConjugacyWitness witness = build_witness(a, b, make_params(wt.d));
    run.report.verdicts["built"] = "ok";
    run.report.numbers["entries"] = static_cast<double>(witness.entries().size());
    run.emit(witness_to_json(witness), wt.out);
  });

  // verify-witness
  auto* vw_cmd = app.add_subcommand("verify-witness", "max conjugation defect of a witness over stratified samples");
  struct {
    std::string witness, system_a, system_b, out;
    std::int64_t samples = 100000;
    std::uint64_t seed = 20240817;
    std::optional<double> threshold;
  } vw;
  vw_cmd->add_option("--witness", vw.witness, "witness JSON file")->required();
  vw_cmd->add_option("--system-a", vw.system_a, "first system config JSON file")->required();
  vw_cmd->add_option("--system-b", vw.system_b, "second system config JSON file")->required();
  vw_cmd->add_option("--samples", vw.samples, "sample count")->check(CLI::PositiveNumber);
  vw_cmd->add_option("--seed", vw.seed, "sampling seed");
  vw_cmd->add_option("--threshold", vw.threshold, "exit 1 when the defect exceeds this");
  vw_cmd->add_option("--out", vw.out, "output path (default stdout)");
  vw_cmd->callback([&] {
    run.report.command = "verify-witness";
    ConjugacyWitness witness = witness_from_json(run.slurp("witness", vw.witness));
    SystemConfig ca = system_from_json(run.slurp("system_a", vw.system_a));
    SystemConfig cb = system_from_json(run.slurp("system_b", vw.system_b));
    if (ca.params.dimension != witness.dimension() || cb.params.dimension != witness.dimension())
      throw std::invalid_argument("verify-witness: dimension mismatch between witness and systems");
    AssembledSystem sa = assemble(ca.spec, ca.params, ca.profile);
    AssembledSystem sb = assemble(cb.spec, cb.params, cb.profile);
    double defect = verify_witness(witness, sa, sb, vw.samples, vw.seed);
    json out;
    out["schema_version"] = kSchemaVersion;
    out["max_defect"] = defect;
    out["samples"] = vw.samples;
    out["seed"] = vw.seed;
    run.report.numbers["max_defect"] = defect;
    run.report.numbers["samples"] = static_cast<double>(vw.samples);
    bool ok = !vw.threshold || defect <= *vw.threshold;
    run.report.verdicts["within_threshold"] = vw.threshold ? (ok ? "true" : "false") : "unchecked";
    run.emit(out.dump(2) + "\n", vw.out);
    run.exit_code = ok ? 0 : 1;
  });

  // certificate
  auto* cert_cmd = app.add_subcommand("certificate", "build a non-conjugacy certificate for a non-equivalent pair");
  struct {
    std::string a, b, out;
    int d = 2;
    std::int64_t depth = 12;
  } ct;
  cert_cmd->add_option("--a", ct.a, "first spec JSON file")->required();
  cert_cmd->add_option("--b", ct.b, "second spec JSON file")->required();
  cert_cmd->add_option("--d", ct.d, "cube dimension")->check(CLI::Range(2, 64));
  cert_cmd->add_option("--depth", ct.depth, "minimum number of dense indices")
      ->check(CLI::Range(std::int64_t{1}, std::int64_t{48}));
  cert_cmd->add_option("--out", ct.out, "output path (default stdout)");
  cert_cmd->callback([&] {
    run.report.command = "certificate";
    SequenceSpec a = spec_from_json(run.slurp("a", ct.a));
    SequenceSpec b = spec_from_json(run.slurp("b", ct.b));
    NonConjugacyCertificate cert = build_certificate(a, b, make_params(ct.d), ct.depth);
    run.report.verdicts["built"] = "ok";
    run.report.numbers["dense_indices"] = static_cast<double>(cert.dense_indices.size());
    run.emit(certificate_to_json(cert), ct.out);
  });

  // verify-certificate
  auto* vc_cmd = app.add_subcommand("verify-certificate", "check a non-conjugacy certificate against two specs");
  struct {
    std::string certificate, a, b, out;
    int d = 2;
  } vc;
  vc_cmd->add_option("--certificate", vc.certificate, "certificate JSON file")->required();
  vc_cmd->add_option("--a", vc.a, "first spec JSON file")->required();
  vc_cmd->add_option("--b", vc.b, "second spec JSON file")->required();
  vc_cmd->add_option("--d", vc.d, "cube dimension")->check(CLI::Range(2, 64));
  vc_cmd->add_option("--out", vc.out, "output path (default stdout)");
  vc_cmd->callback([&] {
    run.report.command = "verify-certificate";
    NonConjugacyCertificate cert = certificate_from_json(run.slurp("certificate", vc.certificate));
    SequenceSpec a = spec_from_json(run.slurp("a", vc.a));
    SequenceSpec b = spec_from_json(run.slurp("b", vc.b));
    bool valid = verify_certificate(cert, a, b, make_params(vc.d));
    json out;
    out["schema_version"] = kSchemaVersion;
    out["valid"] = valid;
    run.report.verdicts["valid"] = valid ? "true" : "false";
    run.emit(out.dump(2) + "\n", vc.out);
    run.exit_code = valid ? 0 : 1;
  });

  // smoothness
  auto* smooth_cmd = app.add_subcommand("smoothness", "difference-quotient scan of one strip");
  struct {
    std::string system, out;
    std::int64_t strip = 2;
    std::int64_t samples = 10000;
    std::uint64_t seed = 20240817;
  } sm;
  smooth_cmd->add_option("--system", sm.system, "system config JSON file")->required();
  smooth_cmd->add_option("--strip", sm.strip, "strip index")->required()->check(CLI::Range(std::int64_t{2}, std::int64_t{60}));
  smooth_cmd->add_option("--samples", sm.samples, "sample pair count")->check(CLI::PositiveNumber);
  smooth_cmd->add_option("--seed", sm.seed, "sampling seed");
  smooth_cmd->add_option("--out", sm.out, "output path (default stdout)");
  smooth_cmd->callback([&] {
    run.report.command = "smoothness";
    SystemConfig config = system_from_json(run.slurp("system", sm.system));
    AssembledSystem system = assemble(config.spec, config.params, config.profile);
    SmoothnessReport rep = smoothness_scan(system, sm.strip, sm.samples, sm.seed);
    run.report.numbers["max_quotient"] = rep.max_quotient;
    run.report.numbers["bound"] = rep.bound;
    run.report.numbers["violations"] = static_cast<double>(rep.violations);
    run.report.verdicts["within_bound"] = rep.violations == 0 ? "true" : "false";
    run.emit(smoothness_report_to_json(rep), sm.out);
    run.exit_code = rep.violations == 0 ? 0 : 1;
  });

  // torus
  auto* torus_cmd = app.add_subcommand("torus", "minimal rotations of the 2-torus");
  torus_cmd->require_subcommand(1);

  auto* td_cmd = torus_cmd->add_subcommand("decide", "decide topological conjugacy of two minimal rotations");
  struct {
    std::string left, right, out;
  } td;
  td_cmd->add_option("--left", td.left, "rotation 'x,y', e.g. 'sqrt2,sqrt3'")->required();
  td_cmd->add_option("--right", td.right, "rotation 'x,y', e.g. '1/2+1*sqrt2,sqrt3'")->required();
  td_cmd->add_option("--out", td.out, "output path (default stdout)");
  td_cmd->callback([&] {
    run.report.command = "torus decide";
    TorusRotation left = parse_rotation_arg(td.left).mod1();
    TorusRotation right = parse_rotation_arg(td.right).mod1();
    ConjugacyDecision decision = decide_conjugacy(left, right);
    run.report.verdicts["conjugate"] = decision.conjugate ? "true" : "false";
    if (!decision.conjugate) run.report.verdicts["refutation"] = stage_detail(decision);
    run.emit(torus_decision_to_json(decision), td.out);
    if (!decision.conjugate) {
      std::fprintf(stderr, "refutation: %s\n", stage_detail(decision).c_str());
      run.exit_code = 1;
    }
  });

  auto* tm_cmd = torus_cmd->add_subcommand("minimal", "check minimality of a rotation");
  struct {
    std::string rotation, out;
  } tm;
  tm_cmd->add_option("--rotation", tm.rotation, "rotation 'x,y'")->required();
  tm_cmd->add_option("--out", tm.out, "output path (default stdout)");
  tm_cmd->callback([&] {
    run.report.command = "torus minimal";
    bool minimal = is_minimal(parse_rotation_arg(tm.rotation));
    json out;
    out["schema_version"] = kSchemaVersion;
    out["minimal"] = minimal;
    run.report.verdicts["minimal"] = minimal ? "true" : "false";
    run.emit(out.dump(2) + "\n", tm.out);
    run.exit_code = minimal ? 0 : 1;
  });

  auto* to_cmd = torus_cmd->add_subcommand("orbit", "images of a rotation under unimodular matrices of bounded height");
  struct {
    std::string rotation, out;
    int height = 2;
  } to;
  to_cmd->add_option("--rotation", to.rotation, "rotation 'x,y'")->required();
  to_cmd->add_option("--height", to.height, "max |entry|")->check(CLI::Range(1, 16));
  to_cmd->add_option("--out", to.out, "output path (default stdout)");
  to_cmd->callback([&] {
    run.report.command = "torus orbit";
    auto images = orbit_sample(parse_rotation_arg(to.rotation).mod1(), to.height);
    run.report.numbers["images"] = static_cast<double>(images.size());
    run.emit(rotations_to_json(images), to.out);
  });

  auto* tf_cmd = torus_cmd->add_subcommand("fixed-locus", "fixed points of an integral torus endomorphism");
  struct {
    std::string matrix, out;
  } tf;
  tf_cmd->add_option("--matrix", tf.matrix, "integer matrix 'a,b,c,d'")->required();
  tf_cmd->add_option("--out", tf.out, "output path (default stdout)");
  tf_cmd->callback([&] {
    run.report.command = "torus fixed-locus";
    FixedLocus locus = fixed_locus(parse_matrix_arg(tf.matrix));
    run.report.verdicts["kind"] = locus.kind == FixedLocusKind::FullTorus ? "full_torus"
                                  : locus.kind == FixedLocusKind::Lines   ? "lines"
                                                                          : "points";
    run.emit(fixed_locus_to_json(locus), tf.out);
  });

  // plot
  auto* plot_cmd = app.add_subcommand("plot", "deterministic SVG figures");
  plot_cmd->require_subcommand(1);

  auto* pl_cmd = plot_cmd->add_subcommand("layout", "strips and disks, optionally with a witness overlay");
  struct {
    std::string system, witness, out;
    std::int64_t depth = 4;
  } pl;
  pl_cmd->add_option("--system", pl.system, "system config JSON file")->required();
  pl_cmd->add_option("--depth", pl.depth, "draw strips up to 2*depth")->check(CLI::Range(std::int64_t{1}, std::int64_t{12}));
  pl_cmd->add_option("--witness", pl.witness, "witness JSON file to overlay");
  pl_cmd->add_option("--out", pl.out, "SVG output path")->required();
  pl_cmd->callback([&] {
    run.report.command = "plot layout";
    SystemConfig config = system_from_json(run.slurp("system", pl.system));
    std::optional<ConjugacyWitness> witness;
    if (!pl.witness.empty()) witness = witness_from_json(run.slurp("witness", pl.witness));
    std::string svg = render_layout(config.params, config.spec, pl.depth,
                                    witness ? &*witness : nullptr);
    run.report.numbers["depth"] = static_cast<double>(pl.depth);
    run.emit(svg, pl.out);
  });

  auto* po_cmd = plot_cmd->add_subcommand("orbit", "orbit scatter of a rotation or a cube system");
  struct {
    std::string rotation, system, point, out;
    std::int64_t iterations = 500;
  } po;
  po_cmd->add_option("--rotation", po.rotation, "rotation 'x,y' (numeric orbit)");
  po_cmd->add_option("--system", po.system, "system config JSON file");
  po_cmd->add_option("--point", po.point, "start point for --system");
  po_cmd->add_option("--iterations", po.iterations, "orbit length")->check(CLI::PositiveNumber);
  po_cmd->add_option("--out", po.out, "SVG output path")->required();
  po_cmd->callback([&] {
    run.report.command = "plot orbit";
    const bool has_rot = !po.rotation.empty();
    const bool has_sys = !po.system.empty();
    if (has_rot == has_sys)
      throw std::invalid_argument("plot orbit: pass exactly one of --rotation / --system");
    std::vector<std::array<double, 2>> points;
    std::string subtitle;
    if (has_rot) {
      TorusRotation rho = parse_rotation_arg(po.rotation).mod1();
      const double dx = rho.x.approx();
      const double dy = rho.y.approx();
      double x = 0.0, y = 0.0;
      for (std::int64_t k = 0; k <= po.iterations; ++k) {
        points.push_back({x, y});
        x += dx;
        x -= std::floor(x);
        y += dy;
        y -= std::floor(y);
      }
      subtitle = "torus rotation, " + std::to_string(po.iterations) + " iterates";
    } else {
      if (po.point.empty())
        throw std::invalid_argument("plot orbit: --system requires --point");
      SystemConfig config = system_from_json(run.slurp("system", po.system));
      AssembledSystem system = assemble(config.spec, config.params, config.profile);
      Point p = parse_point(po.point);
      for (std::int64_t k = 0; k <= po.iterations; ++k) {
        points.push_back({p.front(), p.back()});
        if (k < po.iterations) p = system.eval(std::move(p));
      }
      subtitle = "cube system, coordinates (1, " + std::to_string(system.dimension()) + "), " +
                 std::to_string(po.iterations) + " iterates";
    }
    run.report.numbers["iterations"] = static_cast<double>(po.iterations);
    run.emit(render_orbit(points, subtitle), po.out);
  });

  auto* pd_cmd = plot_cmd->add_subcommand("displacement", "last-coordinate displacement profile along a strip midline");
  struct {
    std::string system, out;
    std::int64_t strip = 2;
    double step = 0.0;
  } pd;
  pd_cmd->add_option("--system", pd.system, "system config JSON file")->required();
  pd_cmd->add_option("--strip", pd.strip, "strip index")->required()->check(CLI::Range(std::int64_t{2}, std::int64_t{40}));
  pd_cmd->add_option("--step", pd.step, "scan step (default r(n)/8)")->check(CLI::PositiveNumber);
  pd_cmd->add_option("--out", pd.out, "SVG output path")->required();
  pd_cmd->callback([&] {
    run.report.command = "plot displacement";
    SystemConfig config = system_from_json(run.slurp("system", pd.system));
    AssembledSystem system = assemble(config.spec, config.params, config.profile);
    CubeMap g = [&system](const Point& p) { return system.eval(p); };
    double step = pd.step > 0.0 ? pd.step : to_double(config.params.radius(pd.strip)) / 8.0;
    auto samples = displacement_scan(g, config.params, pd.strip, step);
    run.report.numbers["samples"] = static_cast<double>(samples.size());
    run.emit(render_displacement(samples, pd.strip), pd.out);
  });

  // lets parent-level flags like --report appear after subcommand arguments
  for (CLI::App* sub : app.get_subcommands([](const CLI::App*) { return true; })) {
    sub->fallthrough();
    for (CLI::App* nested : sub->get_subcommands([](const CLI::App*) { return true; }))
      nested->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  } catch (const ParseError& e) {
    if (e.line > 0 && std::string(e.what()).find("line") == std::string::npos)
      std::fprintf(stderr, "error: %s (line %d, column %d)\n", e.what(), e.line, e.column);
    else if (e.line > 0)
      std::fprintf(stderr, "error: %s\n", e.what());
    else if (!e.path.empty())
      std::fprintf(stderr, "error: %s (at %s)\n", e.what(), e.path.c_str());
    else
      std::fprintf(stderr, "error: %s\n", e.what());
    try { run.finish(); } catch (...) {}
    return 2;
  } catch (const RefusalError& e) {
    std::fprintf(stderr, "refused: %s\n", e.what());
    std::fputs(c0_decision_to_json(e.decision).c_str(), stdout);
    try { run.finish(); } catch (...) {}
    return 1;
  } catch (const EmptyStripError& e) {
    std::fprintf(stderr, "refuted: %s\n", e.what());
    try { run.finish(); } catch (...) {}
    return 1;
  } catch (const InvariantViolationError& e) {
    std::fprintf(stderr, "refuted: %s\n", e.what());
    try { run.finish(); } catch (...) {}
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    try { run.finish(); } catch (...) {}
    return 2;
  }
  run.finish();
  return run.exit_code;
}
