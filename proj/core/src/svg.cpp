#include "c0dynamo/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace c0dynamo {

namespace {

constexpr double kSize = 720.0;
constexpr double kMargin = 56.0;
constexpr double kPlot = kSize - 2 * kMargin;

std::string fmt(double v) {
  if (!std::isfinite(v)) throw std::invalid_argument("svg: non-finite coordinate");
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  std::string s(buf);
  const auto last = s.find_last_not_of('0');
  s.erase(s[last] == '.' ? last : last + 1);
  if (s == "-0") s = "0";
  return s;
}

double px(double x) { return kMargin + x * kPlot; }
double py(double y) { return kMargin + (1.0 - y) * kPlot; }

void line(std::string& out, double x1, double y1, double x2, double y2, const char* style) {
  out += "<line x1=\"" + fmt(x1) + "\" y1=\"" + fmt(y1) + "\" x2=\"" + fmt(x2) + "\" y2=\"" +
         fmt(y2) + "\" " + style + "/>\n";
}

void circle(std::string& out, double cx, double cy, double r, const char* style) {
  out += "<circle cx=\"" + fmt(cx) + "\" cy=\"" + fmt(cy) + "\" r=\"" + fmt(r) + "\" " + style +
         "/>\n";
}

void text(std::string& out, double x, double y, const std::string& s, const char* style) {
  out += "<text x=\"" + fmt(x) + "\" y=\"" + fmt(y) + "\" " + style + ">" + s + "</text>\n";
}

std::string header(const std::string& title) {
  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(kSize) + "\" height=\"" +
         fmt(kSize) + "\" viewBox=\"0 0 " + fmt(kSize) + " " + fmt(kSize) + "\">\n";
  out += "<rect x=\"0\" y=\"0\" width=\"" + fmt(kSize) + "\" height=\"" + fmt(kSize) +
         "\" fill=\"#fdfdf8\"/>\n";
  out += "<defs><marker id=\"arrow\" viewBox=\"0 0 8 8\" refX=\"7\" refY=\"4\" markerWidth=\"6\" "
         "markerHeight=\"6\" orient=\"auto\"><path d=\"M0,0 L8,4 L0,8 z\" fill=\"#b03a2e\"/>"
         "</marker></defs>\n";
  text(out, kMargin, kMargin - 24,
       title, "font-family=\"monospace\" font-size=\"15\" fill=\"#333333\"");
  return out;
}

void frame(std::string& out) {
  out += "<rect x=\"" + fmt(kMargin) + "\" y=\"" + fmt(kMargin) + "\" width=\"" + fmt(kPlot) +
         "\" height=\"" + fmt(kPlot) + "\" fill=\"none\" stroke=\"#555555\" stroke-width=\"1\"/>\n";
}

}  // namespace

std::string render_layout(const LayoutParams& params, const SequenceSpec& spec,
                          std::int64_t depth, const ConjugacyWitness* witness) {
  if (depth < 1 || depth > 12)
    throw std::invalid_argument("render_layout: depth must be in [1, 12]");
  params.validate();
  const std::size_t d = static_cast<std::size_t>(params.dimension);

  std::string out = header("strip layout, disks of strips 2.." + std::to_string(2 * depth));
  frame(out);

  // Strip boundaries x = 1/n, double thickness on the first few.
  for (std::int64_t n = 1; n <= 2 * depth + 1; ++n) {
    const double x = 1.0 / static_cast<double>(n);
    line(out, px(x), py(0), px(x), py(1),
         n <= 4 ? "stroke=\"#9a9a9a\" stroke-width=\"1\"" : "stroke=\"#c8c8c8\" stroke-width=\"0.6\"");
  }
  for (std::int64_t n = 2; n <= 5; ++n) {
    const double mid = to_double(strip_midline(n));
    text(out, px(mid) - 8, py(1) - 6, "H" + std::to_string(n),
         "font-family=\"monospace\" font-size=\"11\" fill=\"#777777\"");
  }

  for (std::int64_t n = 2; n <= 2 * depth; ++n) {
    auto disk = layout_numeric(params, spec, n);
    if (!disk) continue;
    const bool even = n % 2 == 0;
    circle(out, px(disk->center.front()), py(disk->center.back()), disk->radius * kPlot,
           even ? "fill=\"#5b84b1\" fill-opacity=\"0.55\" stroke=\"#2e4f74\" stroke-width=\"0.8\""
                : "fill=\"#8aa05a\" fill-opacity=\"0.55\" stroke=\"#55663a\" stroke-width=\"0.8\"");
  }

  if (witness) {
    for (const WitnessEntry& e : witness->entries()) {
      const double bx0 = to_double(e.box.front().first), bx1 = to_double(e.box.front().second);
      const double by0 = to_double(e.box.back().first), by1 = to_double(e.box.back().second);
      out += "<rect x=\"" + fmt(px(bx0)) + "\" y=\"" + fmt(py(by1)) + "\" width=\"" +
             fmt((bx1 - bx0) * kPlot) + "\" height=\"" + fmt((by1 - by0) * kPlot) +
             "\" fill=\"none\" stroke=\"#b03a2e\" stroke-width=\"0.9\" stroke-dasharray=\"4 3\"/>\n";
      const double r = to_double(e.radius) * kPlot;
      const double sx = px(to_double(e.source_center.front()));
      const double sy = py(to_double(e.source_center.back()));
      const double tx = px(to_double(e.target_center.front()));
      const double ty = py(to_double(e.target_center.back()));
      circle(out, sx, sy, r, "fill=\"none\" stroke=\"#2e4f74\" stroke-width=\"1.2\"");
      circle(out, tx, ty, r, "fill=\"none\" stroke=\"#55663a\" stroke-width=\"1.2\"");
      if (sy != ty || sx != tx)
        line(out, sx, sy, tx, ty,
             "stroke=\"#b03a2e\" stroke-width=\"1.2\" marker-end=\"url(#arrow)\"");
    }
  }

  std::string legend = "x: coordinate 1, y: coordinate " + std::to_string(d);
  if (d > 2) legend += " (projection onto coordinates (1, " + std::to_string(d) + "))";
  text(out, kMargin, kSize - kMargin + 34, legend,
       "font-family=\"monospace\" font-size=\"12\" fill=\"#555555\"");
  out += "</svg>\n";
  return out;
}

std::string render_displacement(const std::vector<DisplacementSample>& samples,
                                std::int64_t strip) {
  if (samples.empty()) throw std::invalid_argument("render_displacement: no samples");
  double tmin = samples.front().t, tmax = samples.back().t, dmax = 0.0;
  for (const DisplacementSample& s : samples) {
    tmin = std::min(tmin, s.t);
    tmax = std::max(tmax, s.t);
    dmax = std::max(dmax, s.displacement);
  }
  if (tmax <= tmin) throw std::invalid_argument("render_displacement: degenerate t range");
  const double dspan = dmax > 0 ? dmax * 1.08 : 1.0;

  std::string out = header("displacement along the probe line, strip " + std::to_string(strip));
  frame(out);
  out += "<polyline fill=\"none\" stroke=\"#2e4f74\" stroke-width=\"1.2\" points=\"";
  for (const DisplacementSample& s : samples) {
    const double x = (s.t - tmin) / (tmax - tmin);
    const double y = s.displacement / dspan;
    out += fmt(px(x)) + "," + fmt(py(y)) + " ";
  }
  out += "\"/>\n";
  text(out, kMargin, kSize - kMargin + 34, "t in [" + fmt(tmin) + ", " + fmt(tmax) + "]",
       "font-family=\"monospace\" font-size=\"12\" fill=\"#555555\"");
  char peak[64];
  std::snprintf(peak, sizeof(peak), "%.3e", dmax);
  text(out, kSize - kMargin - 220, kSize - kMargin + 34, std::string("peak ") + peak,
       "font-family=\"monospace\" font-size=\"12\" fill=\"#555555\"");
  out += "</svg>\n";
  return out;
}

std::string render_orbit(const std::vector<std::array<double, 2>>& points,
                         const std::string& subtitle) {
  std::string out = header("orbit, " + std::to_string(points.size()) + " points");
  frame(out);
  for (const auto& p : points) {
    if (!(p[0] >= 0.0 && p[0] <= 1.0 && p[1] >= 0.0 && p[1] <= 1.0))
      throw std::invalid_argument("render_orbit: point outside the unit square");
    circle(out, px(p[0]), py(p[1]), 1.6, "fill=\"#2e4f74\" fill-opacity=\"0.75\"");
  }
  text(out, kMargin, kSize - kMargin + 34, subtitle,
       "font-family=\"monospace\" font-size=\"12\" fill=\"#555555\"");
  out += "</svg>\n";
  return out;
}

}  // namespace c0dynamo
