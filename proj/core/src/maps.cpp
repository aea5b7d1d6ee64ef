#include "c0dynamo/maps.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace c0dynamo {

namespace {

double dist2(const Point& a, const Point& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

}  // namespace

bool twist_kernel(Point& p, const Point& center, double radius, double turns,
                  BumpProfile profile) {
  const double support = (2.0 / 3.0) * radius;
  const double d2 = dist2(p, center);
  if (d2 >= support * support) return false;
  const double rho = std::sqrt(d2);
  const double phi = bump_eval(profile, rho / radius);
  const double theta = 2.0 * std::numbers::pi * turns * phi;
  if (theta == 0.0) return false;
  const std::size_t d = p.size();
  const double cu = center[d - 2], cv = center[d - 1];
  const double u = p[d - 2] - cu, v = p[d - 1] - cv;
  const double c = std::cos(theta), s = std::sin(theta);
  p[d - 2] = cu + c * u - s * v;
  p[d - 1] = cv + s * u + c * v;
  return true;
}

Point twist_apply(const TwistMap& map, Point p) {
  if (p.size() != map.center.size()) throw std::invalid_argument("twist: dimension mismatch");
  twist_kernel(p, map.center, map.radius, map.turns, map.profile);
  return p;
}

Point twist_inverse(const TwistMap& map, Point p) {
  if (p.size() != map.center.size()) throw std::invalid_argument("twist: dimension mismatch");
  twist_kernel(p, map.center, map.radius, -map.turns, map.profile);
  return p;
}

TransportMap::TransportMap(Point box_lo_in, Point box_hi_in, Point source_in, Point target_in,
                           double radius_in, double margin_in, BumpProfile taper_in)
    : box_lo(std::move(box_lo_in)),
      box_hi(std::move(box_hi_in)),
      source(std::move(source_in)),
      target(std::move(target_in)),
      radius(radius_in),
      margin(margin_in),
      taper(taper_in) {
  const std::size_t d = source.size();
  if (d < 2) throw std::invalid_argument("transport: dimension must be >= 2");
  if (box_lo.size() != d || box_hi.size() != d || target.size() != d)
    throw std::invalid_argument("transport: dimension mismatch");
  if (!(radius > 0.0) || !(margin > 0.0))
    throw std::invalid_argument("transport: radius and margin must be positive");
  for (std::size_t i = 0; i < d; ++i)
    if (!(box_lo[i] < box_hi[i])) throw std::invalid_argument("transport: empty box");
  for (std::size_t i = 0; i + 1 < d; ++i)
    if (source[i] != target[i])
      throw std::invalid_argument("transport: displacement must be along the last axis");
  for (const Point* c : {&source, &target})
    for (std::size_t i = 0; i < d; ++i)
      if (!((*c)[i] - radius > box_lo[i] && (*c)[i] + radius < box_hi[i]))
        throw std::invalid_argument("transport: ball not in box interior");
  // Fibers with nonzero displacement must not reach the lateral boundary,
  // otherwise the map is discontinuous there. Tolerate rounding: the witness
  // boxes meet this with equality.
  const double need = (radius + margin) * (1.0 - 1e-9);
  for (std::size_t i = 0; i + 1 < d; ++i)
    if (std::min(source[i] - box_lo[i], box_hi[i] - source[i]) < need)
      throw std::invalid_argument("transport: lateral clearance below radius + margin");
}

namespace {

// Lateral squared distance (all but the last coordinate).
double lateral2(const TransportMap& m, const Point& p) {
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < p.size(); ++i) {
    double d = p[i] - m.source[i];
    s += d * d;
  }
  return s;
}

bool outside_open_box(const TransportMap& m, const Point& p) {
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i] <= m.box_lo[i] || p[i] >= m.box_hi[i]) return true;
  return false;
}

// Displacement of the fiber at lateral distance rho, and the chord half-width
// c(rho) = sqrt(max(radius^2 - rho^2, 0)). Returns false for delta == 0.
bool fiber_profile(const TransportMap& m, double rho2, double& delta, double& half_chord) {
  const double delta_full = m.target.back() - m.source.back();
  if (delta_full == 0.0) return false;
  const double r = m.radius;
  if (rho2 <= r * r) {
    delta = delta_full;
    half_chord = std::sqrt(r * r - rho2);
    return true;
  }
  const double rho = std::sqrt(rho2);
  if (rho >= r + m.margin) return false;
  // Map (0,1) into the bump transition band (1/3, 2/3).
  const double u = (rho - r) / m.margin;
  delta = delta_full * bump_eval(m.taper, (1.0 + u) / 3.0);
  half_chord = 0.0;
  return delta != 0.0;
}

}  // namespace

Point transport_apply(const TransportMap& m, Point p) {
  if (p.size() != m.source.size()) throw std::invalid_argument("transport: dimension mismatch");
  if (outside_open_box(m, p)) return p;
  double delta, c;
  if (!fiber_profile(m, lateral2(m, p), delta, c)) return p;
  const double A = m.box_lo.back(), B = m.box_hi.back();
  const double lo = m.source.back() - c, hi = m.source.back() + c;
  double& t = p.back();
  if (t >= lo && t <= hi)
    t += delta;
  else if (t < lo)
    t = A + (t - A) * ((lo + delta - A) / (lo - A));
  else
    t = B - (B - t) * ((B - hi - delta) / (B - hi));
  return p;
}

Point transport_inverse(const TransportMap& m, Point p) {
  if (p.size() != m.source.size()) throw std::invalid_argument("transport: dimension mismatch");
  if (outside_open_box(m, p)) return p;
  double delta, c;
  if (!fiber_profile(m, lateral2(m, p), delta, c)) return p;
  const double A = m.box_lo.back(), B = m.box_hi.back();
  const double lo = m.source.back() - c, hi = m.source.back() + c;
  double& t = p.back();
  if (t >= lo + delta && t <= hi + delta)
    t -= delta;
  else if (t < lo + delta)
    t = A + (t - A) * ((lo - A) / (lo + delta - A));
  else
    t = B - (B - t) * ((B - hi) / (B - hi - delta));
  return p;
}

}  // namespace c0dynamo
