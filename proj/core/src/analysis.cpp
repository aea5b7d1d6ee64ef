#include "c0dynamo/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

namespace c0dynamo {

namespace {

Point probe_point(const LayoutParams& params, std::int64_t n, double t) {
  Point p(static_cast<std::size_t>(params.dimension), 0.5);
  p.front() = to_double(strip_midline(n));
  p.back() = t;
  return p;
}

double euclid(const Point& a, const Point& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double d = a[i] - b[i];
    s += d * d;
  }
  return std::sqrt(s);
}

double displacement_at(const CubeMap& g, const LayoutParams& params, std::int64_t n, double t) {
  Point p = probe_point(params, n, t);
  return euclid(g(p), p);
}

}  // namespace

std::vector<DisplacementSample> displacement_scan(const CubeMap& g, const LayoutParams& params,
                                                  std::int64_t n, double step) {
  params.validate();
  if (n < 1) throw std::domain_error("displacement_scan: strip index must be >= 1");
  if (!(step > 0.0)) throw std::invalid_argument("displacement_scan: step must be positive");
  const double r = to_double(params.radius(n));
  const double lo = 0.25 - r, hi = 0.75 + r;
  std::vector<DisplacementSample> out;
  out.reserve(static_cast<std::size_t>((hi - lo) / step) + 2);
  for (double t = lo; t <= hi; t += step) out.push_back({t, displacement_at(g, params, n, t)});
  return out;
}

DecodeReport decode_strip(const CubeMap& g, const LayoutParams& params, std::int64_t n,
                          double tol) {
  params.validate();
  if (n < 2) throw std::domain_error("decode_strip: strip index must be >= 2");
  if (n > 60) throw std::domain_error("decode_strip: period 2^(n+1) out of range");
  if (!(tol > 0.0)) throw std::invalid_argument("decode_strip: tolerance must be positive");
  const double r = to_double(params.radius(n));
  const double step = r / 8.0;
  auto scan = displacement_scan(g, params, n, step);

  double dmax = 0.0;
  for (const auto& s : scan) dmax = std::max(dmax, s.displacement);
  if (dmax < 1e-12) throw EmptyStripError(n, "empty strip: no displacement support found");
  const double thr = dmax * 1e-3;

  std::size_t first = scan.size(), last = 0;
  for (std::size_t i = 0; i < scan.size(); ++i) {
    if (scan[i].displacement > thr) {
      first = std::min(first, i);
      last = i;
    }
  }
  // The support is symmetric about the center with a dip at the center
  // itself, so only the outermost threshold crossings matter.
  auto bisect_edge = [&](double inside, double outside) {
    for (int it = 0; it < 80 && std::abs(outside - inside) > 1e-12; ++it) {
      double mid = 0.5 * (inside + outside);
      if (displacement_at(g, params, n, mid) > thr)
        inside = mid;
      else
        outside = mid;
    }
    return 0.5 * (inside + outside);
  };
  const double left = first > 0 ? bisect_edge(scan[first].t, scan[first - 1].t) : scan[first].t;
  const double right =
      last + 1 < scan.size() ? bisect_edge(scan[last].t, scan[last + 1].t) : scan[last].t;
  const double center = 0.5 * (left + right);

  DecodeReport report;
  report.strip = n;
  report.center = center;
  report.support_lo = left;
  report.support_hi = right;
  report.residual = displacement_at(g, params, n, center);

  const std::int64_t expected = std::int64_t(1) << (n + 1);
  const Point probe = probe_point(params, n, center + r / 6.0);
  Point y = probe;
  std::int64_t found = 0;
  for (std::int64_t k = 1; k <= expected; ++k) {
    y = g(y);
    if (euclid(y, probe) < tol) {
      found = k;
      break;
    }
  }
  if (found == 0)
    throw InvariantViolationError(n, "invariant violation: probe does not return");
  if (found != expected)
    throw InvariantViolationError(
        n, "invariant violation: probe returned at " + std::to_string(found) + ", expected " +
               std::to_string(expected));
  report.period = found;
  return report;
}

std::vector<DecodeReport> decode(const CubeMap& g, const LayoutParams& params, std::int64_t N,
                                 double tol) {
  if (N < 1) throw std::domain_error("decode: N must be >= 1");
  std::vector<DecodeReport> reports;
  reports.reserve(static_cast<std::size_t>(N));
  for (std::int64_t j = 1; j <= N; ++j) reports.push_back(decode_strip(g, params, 2 * j, tol));
  return reports;
}

std::vector<double> decoded_values(const std::vector<DecodeReport>& reports) {
  std::vector<double> v;
  v.reserve(reports.size());
  for (const auto& r : reports) v.push_back(r.center);
  return v;
}

Rat smoothness_bound_scaled(const LayoutParams& params, std::int64_t m) {
  if (m < 1) throw std::domain_error("smoothness bound: strip index must be >= 1");
  return Rat(BigInt(m + 1), BigInt(1) << (m + 1)) * params.radius(m);
}

double smoothness_bound(const LayoutParams& params, std::int64_t m) {
  return 2.0 * std::numbers::pi * to_double(smoothness_bound_scaled(params, m));
}

std::vector<std::vector<double>> jacobian(const CubeMap& g, const Point& p, double step) {
  const std::size_t d = p.size();
  std::vector<std::vector<double>> J(d, std::vector<double>(d, 0.0));
  for (std::size_t i = 0; i < d; ++i) {
    Point hi = p, lo = p;
    hi[i] += step;
    lo[i] -= step;
    Point fhi = g(hi), flo = g(lo);
    for (std::size_t row = 0; row < d; ++row) J[row][i] = (fhi[row] - flo[row]) / (2.0 * step);
  }
  return J;
}

double determinant(std::vector<std::vector<double>> m) {
  const std::size_t d = m.size();
  double det = 1.0;
  for (std::size_t col = 0; col < d; ++col) {
    std::size_t pivot = col;
    for (std::size_t row = col + 1; row < d; ++row)
      if (std::abs(m[row][col]) > std::abs(m[pivot][col])) pivot = row;
    if (m[pivot][col] == 0.0) return 0.0;
    if (pivot != col) {
      std::swap(m[pivot], m[col]);
      det = -det;
    }
    det *= m[col][col];
    for (std::size_t row = col + 1; row < d; ++row) {
      double f = m[row][col] / m[col][col];
      for (std::size_t k = col; k < d; ++k) m[row][k] -= f * m[col][k];
    }
  }
  return det;
}

SmoothnessReport smoothness_scan(const AssembledSystem& system, std::int64_t m,
                                 std::int64_t samples, std::uint64_t seed) {
  if (m < 1) throw std::domain_error("smoothness_scan: strip index must be >= 1");
  if (samples < 1) throw std::invalid_argument("smoothness_scan: need at least one sample");
  const LayoutParams& params = system.params();
  const int d = params.dimension;
  const double strip_lo = 1.0 / static_cast<double>(m + 1);
  const double strip_hi = 1.0 / static_cast<double>(m);
  auto disk = layout_numeric(params, system.spec(), m);

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> gauss(0.0, 1.0);

  auto strip_point = [&] {
    Point p(static_cast<std::size_t>(d));
    p[0] = strip_lo + (strip_hi - strip_lo) * unit(rng);
    for (int i = 1; i < d; ++i) p[static_cast<std::size_t>(i)] = unit(rng);
    return p;
  };
  auto ball_point = [&](const Point& center, double radius) {
    Point dir(static_cast<std::size_t>(d));
    double norm = 0.0;
    do {
      norm = 0.0;
      for (auto& x : dir) {
        x = gauss(rng);
        norm += x * x;
      }
      norm = std::sqrt(norm);
    } while (norm == 0.0);
    const double rho = radius * std::pow(unit(rng), 1.0 / d);
    Point p = center;
    for (int i = 0; i < d; ++i) p[static_cast<std::size_t>(i)] += rho * dir[static_cast<std::size_t>(i)] / norm;
    return p;
  };

  SmoothnessReport report;
  report.strip = m;
  report.samples = samples;
  report.bound = smoothness_bound(params, m);

  for (std::int64_t i = 0; i < samples; ++i) {
    // Half the budget targets the disk support, where the quotient is
    // nonzero; elsewhere the map is the identity.
    Point p = (disk && i % 2 == 0) ? ball_point(disk->center, (2.0 / 3.0) * disk->radius * 0.999)
                                   : strip_point();
    const double moved = system.eval(p).back();
    const double quotient = std::abs(moved - p.back()) / p.front();
    report.max_quotient = std::max(report.max_quotient, quotient);
    if (quotient >= report.bound) ++report.violations;
  }

  // Jacobian spot checks.
  const double h = 1e-6;
  CubeMap g = [&system](const Point& p) { return system.eval(p); };
  report.min_det = std::numeric_limits<double>::infinity();
  const int jac_samples = 32;
  for (int i = 0; i < jac_samples; ++i) {
    Point p;
    if (disk) {
      do {
        p = strip_point();
      } while (euclid(p, disk->center) < 0.75 * disk->radius);
      bool inside = true;
      for (double x : p)
        if (x < 2 * h || x > 1 - 2 * h) inside = false;
      if (p.front() - strip_lo < 2 * h || strip_hi - p.front() < 2 * h) inside = false;
      if (!inside) continue;
    } else {
      p = strip_point();
    }
    double det = determinant(jacobian(g, p, h));
    report.max_det_err_off_support = std::max(report.max_det_err_off_support, std::abs(det - 1.0));
    report.min_det = std::min(report.min_det, det);
  }
  if (disk) {
    for (int i = 0; i < jac_samples; ++i) {
      Point p = ball_point(disk->center, disk->radius / 3.0 * 0.85);
      double det = determinant(jacobian(g, p, h));
      report.min_det = std::min(report.min_det, det);
    }
  }
  return report;
}

}  // namespace c0dynamo
