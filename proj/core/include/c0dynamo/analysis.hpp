#pragma once

#include "c0dynamo/geometry.hpp"
#include "c0dynamo/system.hpp"

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

namespace c0dynamo {

// Black-box self-map of the cube.
using CubeMap = std::function<Point(const Point&)>;

struct EmptyStripError : std::runtime_error {
  EmptyStripError(std::int64_t strip_in, const std::string& message)
      : std::runtime_error(message), strip(strip_in) {}
  std::int64_t strip;
};

struct InvariantViolationError : std::runtime_error {
  InvariantViolationError(std::int64_t strip_in, const std::string& message)
      : std::runtime_error(message), strip(strip_in) {}
  std::int64_t strip;
};

struct DisplacementSample {
  double t = 0.0;
  double displacement = 0.0;
};

// |g(P(t)) - P(t)| along the probe line P(t) = (k(n), 1/2, ..., 1/2, t),
// t in [1/4 - r(n), 3/4 + r(n)] at the given step.
std::vector<DisplacementSample> displacement_scan(const CubeMap& g, const LayoutParams& params,
                                                  std::int64_t n, double step);

struct DecodeReport {
  std::int64_t strip = 0;
  double center = 0.0;     // recovered last-coordinate value
  std::int64_t period = 0;  // verified minimal return period, 2^(n+1)
  double support_lo = 0.0;
  double support_hi = 0.0;
  double residual = 0.0;  // fixed-point defect at the recovered center
};

// Locates the disk of strip n from displacement support (scan step r(n)/8,
// edges refined by bisection), then verifies the period of a probe at
// distance r(n)/6 from the recovered center.
// Throws EmptyStripError when no support is found and
// InvariantViolationError when the period is not exactly 2^(n+1).
DecodeReport decode_strip(const CubeMap& g, const LayoutParams& params, std::int64_t n,
                          double tol);

// decode_strip at strips 2, 4, ..., 2N: recovers alpha(1..N).
std::vector<DecodeReport> decode(const CubeMap& g, const LayoutParams& params, std::int64_t N,
                                 double tol);

std::vector<double> decoded_values(const std::vector<DecodeReport>& reports);

struct SmoothnessReport {
  std::int64_t strip = 0;
  std::int64_t samples = 0;
  double max_quotient = 0.0;  // max |f_d(p') - f_d(p)| / |p'_1| over sampled pairs
  double bound = 0.0;         // (m+1) * (2*pi / 2^(m+1)) * r(m)
  std::int64_t violations = 0;
  double max_det_err_off_support = 0.0;  // max |det J - 1| at identity points
  double min_det = 0.0;                  // min det J overall (positivity check)
};

// Difference quotients between points p' in H_m and their projections to the
// face {x1 = 0}, plus central-difference Jacobian spot checks (step 1e-6).
SmoothnessReport smoothness_scan(const AssembledSystem& system, std::int64_t m,
                                 std::int64_t samples, std::uint64_t seed = 20240817);

// Exact value of (m+1) * r(m) / 2^(m+1); the published bound is 2*pi times
// this.
Rat smoothness_bound_scaled(const LayoutParams& params, std::int64_t m);
double smoothness_bound(const LayoutParams& params, std::int64_t m);

// Central-difference Jacobian and its determinant (Gaussian elimination).
std::vector<std::vector<double>> jacobian(const CubeMap& g, const Point& p, double step);
double determinant(std::vector<std::vector<double>> m);

}  // namespace c0dynamo
