#include "c0dynamo/bump.hpp"

#include <cmath>
#include <stdexcept>

namespace c0dynamo {

namespace {

constexpr double kLo = 1.0 / 3.0;
constexpr double kHi = 2.0 / 3.0;

double sigma(double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; }

// sigma'(t) = sigma(t)/t^2, sigma''(t) = sigma(t)(1-2t)/t^4; both 0 once
// sigma underflows, which also dodges 0/0 at tiny t.
double sigma1(double t) {
  double e = sigma(t);
  return e == 0.0 ? 0.0 : e / (t * t);
}

double sigma2(double t) {
  double e = sigma(t);
  return e == 0.0 ? 0.0 : e * (1.0 - 2.0 * t) / (t * t * t * t);
}

}  // namespace

BumpEval bump_eval_checked(BumpProfile profile, double x, bool strict) {
  bool clamped = false;
  if (x < 0.0 || x > 1.0) {
    if (strict) throw std::domain_error("bump: argument outside [0, 1]");
    x = x < 0.0 ? 0.0 : 1.0;
    clamped = true;
  }
  if (x <= kLo) return {1.0, clamped};
  if (x >= kHi) return {0.0, clamped};
  double s = 3.0 * x - 1.0;  // transition coordinate in (0, 1)
  if (profile == BumpProfile::Cubic) return {1.0 - s * s * (3.0 - 2.0 * s), clamped};
  double a = sigma(1.0 - s);
  double b = sigma(s);
  return {a / (a + b), clamped};
}

double bump_eval(BumpProfile profile, double x) {
  return bump_eval_checked(profile, x, false).value;
}

double bump_derivative(BumpProfile profile, double x, int order) {
  if (order != 1 && order != 2)
    throw std::invalid_argument("bump_derivative: order must be 1 or 2");
  if (x < 0.0 || x > 1.0) throw std::domain_error("bump_derivative: argument outside [0, 1]");
  if (x <= kLo || x >= kHi) return 0.0;
  double s = 3.0 * x - 1.0;
  if (profile == BumpProfile::Cubic) {
    double f1 = 6.0 * s * (s - 1.0);
    return order == 1 ? 3.0 * f1 : 9.0 * (12.0 * s - 6.0);
  }
  // g = N/D with N = sigma(1-s), D = N + sigma(s); chain rule for s = 3x-1.
  double N = sigma(1.0 - s), B = sigma(s);
  double D = N + B;
  double N1 = -sigma1(1.0 - s), B1 = sigma1(s);
  double D1 = N1 + B1;
  double g = N / D;
  double g1 = (N1 - g * D1) / D;
  if (order == 1) return 3.0 * g1;
  double N2 = sigma2(1.0 - s), B2 = sigma2(s);
  double D2 = N2 + B2;
  double g2 = (N2 - 2.0 * g1 * D1 - g * D2) / D;
  return 9.0 * g2;
}

}  // namespace c0dynamo
