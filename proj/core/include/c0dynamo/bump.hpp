#pragma once

namespace c0dynamo {

// Non-increasing profiles with value 1 on [0, 1/3] and 0 on [2/3, 1].
//  Smooth: exp-based partition quotient, flat to all orders at the junctions.
//  Cubic:  complement of the cubic smoothstep on the transition (C^1 only);
//          cheaper, for plots and quick scans.
enum class BumpProfile { Smooth, Cubic };

struct BumpEval {
  double value = 0.0;
  bool clamped = false;
};

// strict=false clamps x into [0,1] and reports it; strict=true throws
// std::domain_error instead.
BumpEval bump_eval_checked(BumpProfile profile, double x, bool strict);

double bump_eval(BumpProfile profile, double x);

// Analytic derivatives, order 1 or 2 only.
double bump_derivative(BumpProfile profile, double x, int order);

}  // namespace c0dynamo
