#pragma once

#include "c0dynamo/bump.hpp"
#include "c0dynamo/geometry.hpp"

#include <cstdint>

namespace c0dynamo {

// Twist supported on the open ball of radius (2/3) * radius about center:
// each sphere about the center is rotated rigidly in the plane of the last
// two coordinates by 2*pi*turns*bump(rho/radius).
struct TwistMap {
  Point center;
  double radius = 0.0;
  double turns = 0.0;
  BumpProfile profile = BumpProfile::Smooth;
};

// Returns the input unchanged (bit-exact) outside the support.
Point twist_apply(const TwistMap& map, Point p);
Point twist_inverse(const TwistMap& map, Point p);

// Shared kernel: applies the twist about `center` in place; returns false
// (leaving p untouched) outside the support.
bool twist_kernel(Point& p, const Point& center, double radius, double turns,
                  BumpProfile profile);

// Fiberwise monotone piecewise-linear homeomorphism of an axis-aligned box:
// translates the ball D(source, radius) onto D(target, radius) along the last
// axis and tapers the translation to 0 at lateral distance radius + margin.
// Identity outside the open box and on its boundary.
struct TransportMap {
  Point box_lo, box_hi;
  Point source, target;  // equal in all but the last coordinate
  double radius = 0.0;
  double margin = 0.0;
  BumpProfile taper = BumpProfile::Smooth;

  TransportMap(Point box_lo, Point box_hi, Point source, Point target, double radius,
               double margin, BumpProfile taper = BumpProfile::Smooth);
};

Point transport_apply(const TransportMap& map, Point p);
Point transport_inverse(const TransportMap& map, Point p);

}  // namespace c0dynamo
