#pragma once

#include "c0dynamo/analysis.hpp"
#include "c0dynamo/geometry.hpp"
#include "c0dynamo/sequence.hpp"
#include "c0dynamo/witness.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace c0dynamo {

// All renderers emit standalone SVG with deterministic bytes: fixed
// viewport, fixed number formatting, no timestamps, no generated ids.

// Unit square with strip boundaries at 1/n and the disks of strips
// 2..2*depth. The witness overlay adds transport boxes, source/target disk
// outlines, and arrows. For d > 2 the picture is the projection onto
// coordinates (1, d), noted in the legend. depth must be in [1, 12].
std::string render_layout(const LayoutParams& params, const SequenceSpec& spec,
                          std::int64_t depth, const ConjugacyWitness* witness = nullptr);

// Displacement profile along the probe line of one strip.
std::string render_displacement(const std::vector<DisplacementSample>& samples,
                                std::int64_t strip);

// Scatter of points in the unit square (cube orbits are projected onto
// coordinates (1, d) by the caller; torus orbits render as-is).
std::string render_orbit(const std::vector<std::array<double, 2>>& points,
                         const std::string& subtitle);

}  // namespace c0dynamo
