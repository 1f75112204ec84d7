#pragma once

#include <span>
#include <vector>

#include "rbsect/first_last.hpp"
#include "rbsect/geometry.hpp"

namespace rbsect {

/// All red/blue intersection points per red curve, sorted by x.
std::vector<std::vector<CandidatePoint>> oracle_report(std::span<const Curve> red,
                                                       std::span<const Curve> blue);

/// First and last intersection per red curve by testing every pair.
FirstLastResult brute_first_last(std::span<const Curve> red, std::span<const Curve> blue);

struct Nearest {
  std::size_t site = 0;
  double distance = 0;
};

/// Closest site by linear scan; ties go to the lower index. Throws
/// std::invalid_argument for an empty site list.
Nearest brute_nearest(Point p, std::span<const Site> sites);

/// Distance from p to the nearest point of the union of segments.
double distance_to_segments(Point p, std::span<const Segment> segs);

/// Directed Hausdorff distance from P to Q evaluated at points spaced delta
/// apart along each segment of P, endpoints included. The result is the
/// exact maximum over those samples.
double sampled_directed_hausdorff(std::span<const Segment> P, std::span<const Segment> Q,
                                  double delta);

}  // namespace rbsect
