#pragma once

// Rotational symmetry of a configuration about its SEC center: the order k,
// symmetricity, orbits, views and the total order on orbits.

#include "swarmkit/geom.hpp"

#include <compare>
#include <vector>

namespace swarmkit {

struct OrbitPartition {
    int k = 0;
    Circle sec;
    // Each orbit is listed in counterclockwise order; the center (if occupied)
    // is a singleton orbit and comes last.
    std::vector<std::vector<Point>> orbits;
    // orbit_of[i] is the orbit index of support()[i].
    std::vector<int> orbit_of;

    int orbit_index(const Configuration& p, const Point& q) const;
};

struct View {
    Point origin;
    std::vector<Point> coords; // sorted by <
};

OrbitPartition orbits(const Configuration& p, const ToleranceConfig& cfg = {});
int rotation_order(const Configuration& p, const ToleranceConfig& cfg = {});
int symmetricity(const Configuration& p, const ToleranceConfig& cfg = {});

View view(const Configuration& p, const Point& q, const ToleranceConfig& cfg = {});

/// Orders q against q2 under the total order on orbits: greater means q is
/// the larger one. Points of one orbit compare equivalent.
std::weak_ordering compare_points(const Configuration& p, const Point& q, const Point& q2,
                                  const ToleranceConfig& cfg = {});

/// Same, reusing an already computed partition of p.
std::weak_ordering compare_points(const Configuration& p, const OrbitPartition& part, const Point& q,
                                  const Point& q2, const ToleranceConfig& cfg = {});

/// Unique maximum of the support; requires k = 1.
Point largest_point(const Configuration& p, const ToleranceConfig& cfg = {});
Point largest_point(const Configuration& p, const OrbitPartition& part, const ToleranceConfig& cfg = {});

/// Support sorted from largest to smallest (orbit representatives when k > 1).
std::vector<Point> order_chain(const Configuration& p, const ToleranceConfig& cfg = {});

} // namespace swarmkit
