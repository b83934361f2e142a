#pragma once

#include <optional>
#include <vector>

#include "tubewf/grid_signal.hpp"

namespace tubewf {

/// Open conical region in frequency space: unit axis plus half-angle.
/// In d=1 the two cones are the half-lines, tested by sign of the frequency.
struct Cone {
    int dim = 1;
    Vec2 axis{1, 0};
    double half_angle = 0;

    static Cone halfline(double sign);                       // d=1
    static Cone around(double angle_rad, double half_angle); // d=2, axis by angle
    static Cone full(int dim);                               // everything but 0

    double angle_to(const Vec2& xi) const;
    /// Open membership test; xi = 0 is never contained.
    bool contains(const Vec2& xi) const;
    /// Closed membership (boundary included), used by covers.
    bool contains_closed(const Vec2& xi) const;
    /// Dual cone {eta : <y,eta> >= 0 for all y in the cone}; requires
    /// half_angle < pi/2.
    Cone dual() const;
};

/// Ordered list of closed cones covering R^d \ 0. The induced partition
/// assigns each direction to the first cone containing it (the paper's
/// Gamma_j minus union of earlier cones ordering); bin-boundary directions
/// land in the lowest-index cone.
struct ConeCover {
    int dim = 1;
    std::vector<Cone> cones;

    /// Index of the partition cell for a direction, -1 if uncovered.
    int first_containing(const Vec2& dir) const;
    /// Scans a fine angular grid (d=2) or both signs (d=1); returns an
    /// uncovered direction if the cover fails.
    std::optional<Vec2> uncovered_direction(int test_points = 4096) const;
};

}  // namespace tubewf
