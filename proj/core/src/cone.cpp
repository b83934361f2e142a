#include "tubewf/cone.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace tubewf {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kBoundaryTol = 1e-12;
}

Cone Cone::halfline(double sign) {
    Cone c;
    c.dim = 1;
    c.axis = {sign >= 0 ? 1.0 : -1.0, 0.0};
    c.half_angle = kPi / 2;
    return c;
}

Cone Cone::around(double angle_rad, double half_angle) {
    if (!(half_angle > 0) || half_angle > kPi)
        throw std::invalid_argument("Cone: half_angle in (0, pi]");
    Cone c;
    c.dim = 2;
    c.axis = {std::cos(angle_rad), std::sin(angle_rad)};
    c.half_angle = half_angle;
    return c;
}

Cone Cone::full(int dim) {
    Cone c;
    c.dim = dim;
    c.axis = {1, 0};
    c.half_angle = kPi;
    return c;
}

double Cone::angle_to(const Vec2& xi) const {
    const double r = norm2(xi, dim);
    if (r == 0) return kPi;
    const double c = dot(xi, axis, dim) / r;
    return std::acos(std::clamp(c, -1.0, 1.0));
}

bool Cone::contains(const Vec2& xi) const {
    const double r = norm2(xi, dim);
    if (r == 0) return false;
    if (half_angle >= kPi) return true;
    return angle_to(xi) < half_angle;
}

bool Cone::contains_closed(const Vec2& xi) const {
    const double r = norm2(xi, dim);
    if (r == 0) return false;
    if (half_angle >= kPi) return true;
    return angle_to(xi) <= half_angle + kBoundaryTol;
}

Cone Cone::dual() const {
    if (!(half_angle < kPi / 2))
        throw std::invalid_argument("Cone::dual: requires half_angle < pi/2");
    Cone d = *this;
    d.half_angle = kPi / 2 - half_angle;
    return d;
}

int ConeCover::first_containing(const Vec2& dir) const {
    for (std::size_t j = 0; j < cones.size(); ++j)
        if (cones[j].contains_closed(dir)) return static_cast<int>(j);
    return -1;
}

std::optional<Vec2> ConeCover::uncovered_direction(int test_points) const {
    if (dim == 1) {
        for (double s : {1.0, -1.0}) {
            if (first_containing({s, 0}) < 0) return Vec2{s, 0};
        }
        return std::nullopt;
    }
    for (int k = 0; k < test_points; ++k) {
        const double th = 2.0 * kPi * k / test_points;
        Vec2 dir{std::cos(th), std::sin(th)};
        if (first_containing(dir) < 0) return dir;
    }
    return std::nullopt;
}

}  // namespace tubewf
