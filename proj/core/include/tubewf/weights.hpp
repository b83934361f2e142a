#pragma once

#include <cstdint>
#include <optional>
#include <utility>

#include "tubewf/grid_signal.hpp"

namespace tubewf {

/// Polynomial weight w(x) = <x>^s with <x> = (1+|x|^2)^{1/2}, together with a
/// moderateness certificate w(x+y) <= C w(x) v(y), v = <.>^N. The default
/// certificate (C,N) = (2^|s|, |s|) follows from <x+y> <= 2 <x><y>.
struct Weight {
    double s = 0;
    double moderate_c = 1;
    double moderate_n = 0;

    Weight() = default;
    explicit Weight(double exponent);
    /// Custom claimed certificate (for moderate_check experiments).
    Weight(double exponent, double claimed_c, double claimed_n);

    double operator()(const Vec2& x, int dim) const;
    double v(const Vec2& y, int dim) const;
    double of_radius(double r) const;
    double v_of_radius(double r) const;
};

struct ModerateCheckResult {
    bool ok = true;
    std::optional<std::pair<Vec2, Vec2>> counterexample;
};

/// Randomized verification of the certificate on |x|,|y| <= radius.
/// Reproducible for a fixed seed. Returns the first violating pair if any.
ModerateCheckResult moderate_check(const Weight& w, int trials, std::uint64_t seed,
                                   int dim = 1, double radius = 1e3);

}  // namespace tubewf
