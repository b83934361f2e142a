#pragma once

#include "tubewf/grid_signal.hpp"

namespace tubewf {

/// Two registered C-infinity bump profiles; verdicts must be stable under
/// switching between them (the window choice is a convention, not pinned).
enum class BumpProfile { Exp1, Exp2 };

/// Smooth radial cutoff: identically 1 on the ball of radius `inner` about
/// `center`, 0 outside radius `outer`, values in [0,1] in between via the
/// standard exp(-1/t) transition composed with radial distance.
struct Localizer {
    Vec2 center{0, 0};
    double inner = 0;
    double outer = 0;
    BumpProfile profile = BumpProfile::Exp1;
    bool identity = false;  // allowed for compactly supported sources

    static Localizer identity_window();
    static Localizer at(Vec2 center, double inner, double outer,
                        BumpProfile profile = BumpProfile::Exp1);

    double value(const Vec2& x, int dim) const;
};

/// Pointwise product f * window. Throws if the window support exceeds the
/// grid, or is wider than half the grid extent (periodization guard).
GridSignal localize(const GridSignal& f, const Localizer& w);

}  // namespace tubewf
