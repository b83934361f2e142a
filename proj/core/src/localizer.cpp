#include "tubewf/localizer.hpp"

#include <cmath>
#include <stdexcept>

namespace tubewf {

namespace {

double h_exp1(double t) { return t > 0 ? std::exp(-1.0 / t) : 0.0; }
double h_exp2(double t) { return t > 0 ? std::exp(-1.0 / (t * t)) : 0.0; }

double transition(double u, BumpProfile profile) {
    // T(0)=0, T(1)=1, C-infinity with all derivatives vanishing at both ends.
    const double a = profile == BumpProfile::Exp1 ? h_exp1(u) : h_exp2(u);
    const double b = profile == BumpProfile::Exp1 ? h_exp1(1.0 - u) : h_exp2(1.0 - u);
    return a / (a + b);
}

}  // namespace

Localizer Localizer::identity_window() {
    Localizer w;
    w.identity = true;
    return w;
}

Localizer Localizer::at(Vec2 center, double inner, double outer, BumpProfile profile) {
    if (!(inner > 0) || !(outer > inner))
        throw std::invalid_argument("Localizer: smoothness requires R > r > 0");
    Localizer w;
    w.center = center;
    w.inner = inner;
    w.outer = outer;
    w.profile = profile;
    return w;
}

double Localizer::value(const Vec2& x, int dim) const {
    if (identity) return 1.0;
    Vec2 d{x[0] - center[0], dim == 2 ? x[1] - center[1] : 0.0};
    const double r = norm2(d, dim);
    if (r <= inner) return 1.0;
    if (r >= outer) return 0.0;
    return transition((outer - r) / (outer - inner), profile);
}

GridSignal localize(const GridSignal& f, const Localizer& w) {
    if (w.identity) return f;
    for (int axis = 0; axis < f.dim; ++axis) {
        const double lo = f.coord(axis, 0);
        const double hi = f.coord(axis, f.n - 1);
        if (w.center[axis] - w.outer < lo || w.center[axis] + w.outer > hi)
            throw std::invalid_argument("localize: window support exceeds the grid (aliasing risk)");
    }
    if (2.0 * w.outer > 0.5 * f.extent())
        throw std::invalid_argument("localize: window wider than half the grid extent");

    GridSignal out = f;
    if (f.dim == 1) {
        for (int i = 0; i < f.n; ++i) out.samples[i] *= w.value(f.point1(i), 1);
    } else {
        for (int ix = 0; ix < f.n; ++ix)
            for (int iy = 0; iy < f.n; ++iy)
                out.samples[static_cast<std::size_t>(ix) * f.n + iy] *= w.value(f.point2(ix, iy), 2);
    }
    return out;
}

}  // namespace tubewf
