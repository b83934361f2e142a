#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "tubewf/cone.hpp"
#include "tubewf/grid_signal.hpp"
#include "tubewf/weights.hpp"

namespace tubewf {

/// Concrete Fourier-BF space instance from the weighted / mixed Lebesgue
/// family: exponent p (optionally mixed (p,q) in d=2) and polynomial weight
/// <xi>^s. Parses from "FL(p=2,s=1.5)" or "FL(p=2,q=1,s=0)"; p may be "inf".
struct SpaceDescriptor {
    double p = 2;               // in [1, inf]
    std::optional<double> q;    // mixed second exponent (d=2 only)
    Weight weight{0.0};

    static SpaceDescriptor parse(std::string_view text);
    std::string str() const;

    /// s + sum of 1/p over axes; the scaling exponent the measure and weight
    /// contribute to a dyadic annulus norm.
    double integrability_offset(int dim) const;
    /// Critical spectral growth rate: a spectrum |f^| ~ |xi|^beta has finite
    /// cone norm iff beta < tau.
    double tau(int dim) const { return -integrability_offset(dim); }
};

/// Cone and/or annulus restriction resolved on a frequency grid.
struct RegionMask {
    std::optional<Cone> cone;
    std::optional<std::pair<double, double>> annulus;  // rmin <= |xi| < rmax

    static RegionMask everything() { return {}; }
    bool contains(const Vec2& xi, int dim) const;
};

/// Discretized weighted L^p (or mixed L^{p,q}) norm of g over the masked
/// region, Riemann scaling dxi^{d/p} so the value converges to the continuum
/// norm under grid refinement. Works on any GridSignal (the coordinates of
/// the signal's own grid are used); an empty mask gives 0.
double weighted_norm(const GridSignal& g, const SpaceDescriptor& sp,
                     const RegionMask& mask = RegionMask::everything());

struct EstimatePair {
    double lhs = 0;
    double rhs = 0;
};

/// Young estimate ||phi * f||_B <= C ||phi||_{L1_(v)} ||f||_B on a common
/// grid; the convolution is linear (zero padded) and the weights are taken at
/// the extended-grid coordinates, so the bound is exact in the discrete
/// setting.
EstimatePair young_convolution_check(const GridSignal& phi, const GridSignal& f,
                                     const SpaceDescriptor& sp);

/// Product estimate ||f g||_{FB} = ||f^ * g^||_B <= C ||f^||_B ||g^||_{L1_(v)}
/// with the product formed in x-space on the common grid.
EstimatePair product_module_check(const GridSignal& f, const GridSignal& g,
                                  const SpaceDescriptor& sp);

}  // namespace tubewf
