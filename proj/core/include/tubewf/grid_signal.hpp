#pragma once

#include <array>
#include <complex>
#include <optional>
#include <vector>

namespace tubewf {

using cplx = std::complex<double>;
using Vec2 = std::array<double, 2>;

double norm2(const Vec2& v, int dim);
double dot(const Vec2& a, const Vec2& b, int dim);

/// Uniform-grid samples of a function/distribution in d in {1,2}. The signal
/// is treated as compactly supported inside the grid window; spectral access
/// uses the unitary transform
///   f^(xi) = (2pi)^{-d/2} \int f(x) e^{-i<x,xi>} dx,
/// discretized with Riemann scaling so a unit Gaussian maps to a unit
/// Gaussian up to discretization error.
struct GridSignal {
    int dim = 1;
    int n = 0;            // samples per axis, power of two
    double spacing = 0;   // grid step
    Vec2 origin{0, 0};    // coordinate of sample (0[,0])
    std::vector<cplx> samples;  // size n (d=1) or n*n row-major, index ix*n+iy

    static GridSignal make(int dim, int n, double spacing, Vec2 origin);

    std::size_t size() const { return samples.size(); }
    double coord(int axis, int index) const { return origin[axis] + index * spacing; }
    Vec2 point1(int i) const { return {coord(0, i), 0.0}; }
    Vec2 point2(int ix, int iy) const { return {coord(0, ix), coord(1, iy)}; }

    cplx& at(int ix, int iy = 0) { return samples[static_cast<std::size_t>(ix) * (dim == 2 ? n : 1) + (dim == 2 ? iy : 0)]; }
    const cplx& at(int ix, int iy = 0) const { return const_cast<GridSignal*>(this)->at(ix, iy); }

    double extent() const { return n * spacing; }
    double nyquist() const;
    double dual_spacing() const;
    Vec2 dual_origin() const;
    /// Centered x-origin matching this grid's shape.
    Vec2 centered_origin() const;

    /// sqrt( sum |f|^2 dx^d )
    double l2() const;
    double max_abs() const;
};

/// Frequency-domain samples of f^ on the dual grid (spacing 2pi/(n dx),
/// origin -n/2 * dxi). Parseval holds exactly up to rounding.
GridSignal spectrum(const GridSignal& f);

/// Inverse of spectrum(). The x-origin cannot be recovered from the dual grid
/// alone; pass it explicitly, or omit for a centered grid.
GridSignal inverse_spectrum(const GridSignal& g, std::optional<Vec2> origin = std::nullopt);

}  // namespace tubewf
