#pragma once

#include <functional>
#include <optional>

#include "tubewf/catalog.hpp"
#include "tubewf/grid_signal.hpp"
#include "tubewf/kernel.hpp"
#include "tubewf/localizer.hpp"

namespace tubewf {

struct GrowthCertificate {
    double big_c = 0, a = 0, b = 0;  // |F(z)| <= C (1+|z|)^a (1-|Im z|)^{-b}
    bool fitted = false;
};

/// Analytic representative F = K * f, realized spectrally:
///   F(x+iy) = kappa (2pi)^{-d/2} int e^{i<x,xi>} e^{-<y,xi>} f^(xi)/I(xi) dxi
/// plus exact point-atom terms. kappa is pinned to 1 by the delta => K
/// identity (checked by tests, not re-derived from conventions).
struct AnalyticRep {
    int dim = 1;
    GridSignal freq;  // function part of f^ on the dual grid
    std::vector<SpectralAtom> atoms;
    double kappa = 1.0;
    GrowthCertificate growth;

    /// Single tube point, direct quadrature over the frequency grid.
    cplx evaluate(const TubePoint& z) const;

    /// Samples of F(. + iy) on the x-grid dual to `freq` (fast multiplier +
    /// inverse FFT path). `origin` fixes the x-grid placement.
    GridSignal boundary_line(const Vec2& y, std::optional<Vec2> origin = std::nullopt) const;
};

/// From a catalog entry (exact spectral data; atoms kept exact). Rejects
/// entries without a usable polynomial bound on the spectrum.
AnalyticRep make_analytic_rep(const ModelDistribution& model, int n, double spacing);

/// From grid samples (FFT spectrum).
AnalyticRep make_analytic_rep(const GridSignal& f);

/// Fits (C,a,b) on a log-spaced tube lattice, training on half the samples
/// and validating the bound (with 10% slack) on the other half.
GrowthCertificate fit_growth_certificate(const AnalyticRep& rep, double max_gap = 0.5,
                                         double min_gap = 1e-3);

/// <f,phi> recovered as the sphere-quadrature sum of <F(.+i(1-eps)xi), phi>.
/// d=1 uses the two exact nodes; d=2 uniform angular quadrature with at
/// least 256 nodes. eps in (0, 0.5).
cplx reconstruct(const AnalyticRep& rep, const GridSignal& phi, double eps,
                 int sphere_nodes = 256);

/// Measure on S^{d-1}: weighted point masses (d=1) or an angular quadrature
/// of a piecewise-constant density (d=2).
struct SphereMeasure {
    struct Node {
        Vec2 xi{1, 0};
        double w = 0;
    };
    int dim = 1;
    std::vector<Node> nodes;

    static SphereMeasure zero(int dim);
    static SphereMeasure full_uniform(int dim, int n = 256);
    static SphereMeasure point_mass(int dim, Vec2 dir, double mass);

    double total_mass() const;
    bool supports(const Vec2& dir, double angular_tol) const;
};

/// F_mu(x) = int F(x + i(1-eps) xi) dmu(xi) on the representative's x-grid.
GridSignal average_over_sphere(const AnalyticRep& rep, const SphereMeasure& mu, double eps);

struct HalfTubeSplit {
    GridSignal v1;             // integral over {-xi not in M}: the tame part
    GridSignal boundary_part;  // boundary value of F_part = int_{-xi in M} V(.+i xi)
    bool degenerate = false;   // M empty or all of the sphere
};

/// Splits chi*f into a part that stays in the space at the localizer center
/// (when M covers the flagged directions there) and the boundary value of an
/// analytic function living over -M. Both sides evaluated at the matched
/// radius 1-eps so they resum to chi*f up to O(eps * Nyquist).
HalfTubeSplit half_tube_split(const GridSignal& f, const Localizer& chi,
                              const std::function<bool(const Vec2&)>& in_M, double eps,
                              int sphere_nodes = 256);

}  // namespace tubewf
