#pragma once

#include <complex>

#include "tubewf/grid_signal.hpp"

namespace tubewf {

/// Point z = x + iy of the tube Omega = {|Im z| < 1}.
struct TubePoint {
    Vec2 x{0, 0};
    Vec2 y{0, 0};
    int dim = 1;

    double im_norm() const { return norm2(y, dim); }
};

struct KernelConfig {
    double truncation_radius = 40;  // spectral cutoff floor; scaled by 1/(1-|y|)
    int quadrature_order = 64;
    int dim = 1;

    void validate() const;
};

/// I(xi) = integral of e^{-<omega,xi>} over the unit sphere. Exact 2 cosh(xi)
/// in d=1; via the radial profile I0(|xi|) for d in {2,3}.
double eval_I(int d, const Vec2& xi);

/// Radial profile I0(rho) = c_{d-1} int_{-1}^1 (1-t^2)^{(d-3)/2} e^{t rho} dt,
/// analytic and even in rho. Gauss-Chebyshev (d=2) / Gauss-Legendre (d=3)
/// for moderate |Re rho|, scaled asymptotic series beyond.
cplx eval_I0(int d, cplx rho);

/// e^{-r} I0(r) for real r >= 0 (d=1 means e^{-r} I(r) = 1 + e^{-2r}).
/// Stable at any radius; the basis for all large-frequency multipliers.
double scaled_I0(int d, double r);

/// log I(xi) at |xi| = r, overflow-free.
double log_I(int d, double r);

/// Tube kernel K(z) = (2pi)^{-d} int e^{i<z,xi>} / I(xi) dxi. d=1 uses the
/// closed form sech(pi z/2)/4; d=2 reduces to a radial integral of I0 ratios
/// at complex argument (the angular quadrature folded into I0). Requires
/// |Im z| <= 1 - 1e-4.
cplx eval_K(const TubePoint& z, const KernelConfig& cfg = {});

/// Same value with a step-halving error estimate (d=2) or truncation bound
/// (d=1); used by the CLI to print a certified error.
cplx eval_K_with_error(const TubePoint& z, const KernelConfig& cfg, double* error_estimate);

/// d=1 closed form sech(pi z / 2) / 4.
cplx eval_K1_closed(cplx z);

/// d=1 truncated spectral integral (cross-validation route for the closed
/// form; tolerance 1e-10 on the standard lattice).
cplx eval_K1_spectral(double x, double y, const KernelConfig& cfg = {});

/// K(iy) along the imaginary axis (real, positive); d=2 uses a substituted
/// radial integral that stays accurate into the blow-up regime 1-y ~ 1e-3.
double eval_K_iy(int d, double y);

struct DecayBoundResult {
    double c_star = 0;       // max of e^{|xi|}(1+|xi|)^{-(d-1)/2} / I(xi)
    double arg_r = 0;        // maximizing radius
    bool interior = false;   // max stabilized before the grid boundary
};

/// Certifies 1/|I(xi)| <= C e^{-|xi|} (1+|xi|)^{(d-1)/2} with the fitted
/// constant; "interior" means the grid max within 0.9*radius already reaches
/// 99% of the full-grid max (the ratio curve has flattened).
DecayBoundResult decay_bound_check(int d, double radius = 50, int npts = 2001);

struct DerivativeBoundResult {
    bool pass = false;
    double c_fit = 0;   // fitted spatial decay rate
    double big_c = 0;   // fitted constant
};

/// Validates |D^beta K(x+iy)| <= C_beta (1-|y|)^{-d-|beta|} e^{-c|x|} with
/// constants fitted on half of a log-spaced sample set and checked on the
/// other half. Central differences with step 1e-4. d=1 only.
DerivativeBoundResult kernel_derivative_bound_check(int d, int beta_order);

}  // namespace tubewf
