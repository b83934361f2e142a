#include "tubewf/kernel.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "tubewf/quadrature.hpp"

namespace tubewf {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * kPi;
constexpr double kImGuard = 1e-4;     // numerical guard inside Omega
constexpr double kAsymptoticCut = 60; // |Re rho| above which the series takes over

double sphere_area(int dm1) {
    // Area of S^{dm1}: S^0 = 2 points, S^1 = 2pi, S^2 = 4pi.
    switch (dm1) {
        case 0: return 2.0;
        case 1: return kTwoPi;
        case 2: return 4.0 * kPi;
        default: throw std::invalid_argument("sphere_area: unsupported dimension");
    }
}

int cheb_count(double arg_magnitude) {
    return 96 + 2 * static_cast<int>(std::ceil(arg_magnitude));
}

// Scaled asymptotic series for e^{-rho} I0(rho), d=2 (Bessel I_0 tail):
// sqrt(2pi/rho) * sum_k a_k rho^{-k}, a_k = ((2k-1)!!)^2 / (k! 8^k).
double i0_series_tail(double r) {
    double term = 1.0, sum = 1.0;
    for (int k = 1; k <= 12; ++k) {
        const double odd = 2.0 * k - 1.0;
        term *= odd * odd / (8.0 * k);
        sum += term / std::pow(r, k);
    }
    return std::sqrt(kTwoPi / r) * sum;
}

cplx i0_series_tail_c(cplx r) {
    cplx term = 1.0, sum = 1.0;
    for (int k = 1; k <= 12; ++k) {
        const double odd = 2.0 * k - 1.0;
        term *= odd * odd / (8.0 * k);
        sum += term / std::pow(r, k);
    }
    return std::sqrt(kTwoPi / r) * sum;
}

}  // namespace

void KernelConfig::validate() const {
    if (truncation_radius < 40) throw std::invalid_argument("KernelConfig: truncation radius >= 40");
    if (quadrature_order < 64) throw std::invalid_argument("KernelConfig: quadrature order >= 64");
}

double eval_I(int d, const Vec2& xi) {
    if (d < 1) throw std::invalid_argument("eval_I: d >= 1");
    if (d == 1) return 2.0 * std::cosh(xi[0]);
    if (d > 3) throw std::invalid_argument("eval_I: d > 3 not supported");
    return eval_I0(d, norm2(xi, d == 2 ? 2 : 2)).real();
}

cplx eval_I0(int d, cplx rho) {
    if (d != 2 && d != 3) throw std::invalid_argument("eval_I0: d in {2,3}");
    if (rho.real() < 0) rho = -rho;  // even in rho, exactly

    if (rho.real() > kAsymptoticCut) {
        if (d == 3) {
            // 4pi sinh(rho)/rho with the e^{rho} factored for stability.
            return std::exp(rho) * kTwoPi * (1.0 - std::exp(-2.0 * rho)) / rho;
        }
        return std::exp(rho) * i0_series_tail_c(rho);
    }

    const auto rule = quad::sphere_profile_rule(d, cheb_count(std::abs(rho)));
    const double c = sphere_area(d - 2);
    // Symmetric node pairs keep I0 exactly even (and real for real rho).
    cplx acc = 0;
    const int n = static_cast<int>(rule.nodes.size());
    for (int k = n / 2; k < n; ++k) {
        const double t = rule.nodes[k];
        if (t <= 0) {
            acc += rule.weights[k];  // center node, cosh(0)=1
            continue;
        }
        acc += rule.weights[k] * 2.0 * std::cosh(t * rho);
    }
    return c * acc;
}

double scaled_I0(int d, double r) {
    if (r < 0) r = -r;
    if (d == 1) return 1.0 + std::exp(-2.0 * r);
    if (d != 2 && d != 3) throw std::invalid_argument("scaled_I0: d in {1,2,3}");

    if (r > kAsymptoticCut) {
        if (d == 3) return kTwoPi * (1.0 - std::exp(-2.0 * r)) / r;
        return i0_series_tail(r);
    }
    const auto rule = quad::sphere_profile_rule(d, cheb_count(r));
    const double c = sphere_area(d - 2);
    double acc = 0;
    for (std::size_t k = 0; k < rule.nodes.size(); ++k)
        acc += rule.weights[k] * std::exp((rule.nodes[k] - 1.0) * r);
    return c * acc;
}

double log_I(int d, double r) {
    if (r < 0) r = -r;
    return r + std::log(scaled_I0(d, r));
}

cplx eval_K1_closed(cplx z) { return 0.25 / std::cosh(kPi * z / 2.0); }

cplx eval_K1_spectral(double x, double y, const KernelConfig& cfg) {
    cfg.validate();
    if (std::abs(y) > 1.0 - kImGuard) {
        std::ostringstream msg;
        msg << "eval_K1_spectral: |Im z| = " << std::abs(y)
            << " beyond attainable radius " << 1.0 - kImGuard;
        throw std::runtime_error(msg.str());
    }
    const double R = std::max(cfg.truncation_radius, 40.0 / (1.0 - std::abs(y)));
    const int m = static_cast<int>(std::ceil(R / 0.01));
    const double h = R / m;
    cplx acc = 0;
    for (int k = -m; k <= m; ++k) {
        const double xi = k * h;
        // e^{i x xi - y xi} / (2 cosh xi), written overflow-free.
        const cplx val =
            std::exp(cplx(-y * xi - std::abs(xi), x * xi)) / (1.0 + std::exp(-2.0 * std::abs(xi)));
        acc += (k == -m || k == m) ? 0.5 * val : val;
    }
    return acc * (h / kTwoPi);
}

namespace {

// d=2 radial integrand at radius rho: rho * I0(i rho A) e^{-rho} / I0s(rho),
// with the angular integral evaluated as a Chebyshev pair sum so every
// exponential has a non-positive real part.
cplx radial_integrand_2d(double rho, cplx A, double im_a_abs) {
    if (rho == 0) return 0;
    const double decay = rho * (1.0 - im_a_abs);
    if (decay - std::log1p(rho) > 746.0) return 0;
    const auto rule = quad::gauss_chebyshev(cheb_count(rho * std::abs(A)));
    const cplx iA = cplx(0, 1) * A;
    cplx pair = 0;
    const int n = static_cast<int>(rule.nodes.size());
    for (int k = n / 2; k < n; ++k) {
        const double t = rule.nodes[k];
        pair += rule.weights[k] * (std::exp(rho * (t * iA - 1.0)) + std::exp(rho * (-t * iA - 1.0)));
    }
    pair *= 2.0;  // c_1 = area of S^0
    return rho * pair / scaled_I0(2, rho);
}

cplx eval_K2_radial(const TubePoint& z, const KernelConfig& cfg, double step_scale) {
    const double yn = z.im_norm();
    const cplx z0(z.x[0], z.y[0]), z1(z.x[1], z.y[1]);
    const cplx A = std::sqrt(z0 * z0 + z1 * z1);
    const double im_a = std::min(std::abs(A.imag()), yn);
    const double R = std::max(cfg.truncation_radius, 40.0 / (1.0 - yn));
    const double h = step_scale * std::min(0.02, 0.1 / (1.0 + std::abs(A)));
    const int m = static_cast<int>(std::ceil(R / h));
    cplx acc = 0;
    for (int k = 1; k < m; ++k) acc += radial_integrand_2d(k * (R / m), A, im_a);
    acc += 0.5 * radial_integrand_2d(R, A, im_a);
    return acc * (R / m) / (kTwoPi * kTwoPi);
}

}  // namespace

cplx eval_K(const TubePoint& z, const KernelConfig& cfg) {
    cfg.validate();
    const double yn = z.im_norm();
    if (yn > 1.0 - kImGuard) {
        std::ostringstream msg;
        msg << "eval_K: |Im z| = " << yn << " beyond attainable radius " << 1.0 - kImGuard;
        throw std::runtime_error(msg.str());
    }
    if (z.dim == 1) return eval_K1_closed(cplx(z.x[0], z.y[0]));
    if (z.dim != 2) throw std::invalid_argument("eval_K: d in {1,2}");
    if (norm2(z.x, 2) < 1e-14) return eval_K_iy(2, yn);
    return eval_K2_radial(z, cfg, 1.0);
}

cplx eval_K_with_error(const TubePoint& z, const KernelConfig& cfg, double* error_estimate) {
    const cplx v = eval_K(z, cfg);
    if (error_estimate) {
        if (z.dim == 1) {
            *error_estimate = 1e-12;  // closed form, evaluation rounding only
        } else if (norm2(z.x, 2) < 1e-14) {
            *error_estimate = 1e-8 * std::abs(v);
        } else {
            const cplx coarse = eval_K2_radial(z, cfg, 2.0);
            *error_estimate = std::abs(v - coarse);
        }
    }
    return v;
}

double eval_K_iy(int d, double y) {
    y = std::abs(y);
    if (y > 1.0 - kImGuard) {
        std::ostringstream msg;
        msg << "eval_K_iy: |y| = " << y << " beyond attainable radius " << 1.0 - kImGuard;
        throw std::runtime_error(msg.str());
    }
    if (d == 1) return 0.25 / std::cos(kPi * y / 2.0);
    if (d != 2) throw std::invalid_argument("eval_K_iy: d in {1,2}");

    // K(iy) = (2pi)^{-2} (1-y)^{-2} int_0^inf u e^{-u} R(u) du with
    // R(u) = I0s(u y/(1-y)) / I0s(u/(1-y)).
    const double U = 60.0;
    const int m = 12000;
    const double h = U / m;
    double acc = 0;
    for (int k = 1; k <= m; ++k) {
        const double u = k * h;
        const double ratio = scaled_I0(2, u * y / (1.0 - y)) / scaled_I0(2, u / (1.0 - y));
        const double val = u * std::exp(-u) * ratio;
        acc += (k == m) ? 0.5 * val : val;
    }
    return acc * h / (kTwoPi * kTwoPi * (1.0 - y) * (1.0 - y));
}

DecayBoundResult decay_bound_check(int d, double radius, int npts) {
    if (d < 1 || d > 3) throw std::invalid_argument("decay_bound_check: d in {1,2,3}");
    DecayBoundResult out;
    double interior_max = 0;
    for (int i = 0; i < npts; ++i) {
        const double r = radius * i / (npts - 1);
        const double ratio = std::pow(1.0 + r, -(d - 1) / 2.0) / scaled_I0(d, r);
        if (ratio > out.c_star) {
            out.c_star = ratio;
            out.arg_r = r;
        }
        if (r <= 0.9 * radius) interior_max = std::max(interior_max, ratio);
    }
    out.interior = interior_max >= 0.99 * out.c_star;
    return out;
}

DerivativeBoundResult kernel_derivative_bound_check(int d, int beta_order) {
    if (d != 1) throw std::invalid_argument("kernel_derivative_bound_check: d=1 only");
    if (beta_order < 0 || beta_order > 2)
        throw std::invalid_argument("kernel_derivative_bound_check: |beta| <= 2");

    const double h = 1e-4;
    auto deriv = [&](double x, double y) -> double {
        const cplx z(x, y);
        switch (beta_order) {
            case 0: return std::abs(eval_K1_closed(z));
            case 1: return std::abs((eval_K1_closed(z + h) - eval_K1_closed(z - h)) / (2.0 * h));
            default:
                return std::abs((eval_K1_closed(z + h) - 2.0 * eval_K1_closed(z) +
                                 eval_K1_closed(z - h)) / (h * h));
        }
    };

    // Log-spaced sample set in x and 1-|y|.
    std::vector<double> xs, gaps;
    for (int i = 0; i < 9; ++i) xs.push_back(0.5 * std::pow(12.0 / 0.5, i / 8.0));
    for (int i = 0; i < 7; ++i) gaps.push_back(1e-3 * std::pow(0.5 / 1e-3, i / 6.0));

    struct Sample {
        double x, gap, resid;  // resid = log|D K| + (d+|beta|) log(gap)
    };
    std::vector<Sample> train, validate;
    int idx = 0;
    for (double x : xs)
        for (double g : gaps) {
            const double v = deriv(x, 1.0 - g);
            if (!(v > 0)) continue;
            Sample s{x, g, std::log(v) + (d + beta_order) * std::log(g)};
            ((idx++ % 2) == 0 ? train : validate).push_back(s);
        }

    // Fit resid ~ logC - c x by least squares on the training half.
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& s : train) {
        sx += s.x;
        sy += s.resid;
        sxx += s.x * s.x;
        sxy += s.x * s.resid;
    }
    const double nt = static_cast<double>(train.size());
    const double c = -(nt * sxy - sx * sy) / (nt * sxx - sx * sx);
    double log_c_big = -1e300;
    for (const auto& s : train) log_c_big = std::max(log_c_big, s.resid + c * s.x);

    DerivativeBoundResult out;
    out.c_fit = c;
    out.big_c = std::exp(log_c_big);
    out.pass = true;
    for (const auto& s : validate) {
        if (s.resid > log_c_big + std::log(1.10) - c * s.x) {
            out.pass = false;
            break;
        }
    }
    return out;
}

}  // namespace tubewf
