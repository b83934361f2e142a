#include "tubewf/catalog.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace tubewf {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * kPi;
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kTol = 1e-9;
const double kInvSqrt2Pi = std::pow(kTwoPi, -0.5);

bool near(double a, double b) { return std::abs(a - b) < kTol; }

bool dir_matches(const Vec2& dir, double ax, double ay, int dim) {
    const double r = norm2(dir, dim);
    if (r == 0) return false;
    return near(dir[0] / r, ax) && (dim == 1 || near(dir[1] / r, ay));
}

// Grid sample of the 1-D Heaviside transform: sqrt(pi/2)/dxi at xi=0 plus
// -i (2pi)^{-1/2} / xi away from it.
cplx heaviside_hat_grid(double xi, double dxi) {
    if (xi == 0) return cplx(std::sqrt(kPi / 2.0) / dxi, 0);
    return cplx(0, -kInvSqrt2Pi / xi);
}

std::vector<ModelDistribution> build_catalog() {
    std::vector<ModelDistribution> cat;
    using MD = ModelDistribution;

    auto point_rate_1d = [](double r_plus, double r_minus) {
        return [=](const Vec2& x, const Vec2& dir) -> double {
            if (!near(x[0], 0)) return kNegInf;
            return dir[0] > 0 ? r_plus : r_minus;
        };
    };
    auto origin_only = [](const Vec2& x) { return near(x[0], 0); };

    {
        MD m;
        m.dim = 1;
        m.name = "gaussian";
        m.description = "exp(-x^2/2); transform equals itself";
        m.fourier = [](const Vec2& xi) { return cplx(std::exp(-0.5 * xi[0] * xi[0]), 0); };
        m.poly_c = 1;
        m.poly_m = 0;
        m.sampling = MD::Sampling::Pointwise;
        m.pointwise = [](const Vec2& x) { return cplx(std::exp(-0.5 * x[0] * x[0]), 0); };
        m.compactly_supported = true;  // below 1e-14 outside |x| > 8
        m.ground_truth_known = true;
        m.rate = [](const Vec2&, const Vec2&) { return kNegInf; };
        m.singular_at = [](const Vec2&) { return false; };
        cat.push_back(std::move(m));
    }
    {
        MD m;
        m.dim = 1;
        m.name = "delta";
        m.description = "unit mass at 0";
        m.fourier = [](const Vec2&) { return cplx(kInvSqrt2Pi, 0); };
        m.poly_c = 0.5;
        m.sampling = MD::Sampling::Spectral;
        m.compactly_supported = true;
        m.ground_truth_known = true;
        m.rate = point_rate_1d(0, 0);
        m.singular_at = origin_only;
        cat.push_back(std::move(m));
    }
    {
        MD m;
        m.dim = 1;
        m.name = "delta_prime";
        m.description = "derivative of the delta";
        m.fourier = [](const Vec2& xi) { return cplx(0, kInvSqrt2Pi * xi[0]); };
        m.poly_c = 0.5;
        m.poly_m = 1;
        m.sampling = MD::Sampling::Spectral;
        m.compactly_supported = true;
        m.ground_truth_known = true;
        m.rate = point_rate_1d(1, 1);
        m.singular_at = origin_only;
        cat.push_back(std::move(m));
    }
    {
        MD m;
        m.dim = 1;
        m.name = "heaviside";
        m.description = "unit step H(x)";
        m.fourier = [](const Vec2& xi) {
            return xi[0] == 0 ? cplx(0, 0) : cplx(0, -kInvSqrt2Pi / xi[0]);
        };
        m.atoms = {{{0, 0}, cplx(std::sqrt(kPi / 2.0), 0)}};
        m.poly_c = 0.5;
        m.sampling = MD::Sampling::Spectral;
        m.ground_truth_known = true;
        m.rate = point_rate_1d(-1, -1);
        m.singular_at = origin_only;
        cat.push_back(std::move(m));
    }
    {
        MD m;
        m.dim = 1;
        m.name = "sign";
        m.description = "sign function";
        m.fourier = [](const Vec2& xi) {
            return xi[0] == 0 ? cplx(0, 0) : cplx(0, -std::sqrt(2.0 / kPi) / xi[0]);
        };
        m.poly_c = 1;
        m.sampling = MD::Sampling::Spectral;
        m.ground_truth_known = true;
        m.rate = point_rate_1d(-1, -1);
        m.singular_at = origin_only;
        cat.push_back(std::move(m));
    }
    {
        MD m;
        m.dim = 1;
        m.name = "pv";
        m.description = "principal value of 1/x";
        m.fourier = [](const Vec2& xi) {
            if (xi[0] == 0) return cplx(0, 0);
            return cplx(0, -std::sqrt(kPi / 2.0) * (xi[0] > 0 ? 1.0 : -1.0));
        };
        m.poly_c = 1.5;
        m.sampling = MD::Sampling::Spectral;
        m.ground_truth_known = true;
        m.rate = point_rate_1d(0, 0);
        m.singular_at = origin_only;
        cat.push_back(std::move(m));
    }
    {
        MD m;
        m.dim = 1;
        m.name = "plus_i0";
        m.description = "boundary value 1/(x+i0) from the upper half-plane";
        m.fourier = [](const Vec2& xi) {
            const double mask = xi[0] > 0 ? 1.0 : (xi[0] == 0 ? 0.5 : 0.0);
            return cplx(0, -std::sqrt(kTwoPi) * mask);
        };
        m.poly_c = 3;
        m.sampling = MD::Sampling::Spectral;
        m.ground_truth_known = true;
        m.rate = point_rate_1d(0, kNegInf);
        m.singular_at = origin_only;
        cat.push_back(std::move(m));
    }
    {
        MD m;
        m.dim = 1;
        m.name = "abs";
        m.description = "|x| (finite-part transform, DC bin set to 0)";
        m.fourier = [](const Vec2& xi) {
            if (xi[0] == 0) return cplx(0, 0);
            return cplx(-std::sqrt(2.0 / kPi) / (xi[0] * xi[0]), 0);
        };
        m.poly_c = 1;
        m.sampling = MD::Sampling::Spectral;
        m.ground_truth_known = true;
        m.rate = point_rate_1d(-2, -2);
        m.singular_at = origin_only;
        cat.push_back(std::move(m));
    }
    {
        MD m;
        m.dim = 1;
        m.name = "chirp";
        m.description = "exp(i x^2) with Gaussian envelope exp(-x^2/8)";
        const cplx beta(0.125, -1.0);  // f = exp(-beta x^2)
        m.fourier = [beta](const Vec2& xi) {
            return std::sqrt(1.0 / (2.0 * beta)) * std::exp(-xi[0] * xi[0] / (4.0 * beta));
        };
        m.poly_c = 1;
        m.sampling = MD::Sampling::Pointwise;
        m.pointwise = [beta](const Vec2& x) { return std::exp(-beta * x[0] * x[0]); };
        m.compactly_supported = true;
        m.ground_truth_known = true;
        m.rate = [](const Vec2&, const Vec2&) { return kNegInf; };
        m.singular_at = [](const Vec2&) { return false; };
        cat.push_back(std::move(m));
    }

    // ---- d = 2 ----
    {
        MD m;
        m.dim = 2;
        m.name = "tensor_gaussian";
        m.description = "exp(-|x|^2/2) in two variables";
        m.fourier = [](const Vec2& xi) {
            return cplx(std::exp(-0.5 * (xi[0] * xi[0] + xi[1] * xi[1])), 0);
        };
        m.sampling = MD::Sampling::Pointwise;
        m.pointwise = [](const Vec2& x) {
            return cplx(std::exp(-0.5 * (x[0] * x[0] + x[1] * x[1])), 0);
        };
        m.compactly_supported = true;
        m.ground_truth_known = true;
        m.rate = [](const Vec2&, const Vec2&) { return kNegInf; };
        m.singular_at = [](const Vec2&) { return false; };
        cat.push_back(std::move(m));
    }
    {
        MD m;
        m.dim = 2;
        m.name = "half_plane";
        m.description = "indicator of {x1 > 0}";
        m.sampling = MD::Sampling::CustomSpectrum;
        m.custom_spectrum = [](GridSignal& freq) {
            const double dxi = freq.spacing;
            const int n = freq.n;
            for (int k1 = 0; k1 < n; ++k1) {
                const double xi1 = freq.coord(0, k1);
                // f^ = H^(xi1) * sqrt(2pi) delta(xi2): only the xi2 = 0 row.
                freq.at(k1, n / 2) = heaviside_hat_grid(xi1, dxi) * std::sqrt(kTwoPi) / dxi;
            }
        };
        m.poly_c = 100;
        m.ground_truth_known = true;
        m.rate = [](const Vec2& x, const Vec2& dir) -> double {
            if (!near(x[0], 0)) return kNegInf;
            if (dir_matches(dir, 1, 0, 2) || dir_matches(dir, -1, 0, 2)) return -1.5;
            return kNegInf;
        };
        m.singular_at = [](const Vec2& x) { return near(x[0], 0); };
        cat.push_back(std::move(m));
    }
    {
        MD m;
        m.dim = 2;
        m.name = "quadrant";
        m.description = "indicator of {x1 > 0, x2 > 0}";
        m.sampling = MD::Sampling::CustomSpectrum;
        m.custom_spectrum = [](GridSignal& freq) {
            const double dxi = freq.spacing;
            const int n = freq.n;
            for (int k1 = 0; k1 < n; ++k1)
                for (int k2 = 0; k2 < n; ++k2)
                    freq.at(k1, k2) = heaviside_hat_grid(freq.coord(0, k1), dxi) *
                                      heaviside_hat_grid(freq.coord(1, k2), dxi);
        };
        m.poly_c = 100;
        m.provenance = MD::Provenance::Oracle;
        m.singular_at = [](const Vec2& x) {
            return (near(x[0], 0) && x[1] > -kTol) || (near(x[1], 0) && x[0] > -kTol);
        };
        cat.push_back(std::move(m));
    }
    {
        MD m;
        m.dim = 2;
        m.name = "disk";
        m.description = "indicator of the unit disk";
        m.fourier = [](const Vec2& xi) {
            const double r = norm2(xi, 2);
            if (r < 1e-8) return cplx(0.5, 0);
            return cplx(std::cyl_bessel_j(1, r) / r, 0);
        };
        m.poly_c = 1;
        m.sampling = MD::Sampling::Spectral;
        m.compactly_supported = true;
        m.ground_truth_known = true;
        m.rate = [](const Vec2& x, const Vec2& dir) -> double {
            const double r = norm2(x, 2);
            if (!near(r, 1)) return kNegInf;
            const Vec2 normal{x[0] / r, x[1] / r};
            if (dir_matches(dir, normal[0], normal[1], 2) ||
                dir_matches(dir, -normal[0], -normal[1], 2))
                return -1.5;
            return kNegInf;
        };
        m.singular_at = [](const Vec2& x) { return near(norm2(x, 2), 1); };
        cat.push_back(std::move(m));
    }
    {
        MD m;
        m.dim = 2;
        m.name = "line_delta";
        m.description = "delta line on {x1 = 0}";
        m.sampling = MD::Sampling::CustomSpectrum;
        m.custom_spectrum = [](GridSignal& freq) {
            const int n = freq.n;
            for (int k1 = 0; k1 < n; ++k1) freq.at(k1, n / 2) = cplx(1.0 / freq.spacing, 0);
        };
        m.poly_c = 100;
        m.ground_truth_known = true;
        m.rate = [](const Vec2& x, const Vec2& dir) -> double {
            if (!near(x[0], 0)) return kNegInf;
            if (dir_matches(dir, 1, 0, 2) || dir_matches(dir, -1, 0, 2)) return -0.5;
            return kNegInf;
        };
        m.singular_at = [](const Vec2& x) { return near(x[0], 0); };
        cat.push_back(std::move(m));
    }
    return cat;
}

}  // namespace

const std::vector<ModelDistribution>& catalog() {
    static const std::vector<ModelDistribution> cat = build_catalog();
    return cat;
}

const ModelDistribution& find_model(std::string_view name) {
    for (const auto& m : catalog())
        if (m.name == name) return m;
    throw std::invalid_argument("unknown source: " + std::string(name));
}

GridSignal sample_model(const ModelDistribution& model, int dim, int n, double spacing,
                        std::optional<Vec2> origin) {
    if (dim != model.dim) throw std::invalid_argument("sample_model: dimension mismatch");
    const Vec2 x0 = origin.value_or(Vec2{-(n / 2) * spacing, dim == 2 ? -(n / 2) * spacing : 0.0});
    GridSignal probe = GridSignal::make(dim, n, spacing, x0);  // validates n, spacing

    using S = ModelDistribution::Sampling;
    if (model.sampling == S::Pointwise) {
        if (model.fourier) {
            // Nyquist policy: spectral content at the band edge below 1e-6 of
            // the peak over moderate frequencies.
            double peak = 0;
            for (double r : {0.0, 0.5, 1.0, 2.0, 4.0})
                peak = std::max(peak, std::abs(model.fourier({r, 0})));
            const double nyq = probe.nyquist();
            double edge = std::abs(model.fourier({nyq, 0}));
            if (dim == 2) edge = std::max(edge, std::abs(model.fourier({0, nyq})));
            if (edge > 1e-6 * peak)
                throw std::invalid_argument("sample_model: grid too coarse for " + model.name);
        }
        if (dim == 1) {
            for (int i = 0; i < n; ++i) probe.samples[i] = model.pointwise(probe.point1(i));
        } else {
            for (int ix = 0; ix < n; ++ix)
                for (int iy = 0; iy < n; ++iy)
                    probe.at(ix, iy) = model.pointwise(probe.point2(ix, iy));
        }
        return probe;
    }

    // Spectral and custom-spectrum entries: fill f^ on the dual grid, invert.
    GridSignal freq = GridSignal::make(dim, n, probe.dual_spacing(), probe.dual_origin());
    if (model.sampling == S::CustomSpectrum) {
        model.custom_spectrum(freq);
    } else {
        // Smooth band-edge taper (1 below 0.7 Nyquist, 0 above 0.95). Sharp
        // truncation of polynomially growing symbols rings across the whole
        // window; the taper keeps that representation noise subexponentially
        // small away from the singular support.
        const double nyq = probe.nyquist();
        auto taper = [&](double r) -> double {
            const double lo = 0.7 * nyq, hi = 0.95 * nyq;
            if (r <= lo) return 1.0;
            if (r >= hi) return 0.0;
            const double u = (hi - r) / (hi - lo);
            const double a = std::exp(-1.0 / u), b = std::exp(-1.0 / (1.0 - u));
            return a / (a + b);
        };
        if (dim == 1) {
            for (int i = 0; i < n; ++i) {
                const Vec2 xi = freq.point1(i);
                freq.samples[i] = model.fourier(xi) * taper(std::abs(xi[0]));
            }
        } else {
            for (int ix = 0; ix < n; ++ix)
                for (int iy = 0; iy < n; ++iy) {
                    const Vec2 xi = freq.point2(ix, iy);
                    freq.at(ix, iy) = model.fourier(xi) * taper(norm2(xi, 2));
                }
        }
        const double cell = dim == 2 ? freq.spacing * freq.spacing : freq.spacing;
        for (const auto& atom : model.atoms) {
            // Atoms land on the nearest bin (all catalog atoms sit at 0).
            const int k0 = static_cast<int>(std::lround((atom.xi[0] - freq.origin[0]) / freq.spacing));
            const int k1 = dim == 2
                               ? static_cast<int>(std::lround((atom.xi[1] - freq.origin[1]) / freq.spacing))
                               : 0;
            freq.at(k0, k1) += atom.mass / cell;
        }
    }
    return inverse_spectrum(freq, x0);
}

bool polybound_check(const ModelDistribution& model, double radius, int samples) {
    auto bound = [&](double r) { return model.poly_c * std::pow(1.0 + r, model.poly_m); };
    if (model.fourier) {
        for (int i = 0; i < samples; ++i) {
            const double r = 1.0 + (radius - 1.0) * i / (samples - 1);
            if (model.dim == 1) {
                for (double sgn : {1.0, -1.0})
                    if (std::abs(model.fourier({sgn * r, 0})) > bound(r) * (1 + 1e-9)) return false;
            } else {
                for (int a = 0; a < 16; ++a) {
                    const double th = kTwoPi * a / 16;
                    if (std::abs(model.fourier({r * std::cos(th), r * std::sin(th)})) >
                        bound(r) * (1 + 1e-9))
                        return false;
                }
            }
        }
        return true;
    }
    // Grid-defined spectrum: check on a default grid (window [-4,4)^2).
    GridSignal freq = GridSignal::make(model.dim, 256, kTwoPi / 8.0,
                                       Vec2{-128 * kTwoPi / 8.0,
                                            model.dim == 2 ? -128 * kTwoPi / 8.0 : 0.0});
    model.custom_spectrum(freq);
    for (int ix = 0; ix < freq.n; ++ix)
        for (int iy = 0; iy < (model.dim == 2 ? freq.n : 1); ++iy) {
            const Vec2 xi = model.dim == 2 ? freq.point2(ix, iy) : freq.point1(ix);
            const double r = norm2(xi, model.dim);
            if (r < 1) continue;
            if (std::abs(freq.at(ix, iy)) > bound(r) * (1 + 1e-9)) return false;
        }
    return true;
}

}  // namespace tubewf
