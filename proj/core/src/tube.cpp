#include "tubewf/tube.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace tubewf {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * kPi;

void check_eps(double eps) {
    if (!(eps > 0) || !(eps < 0.5)) throw std::invalid_argument("eps must lie in (0, 0.5)");
}

}  // namespace

cplx AnalyticRep::evaluate(const TubePoint& z) const {
    const int d = dim;
    const double cell = d == 2 ? freq.spacing * freq.spacing : freq.spacing;
    const double norm = std::pow(kTwoPi, -0.5 * d);
    cplx acc = 0;
    auto term = [&](const Vec2& xi, const cplx& fhat) {
        const double r = norm2(xi, d);
        const double expo = -dot(z.y, xi, d) - log_I(d, r);
        acc += fhat * std::exp(cplx(expo, dot(z.x, xi, d)));
    };
    if (d == 1) {
        for (int i = 0; i < freq.n; ++i) term(freq.point1(i), freq.samples[i]);
    } else {
        for (int ix = 0; ix < freq.n; ++ix)
            for (int iy = 0; iy < freq.n; ++iy) term(freq.point2(ix, iy), freq.at(ix, iy));
    }
    acc *= cell;
    for (const auto& atom : atoms) {
        const double r = norm2(atom.xi, d);
        const double expo = -dot(z.y, atom.xi, d) - log_I(d, r);
        acc += atom.mass * std::exp(cplx(expo, dot(z.x, atom.xi, d)));
    }
    return kappa * norm * acc;
}

GridSignal AnalyticRep::boundary_line(const Vec2& y, std::optional<Vec2> origin) const {
    const int d = dim;
    GridSignal weighted = freq;
    auto mul = [&](const Vec2& xi, cplx& v) {
        const double r = norm2(xi, d);
        v *= kappa * std::exp(-dot(y, xi, d) - log_I(d, r));
    };
    if (d == 1) {
        for (int i = 0; i < freq.n; ++i) mul(freq.point1(i), weighted.samples[i]);
    } else {
        for (int ix = 0; ix < freq.n; ++ix)
            for (int iy = 0; iy < freq.n; ++iy) mul(freq.point2(ix, iy), weighted.at(ix, iy));
    }
    GridSignal line = inverse_spectrum(weighted, origin);
    const double norm = std::pow(kTwoPi, -0.5 * d);
    for (const auto& atom : atoms) {
        const double r = norm2(atom.xi, d);
        const cplx coeff = kappa * norm * atom.mass * std::exp(-dot(y, atom.xi, d) - log_I(d, r));
        if (d == 1) {
            for (int i = 0; i < line.n; ++i)
                line.samples[i] += coeff * std::polar(1.0, line.coord(0, i) * atom.xi[0]);
        } else {
            for (int ix = 0; ix < line.n; ++ix)
                for (int iy = 0; iy < line.n; ++iy)
                    line.at(ix, iy) += coeff * std::polar(1.0, dot(line.point2(ix, iy), atom.xi, 2));
        }
    }
    return line;
}

AnalyticRep make_analytic_rep(const ModelDistribution& model, int n, double spacing) {
    if (!model.fourier && !model.custom_spectrum)
        throw std::invalid_argument("make_analytic_rep: model has no spectral representation");
    if (model.fourier && model.poly_m > 20)
        throw std::invalid_argument("make_analytic_rep: unbounded spectral growth rejected");

    const Vec2 x0{-(n / 2) * spacing, model.dim == 2 ? -(n / 2) * spacing : 0.0};
    GridSignal probe = GridSignal::make(model.dim, n, spacing, x0);
    AnalyticRep rep;
    rep.dim = model.dim;
    rep.freq = GridSignal::make(model.dim, n, probe.dual_spacing(), probe.dual_origin());
    if (model.custom_spectrum) {
        model.custom_spectrum(rep.freq);
    } else {
        if (model.dim == 1) {
            for (int i = 0; i < n; ++i) rep.freq.samples[i] = model.fourier(rep.freq.point1(i));
        } else {
            for (int ix = 0; ix < n; ++ix)
                for (int iy = 0; iy < n; ++iy)
                    rep.freq.at(ix, iy) = model.fourier(rep.freq.point2(ix, iy));
        }
        rep.atoms = model.atoms;
    }
    return rep;
}

AnalyticRep make_analytic_rep(const GridSignal& f) {
    AnalyticRep rep;
    rep.dim = f.dim;
    rep.freq = spectrum(f);
    return rep;
}

GrowthCertificate fit_growth_certificate(const AnalyticRep& rep, double max_gap, double min_gap) {
    // Log-spaced lattice in 1-|y|, a few x magnitudes across the grid.
    std::vector<double> gaps, xs;
    for (int i = 0; i < 7; ++i) gaps.push_back(min_gap * std::pow(max_gap / min_gap, i / 6.0));
    const double xmax = -rep.freq.n / 2 * (kTwoPi / (rep.freq.n * rep.freq.spacing));
    const double xspan = std::abs(xmax) * 0.8;
    for (int i = 0; i < 5; ++i) xs.push_back(xspan * i / 4.0);

    struct Sample {
        double lz, lg, lf;  // log(1+|z|), log(gap), log|F|
    };
    std::vector<Sample> train, validate;
    int idx = 0;
    for (double g : gaps)
        for (double x : xs) {
            TubePoint z;
            z.dim = rep.dim;
            z.x = {x, 0};
            z.y = {1.0 - g, 0};
            const double v = std::abs(rep.evaluate(z));
            if (!(v > 0)) continue;
            const double zn = std::hypot(std::hypot(x, 0.0), 1.0 - g);
            Sample s{std::log1p(zn), std::log(g), std::log(v)};
            ((idx++ % 2) == 0 ? train : validate).push_back(s);
        }

    // Least squares log|F| ~ logC + a log(1+|z|) - b log(gap), then push C up
    // to dominate the training half.
    double m[3][3] = {};
    double rhs[3] = {};
    for (const auto& s : train) {
        const double row[3] = {1.0, s.lz, -s.lg};
        for (int i = 0; i < 3; ++i) {
            rhs[i] += row[i] * s.lf;
            for (int j = 0; j < 3; ++j) m[i][j] += row[i] * row[j];
        }
    }
    // Solve the 3x3 normal equations by Gaussian elimination.
    double a[3][4];
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) a[i][j] = m[i][j];
        a[i][3] = rhs[i];
    }
    for (int c = 0; c < 3; ++c) {
        int piv = c;
        for (int r2 = c + 1; r2 < 3; ++r2)
            if (std::abs(a[r2][c]) > std::abs(a[piv][c])) piv = r2;
        std::swap(a[c], a[piv]);
        for (int r2 = 0; r2 < 3; ++r2) {
            if (r2 == c) continue;
            const double f = a[r2][c] / a[c][c];
            for (int j = c; j < 4; ++j) a[r2][j] -= f * a[c][j];
        }
    }
    const double log_c = a[0][3] / a[0][0];
    const double fit_a = a[1][3] / a[1][1];
    const double fit_b = a[2][3] / a[2][2];

    double log_c_max = log_c;
    for (const auto& s : train)
        log_c_max = std::max(log_c_max, s.lf - fit_a * s.lz + fit_b * s.lg);

    GrowthCertificate cert;
    cert.a = fit_a;
    cert.b = fit_b;
    cert.big_c = std::exp(log_c_max);
    cert.fitted = true;
    for (const auto& s : validate) {
        if (s.lf > log_c_max + std::log(1.10) + fit_a * s.lz - fit_b * s.lg) {
            cert.fitted = false;
            break;
        }
    }
    return cert;
}

SphereMeasure SphereMeasure::zero(int dim) {
    SphereMeasure mu;
    mu.dim = dim;
    return mu;
}

SphereMeasure SphereMeasure::full_uniform(int dim, int n) {
    SphereMeasure mu;
    mu.dim = dim;
    if (dim == 1) {
        mu.nodes = {{{1, 0}, 1.0}, {{-1, 0}, 1.0}};
    } else {
        mu.nodes.reserve(n);
        for (int k = 0; k < n; ++k) {
            const double th = kTwoPi * k / n;
            mu.nodes.push_back({{std::cos(th), std::sin(th)}, kTwoPi / n});
        }
    }
    return mu;
}

SphereMeasure SphereMeasure::point_mass(int dim, Vec2 dir, double mass) {
    SphereMeasure mu;
    mu.dim = dim;
    const double r = norm2(dir, dim);
    if (r == 0) throw std::invalid_argument("SphereMeasure: zero direction");
    mu.nodes = {{{dir[0] / r, dim == 2 ? dir[1] / r : 0.0}, mass}};
    return mu;
}

double SphereMeasure::total_mass() const {
    double s = 0;
    for (const auto& nd : nodes) s += nd.w;
    return s;
}

bool SphereMeasure::supports(const Vec2& dir, double angular_tol) const {
    const double r = norm2(dir, dim);
    if (r == 0) return false;
    for (const auto& nd : nodes) {
        if (nd.w == 0) continue;
        const double c = dot(nd.xi, dir, dim) / r;
        if (std::acos(std::clamp(c, -1.0, 1.0)) <= angular_tol) return true;
    }
    return false;
}

cplx reconstruct(const AnalyticRep& rep, const GridSignal& phi, double eps, int sphere_nodes) {
    check_eps(eps);
    if (phi.dim != rep.dim || phi.n != rep.freq.n)
        throw std::invalid_argument("reconstruct: test function grid mismatch");
    if (rep.dim == 2 && sphere_nodes < 256)
        throw std::invalid_argument("reconstruct: d=2 needs >= 256 sphere nodes");

    const SphereMeasure mu = SphereMeasure::full_uniform(rep.dim, sphere_nodes);
    const double measure = rep.dim == 2 ? phi.spacing * phi.spacing : phi.spacing;
    cplx acc = 0;
    for (const auto& nd : mu.nodes) {
        const Vec2 y{(1.0 - eps) * nd.xi[0], (1.0 - eps) * nd.xi[1]};
        GridSignal line = rep.boundary_line(y, phi.origin);
        cplx pairing = 0;
        for (std::size_t i = 0; i < line.samples.size(); ++i)
            pairing += line.samples[i] * phi.samples[i];
        acc += nd.w * pairing * measure;
    }
    return acc;
}

GridSignal average_over_sphere(const AnalyticRep& rep, const SphereMeasure& mu, double eps) {
    check_eps(eps);
    GridSignal out;
    bool first = true;
    for (const auto& nd : mu.nodes) {
        if (nd.w == 0) continue;
        const Vec2 y{(1.0 - eps) * nd.xi[0], (1.0 - eps) * nd.xi[1]};
        GridSignal line = rep.boundary_line(y);
        if (first) {
            out = line;
            for (auto& v : out.samples) v *= nd.w;
            first = false;
        } else {
            for (std::size_t i = 0; i < out.samples.size(); ++i)
                out.samples[i] += nd.w * line.samples[i];
        }
    }
    if (first) {
        // Zero measure: zero signal on the representative's natural grid.
        out = rep.boundary_line({0, 0});
        for (auto& v : out.samples) v = 0;
    }
    return out;
}

HalfTubeSplit half_tube_split(const GridSignal& f, const Localizer& chi,
                              const std::function<bool(const Vec2&)>& in_M, double eps,
                              int sphere_nodes) {
    check_eps(eps);
    GridSignal v = localize(f, chi);
    AnalyticRep rep = make_analytic_rep(v);

    const SphereMeasure mu = SphereMeasure::full_uniform(f.dim, sphere_nodes);
    HalfTubeSplit split;
    split.v1 = v;
    split.boundary_part = v;
    for (auto& s : split.v1.samples) s = 0;
    for (auto& s : split.boundary_part.samples) s = 0;

    int in_count = 0;
    for (const auto& nd : mu.nodes) {
        const Vec2 y{(1.0 - eps) * nd.xi[0], (1.0 - eps) * nd.xi[1]};
        GridSignal line = rep.boundary_line(y, v.origin);
        const Vec2 minus_xi{-nd.xi[0], -nd.xi[1]};
        GridSignal& target = in_M(minus_xi) ? (++in_count, split.boundary_part) : split.v1;
        for (std::size_t i = 0; i < target.samples.size(); ++i)
            target.samples[i] += nd.w * line.samples[i];
    }
    split.degenerate = (in_count == 0) || (in_count == static_cast<int>(mu.nodes.size()));
    return split;
}

}  // namespace tubewf
