#include "tubewf/wavefront.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "tubewf/io.hpp"
#include "tubewf/kernel.hpp"
#include "tubewf/parallel.hpp"

namespace tubewf {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * kPi;

double ls_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
    const double n = static_cast<double>(xs.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::Regular: return "REGULAR";
        case Verdict::InWf: return "IN_WF";
        default: return "INCONCLUSIVE";
    }
}

DetectorParams DetectorParams::resolved(int dim, double grid_spacing, double nyquist) const {
    DetectorParams p = *this;
    if (p.bins <= 0) p.bins = dim == 1 ? 2 : 16;
    if (p.localizer_inner < 0) p.localizer_inner = 8 * grid_spacing;
    if (p.localizer_outer < 0) p.localizer_outer = 24 * grid_spacing;
    if (p.j_min < 0)
        p.j_min = std::max(2, static_cast<int>(std::ceil(std::log2(1.0 / p.localizer_inner))));
    if (p.j_max < 0) p.j_max = static_cast<int>(std::floor(std::log2(nyquist))) - 1;
    if (p.j_max < p.j_min + 1) p.j_max = p.j_min + 1;
    return p;
}

std::vector<Vec2> default_bin_axes(int dim, int bins) {
    std::vector<Vec2> axes;
    if (dim == 1) {
        axes = {{1, 0}, {-1, 0}};
    } else {
        axes.reserve(bins);
        for (int b = 0; b < bins; ++b) {
            const double th = kTwoPi * b / bins;
            axes.push_back({std::cos(th), std::sin(th)});
        }
    }
    return axes;
}

double bin_half_width(int dim, int bins) { return dim == 1 ? kPi / 2 : kPi / bins; }

BinVerdict& WfReport::at(std::size_t point, std::size_t bin) {
    return cells[point * bin_axes.size() + bin];
}
const BinVerdict& WfReport::at(std::size_t point, std::size_t bin) const {
    return cells[point * bin_axes.size() + bin];
}

std::vector<double> cone_norm_profile(const GridSignal& f, const Vec2& x0, const Cone& cone,
                                      const SpaceDescriptor& sp, const Localizer& w,
                                      int j_min, int j_max, bool* truncated) {
    Localizer loc = w;
    if (!loc.identity) loc.center = x0;
    GridSignal g = spectrum(localize(f, loc));
    std::vector<double> table;
    table.reserve(j_max - j_min + 1);
    bool trunc = false;
    for (int j = j_min; j <= j_max; ++j) {
        const double lo = std::pow(2.0, j), hi = std::pow(2.0, j + 1);
        if (hi > g.nyquist()) trunc = true;
        RegionMask mask;
        mask.cone = cone;
        mask.annulus = {lo, hi};
        table.push_back(weighted_norm(g, sp, mask));
    }
    if (truncated) *truncated = trunc;
    return table;
}

BinVerdict verdict_from_annuli(const std::vector<double>& annuli, int j_min, bool truncated,
                               const SpaceDescriptor& sp, int dim, const DetectorParams& p,
                               double global_scale) {
    BinVerdict out;
    out.annulus_norms = annuli;
    out.j_min = j_min;
    out.truncated = truncated;
    const double offset = sp.integrability_offset(dim);
    out.tau = -offset;

    double table_max = 0;
    for (double a : annuli) table_max = std::max(table_max, a);
    const double scale = std::max(global_scale, table_max);
    const double floor_v = scale * p.zero_floor_rel;

    auto regular_sentinel = [&]() {
        out.alpha = -999;
        out.margin_dist = out.alpha - out.tau;
        out.converged = true;
        out.verdict = Verdict::Regular;
        return out;
    };

    // Below the representation noise floor: spectrum numerically absent here.
    if (!(table_max > floor_v) || !(table_max > 0)) return regular_sentinel();

    std::vector<double> js, logs;
    const int n_complete = static_cast<int>(annuli.size()) - (truncated ? 1 : 0);
    for (int i = 0; i < n_complete; ++i) {
        if (annuli[i] > std::max(floor_v, table_max * 1e-13)) {
            js.push_back(j_min + i);
            logs.push_back(std::log2(annuli[i]));
        }
    }
    // A slope needs at least two annuli of genuine content.
    if (js.size() < 2) return regular_sentinel();

    const double slope = ls_slope(js, logs);
    out.alpha = slope - offset;
    out.margin_dist = out.alpha - out.tau;

    // Cumulative-norm convergence: either the tail ratio of the last two
    // partial sums stabilizes, or the decay rate clears the margin twice over
    // with a monotone tail (slowly converging norms, e.g. a 1/xi spectrum at
    // s=0, never reach the raw tail tolerance on a desk-scale grid).
    bool tail_ok;
    if (std::isinf(sp.p) || (sp.q && std::isinf(*sp.q))) {
        double run = 0, prev = 0;
        for (int i = 0; i < n_complete; ++i) {
            prev = run;
            run = std::max(run, annuli[i]);
        }
        tail_ok = prev > 0 && run / prev <= 1.0 + p.convergence_tol;
    } else {
        const double pp = sp.q ? *sp.q : sp.p;  // outer exponent drives the sum
        double run = 0, prev = 0;
        for (int i = 0; i < n_complete; ++i) {
            prev = run;
            run += std::pow(annuli[i], pp);
        }
        tail_ok = prev > 0 && std::pow(run / prev, 1.0 / pp) <= 1.0 + p.convergence_tol;
    }
    bool trend_ok = out.alpha <= out.tau - 2.0 * p.margin;
    if (trend_ok && n_complete >= 3) {
        for (int i = n_complete - 2; i < n_complete; ++i)
            if (annuli[i] > annuli[i - 1] * (1.0 + 1e-9) && annuli[i] > floor_v) trend_ok = false;
    }
    out.converged = tail_ok || trend_ok;

    if (out.alpha > out.tau + p.margin)
        out.verdict = Verdict::InWf;
    else if (out.alpha < out.tau - p.margin && out.converged)
        out.verdict = Verdict::Regular;
    else
        out.verdict = Verdict::Inconclusive;
    return out;
}

namespace {

// Largest full-sphere annulus norm of the raw spectrum: the reference scale
// for the representation noise floor.
double signal_scale(const GridSignal& fhat, const SpaceDescriptor& sp, int j_min, int j_max) {
    double best = 0;
    for (int j = j_min; j <= j_max; ++j) {
        RegionMask mask;
        mask.annulus = {std::pow(2.0, j), std::pow(2.0, j + 1)};
        best = std::max(best, weighted_norm(fhat, sp, mask));
    }
    return best;
}

}  // namespace

namespace {

// Fused per-base-point accumulation: one pass over the spectrum fills the
// (bin, annulus) tables for all overlapping detection cones at once. Only for
// plain (non-mixed) exponents; mixed norms fall back to cone_norm_profile.
struct AnnulusTables {
    std::vector<std::vector<double>> per_bin;  // accumulators
    double global_scale = 0;
};

AnnulusTables accumulate_tables(const GridSignal& ghat, const std::vector<Vec2>& axes,
                                double cone_half_angle, const SpaceDescriptor& sp, int j_min,
                                int j_max) {
    const int dim = ghat.dim;
    const int nj = j_max - j_min + 1;
    const bool sup = std::isinf(sp.p);
    AnnulusTables tab;
    tab.per_bin.assign(axes.size(), std::vector<double>(nj, 0.0));

    const double cos_half = std::cos(cone_half_angle);
    auto feed = [&](const Vec2& xi, const cplx& v) {
        const double r = norm2(xi, dim);
        if (r <= 0) return;
        const int j = static_cast<int>(std::floor(std::log2(r)));
        if (j < j_min || j > j_max) return;
        const double t = std::abs(v) * sp.weight(xi, dim);
        if (t == 0) return;
        const double tp = sup ? t : std::pow(t, sp.p);
        for (std::size_t b = 0; b < axes.size(); ++b) {
            // Open cone: angle(xi, axis) < half_angle, via the cosine.
            if (dot(xi, axes[b], dim) / r <= cos_half) continue;
            double& cell = tab.per_bin[b][j - j_min];
            if (sup)
                cell = std::max(cell, tp);
            else
                cell += tp;
        }
    };
    if (dim == 1) {
        for (int i = 0; i < ghat.n; ++i) feed(ghat.point1(i), ghat.samples[i]);
    } else {
        for (int ix = 0; ix < ghat.n; ++ix)
            for (int iy = 0; iy < ghat.n; ++iy) feed(ghat.point2(ix, iy), ghat.at(ix, iy));
    }

    const double measure = dim == 2 ? ghat.spacing * ghat.spacing : ghat.spacing;
    for (auto& row : tab.per_bin)
        for (auto& cell : row) {
            if (!sup) cell = std::pow(cell * measure, 1.0 / sp.p);
            tab.global_scale = std::max(tab.global_scale, cell);
        }
    return tab;
}

}  // namespace

WfReport wf_detect(const GridSignal& f, const SpaceDescriptor& sp,
                   const std::vector<Vec2>& base_points, const DetectorParams& params) {
    const DetectorParams p = params.resolved(f.dim, f.spacing, f.nyquist());
    WfReport report;
    report.dim = f.dim;
    report.detector = "direct";
    report.space = sp;
    report.base_points = base_points;
    report.bin_axes = default_bin_axes(f.dim, p.bins);
    report.params = p;
    report.cells.resize(base_points.size() * report.bin_axes.size());

    const double half = p.cone_factor * bin_half_width(f.dim, p.bins);
    const bool fused = !sp.q;
    const double scale_f = signal_scale(spectrum(f), sp, p.j_min, p.j_max);

    parallel_for(base_points.size(), [&](std::size_t i) {
        const Localizer loc =
            Localizer::at(base_points[i], p.localizer_inner, p.localizer_outer, p.profile);
        if (fused) {
            GridSignal ghat = spectrum(localize(f, loc));
            AnnulusTables tab =
                accumulate_tables(ghat, report.bin_axes, half, sp, p.j_min, p.j_max);
            const double ref = std::max(tab.global_scale, scale_f);
            for (std::size_t b = 0; b < report.bin_axes.size(); ++b)
                report.at(i, b) =
                    verdict_from_annuli(tab.per_bin[b], p.j_min, false, sp, f.dim, p, ref);
        } else {
            double global_scale = scale_f;
            std::vector<std::vector<double>> tables(report.bin_axes.size());
            std::vector<bool> truncs(report.bin_axes.size());
            for (std::size_t b = 0; b < report.bin_axes.size(); ++b) {
                Cone cone;
                cone.dim = f.dim;
                cone.axis = report.bin_axes[b];
                cone.half_angle = half;
                bool trunc = false;
                tables[b] =
                    cone_norm_profile(f, base_points[i], cone, sp, loc, p.j_min, p.j_max, &trunc);
                truncs[b] = trunc;
                for (double a : tables[b]) global_scale = std::max(global_scale, a);
            }
            for (std::size_t b = 0; b < report.bin_axes.size(); ++b)
                report.at(i, b) = verdict_from_annuli(tables[b], p.j_min, truncs[b], sp, f.dim, p,
                                                      global_scale);
        }
    });
    return report;
}

std::vector<Vec2> singular_support(const WfReport& report) {
    std::vector<Vec2> points;
    for (std::size_t i = 0; i < report.base_points.size(); ++i) {
        for (std::size_t b = 0; b < report.bin_axes.size(); ++b) {
            if (report.at(i, b).verdict == Verdict::InWf) {
                points.push_back(report.base_points[i]);
                break;
            }
        }
    }
    return points;
}

std::vector<Verdict> direction_free_scan(const GridSignal& f, const SpaceDescriptor& sp,
                                         const std::vector<Vec2>& base_points,
                                         const DetectorParams& params) {
    const DetectorParams p = params.resolved(f.dim, f.spacing, f.nyquist());
    const double scale_f = signal_scale(spectrum(f), sp, p.j_min, p.j_max);
    std::vector<Verdict> out(base_points.size());
    parallel_for(base_points.size(), [&](std::size_t i) {
        const Localizer loc =
            Localizer::at(base_points[i], p.localizer_inner, p.localizer_outer, p.profile);
        bool trunc = false;
        auto table = cone_norm_profile(f, base_points[i], Cone::full(f.dim), sp, loc, p.j_min,
                                       p.j_max, &trunc);
        out[i] = verdict_from_annuli(table, p.j_min, trunc, sp, f.dim, p, scale_f).verdict;
    });
    return out;
}

WfReport wf_detect_inf(const GridSignal& f, const std::vector<SpaceDescriptor>& family,
                       const std::vector<Vec2>& base_points, const DetectorParams& params) {
    if (family.empty()) throw std::invalid_argument("wf_detect_inf: empty family");
    std::vector<WfReport> members;
    members.reserve(family.size());
    for (const auto& sp : family) members.push_back(wf_detect(f, sp, base_points, params));

    WfReport report = members.front();
    report.detector = "inf";
    for (std::size_t c = 0; c < report.cells.size(); ++c) {
        bool any_inconclusive = false, all_in = true;
        for (const auto& m : members) {
            if (m.cells[c].verdict == Verdict::Inconclusive) any_inconclusive = true;
            if (m.cells[c].verdict != Verdict::InWf) all_in = false;
        }
        report.cells[c].verdict = any_inconclusive ? Verdict::Inconclusive
                                  : all_in         ? Verdict::InWf
                                                   : Verdict::Regular;
    }
    return report;
}

StftResult stft(const GridSignal& f, double window_sigma, const std::vector<Vec2>& x_points) {
    if (!(window_sigma > 0)) throw std::invalid_argument("stft: window width must be positive");
    if (8.0 * window_sigma > 0.5 * f.extent())
        throw std::invalid_argument("stft: window wider than half the grid");

    StftResult out;
    out.x_points = x_points;
    out.freq_template = GridSignal::make(f.dim, f.n, f.dual_spacing(), f.dual_origin());
    out.values.resize(x_points.size());
    parallel_for(x_points.size(), [&](std::size_t i) {
        GridSignal g = f;
        const Vec2& x = x_points[i];
        if (f.dim == 1) {
            for (int k = 0; k < f.n; ++k) {
                const double d = f.coord(0, k) - x[0];
                g.samples[k] *= std::exp(-d * d / (2.0 * window_sigma * window_sigma));
            }
        } else {
            for (int kx = 0; kx < f.n; ++kx)
                for (int ky = 0; ky < f.n; ++ky) {
                    const double dx = f.coord(0, kx) - x[0];
                    const double dy = f.coord(1, ky) - x[1];
                    g.at(kx, ky) *=
                        std::exp(-(dx * dx + dy * dy) / (2.0 * window_sigma * window_sigma));
                }
        }
        out.values[i] = spectrum(g).samples;
    });
    return out;
}

WfReport wf_detect_modulation(const GridSignal& f, const SpaceDescriptor& sp,
                              const std::vector<Vec2>& base_points,
                              const DetectorParams& params) {
    const DetectorParams p = params.resolved(f.dim, f.spacing, f.nyquist());
    WfReport report;
    report.dim = f.dim;
    report.detector = "modulation";
    report.space = sp;
    report.base_points = base_points;
    report.bin_axes = default_bin_axes(f.dim, p.bins);
    report.params = p;
    report.cells.resize(base_points.size() * report.bin_axes.size());

    const double half = p.cone_factor * bin_half_width(f.dim, p.bins);
    const double sigma = p.localizer_inner;   // STFT window matched to the localizer
    const double step = 0.5 * p.localizer_inner;
    const bool sup = std::isinf(sp.p);
    if (sp.q) throw std::invalid_argument("wf_detect_modulation: mixed norms not supported");
    const double scale_f = signal_scale(spectrum(f), sp, p.j_min, p.j_max);

    parallel_for(base_points.size(), [&](std::size_t i) {
        const Vec2& x0 = base_points[i];
        const Localizer loc = Localizer::at(x0, p.localizer_inner, p.localizer_outer, p.profile);
        GridSignal g = localize(f, loc);

        std::vector<Vec2> xs;
        if (f.dim == 1) {
            for (int k = -2; k <= 2; ++k) xs.push_back({x0[0] + k * step, 0});
        } else {
            xs.push_back(x0);
            for (int k : {-1, 1}) {
                xs.push_back({x0[0] + k * step, x0[1]});
                xs.push_back({x0[0], x0[1] + k * step});
            }
        }
        StftResult v = stft(g, sigma, xs);

        const int nj = p.j_max - p.j_min + 1;
        std::vector<std::vector<double>> acc(report.bin_axes.size(),
                                             std::vector<double>(nj, 0.0));
        const double cos_half = std::cos(half);
        const GridSignal& ft = v.freq_template;
        for (const auto& row : v.values) {
            auto feed = [&](const Vec2& xi, const cplx& val) {
                const double r = norm2(xi, f.dim);
                if (r <= 0) return;
                const int j = static_cast<int>(std::floor(std::log2(r)));
                if (j < p.j_min || j > p.j_max) return;
                const double t = std::abs(val) * sp.weight(xi, f.dim);
                if (t == 0) return;
                const double tp = sup ? t : std::pow(t, sp.p);
                for (std::size_t b = 0; b < report.bin_axes.size(); ++b) {
                    if (dot(xi, report.bin_axes[b], f.dim) / r <= cos_half) continue;
                    double& cell = acc[b][j - p.j_min];
                    if (sup)
                        cell = std::max(cell, tp);
                    else
                        cell += tp;
                }
            };
            if (f.dim == 1) {
                for (int k = 0; k < ft.n; ++k) feed(ft.point1(k), row[k]);
            } else {
                for (int kx = 0; kx < ft.n; ++kx)
                    for (int ky = 0; ky < ft.n; ++ky)
                        feed(ft.point2(kx, ky), row[static_cast<std::size_t>(kx) * ft.n + ky]);
            }
        }
        const double measure =
            (f.dim == 2 ? ft.spacing * ft.spacing : ft.spacing) * std::pow(step, f.dim);
        double global_scale = scale_f;
        for (auto& rowacc : acc)
            for (auto& cell : rowacc) {
                if (!sup) cell = std::pow(cell * measure, 1.0 / sp.p);
                global_scale = std::max(global_scale, cell);
            }
        for (std::size_t b = 0; b < report.bin_axes.size(); ++b)
            report.at(i, b) =
                verdict_from_annuli(acc[b], p.j_min, false, sp, f.dim, p, global_scale);
    });
    return report;
}

namespace {

GridSignal tube_windowed_spectrum(const GridSignal& line, const Localizer& loc, int dim) {
    GridSignal ghat = spectrum(localize(line, loc));
    // Frequencies near the representative's band edge carry truncation
    // artifacts that the e^{(r-1)|eta|} multiplier no longer suppresses at
    // large k; cap the norm well below the band edge (the genuine amplified
    // content lives at |eta| <= 2^k anyway).
    const double cap = 0.6 * std::abs(ghat.origin[0]);
    auto weight = [&](const Vec2& eta, cplx& v) {
        const double r = norm2(eta, dim);
        if (r > cap) {
            v = 0;
        } else if (dim == 2) {
            // The half-tube multiplier carries a (1+|eta|)^{(d-1)/2}
            // (2pi)^{-(d-1)/2} factor relative to the raw spectrum; divide it
            // out so rates match the direct detector.
            v *= std::sqrt(kTwoPi / (1.0 + r));
        }
    };
    if (dim == 1) {
        for (int i = 0; i < ghat.n; ++i) weight(ghat.point1(i), ghat.samples[i]);
    } else {
        for (int ix = 0; ix < ghat.n; ++ix)
            for (int iy = 0; iy < ghat.n; ++iy) weight(ghat.point2(ix, iy), ghat.at(ix, iy));
    }
    return ghat;
}

double tube_norm(const GridSignal& line, const Localizer& loc, const SpaceDescriptor& sp,
                 int dim) {
    return weighted_norm(tube_windowed_spectrum(line, loc, dim), sp);
}

Verdict tube_verdict(const std::vector<double>& norms, int k_min, const DetectorParams& p,
                     double* lambda_out) {
    double max_n = 0;
    for (double v : norms) max_n = std::max(max_n, v);
    if (!(max_n > 0)) {
        if (lambda_out) *lambda_out = -999;
        return Verdict::Regular;
    }
    std::vector<double> ks, logs;
    for (std::size_t i = 1; i < norms.size(); ++i) {  // skip the first k (transition regime)
        if (norms[i] > max_n * 1e-13) {
            ks.push_back(k_min + static_cast<double>(i));
            logs.push_back(std::log2(norms[i]));
        }
    }
    if (ks.size() < 2) {
        if (lambda_out) *lambda_out = -999;
        return Verdict::Regular;
    }
    const double lambda = ls_slope(ks, logs);
    if (lambda_out) *lambda_out = lambda;
    const double last = norms.back(), prev = norms[norms.size() - 2];
    const bool bounded = prev > 0 && last / prev <= 1.0 + p.tube_convergence_tol;
    if (lambda > p.margin) return Verdict::InWf;
    if (bounded) return Verdict::Regular;
    return Verdict::Inconclusive;
}

}  // namespace

TubeMembership tube_membership(const AnalyticRep& F, const Vec2& x, const Vec2& xi,
                               const SpaceDescriptor& sp, const DetectorParams& params) {
    if (std::abs(norm2(xi, F.dim) - 1.0) > 1e-9)
        throw std::invalid_argument("tube_membership: |xi| must be 1");
    if (params.localizer_inner <= 0 || params.localizer_outer <= 0)
        throw std::invalid_argument("tube_membership: localizer radii must be set explicitly");

    const double nyq = -F.freq.origin[0];
    DetectorParams p = params;
    if (p.tube_k_max < 0) p.tube_k_max = static_cast<int>(std::floor(std::log2(nyq))) - 1;

    const Localizer loc = Localizer::at(x, p.localizer_inner, p.localizer_outer, p.profile);
    TubeMembership result;
    result.k_min = p.tube_k_min;
    for (int k = p.tube_k_min; k <= p.tube_k_max; ++k) {
        const double r = 1.0 - std::pow(2.0, -k);
        const Vec2 y{-r * xi[0], -r * xi[1]};
        GridSignal line = F.boundary_line(y);
        result.norms.push_back(tube_norm(line, loc, sp, F.dim));
    }
    result.verdict = tube_verdict(result.norms, p.tube_k_min, p, &result.lambda);
    return result;
}

WfReport wf_detect_tube(const AnalyticRep& F, const SpaceDescriptor& sp,
                        const std::vector<Vec2>& base_points, const DetectorParams& params) {
    return wf_detect_tube_multi(F, {sp}, base_points, params).front();
}

std::vector<WfReport> wf_detect_tube_multi(const AnalyticRep& F,
                                           const std::vector<SpaceDescriptor>& spaces,
                                           const std::vector<Vec2>& base_points,
                                           const DetectorParams& params) {
    if (spaces.empty()) throw std::invalid_argument("wf_detect_tube_multi: no spaces");
    if (params.localizer_inner <= 0 || params.localizer_outer <= 0)
        throw std::invalid_argument("wf_detect_tube: localizer radii must be set explicitly");
    const double nyq = -F.freq.origin[0];
    DetectorParams p = params;
    if (p.bins <= 0) p.bins = F.dim == 1 ? 2 : 16;
    if (p.tube_k_max < 0) p.tube_k_max = static_cast<int>(std::floor(std::log2(nyq))) - 1;

    std::vector<WfReport> reports(spaces.size());
    for (std::size_t s = 0; s < spaces.size(); ++s) {
        reports[s].dim = F.dim;
        reports[s].detector = "tube";
        reports[s].space = spaces[s];
        reports[s].base_points = base_points;
        reports[s].bin_axes = default_bin_axes(F.dim, p.bins);
        reports[s].params = p;
        reports[s].cells.resize(base_points.size() * reports[s].bin_axes.size());
    }
    const auto axes = default_bin_axes(F.dim, p.bins);

    const int nk = p.tube_k_max - p.tube_k_min + 1;
    parallel_for(axes.size(), [&](std::size_t b) {
        const Vec2& xi = axes[b];
        // norms[space][point][k]
        std::vector<std::vector<std::vector<double>>> norms(
            spaces.size(),
            std::vector<std::vector<double>>(base_points.size(), std::vector<double>(nk)));
        for (int k = p.tube_k_min; k <= p.tube_k_max; ++k) {
            const double r = 1.0 - std::pow(2.0, -k);
            const Vec2 y{-r * xi[0], -r * xi[1]};
            GridSignal line = F.boundary_line(y);
            for (std::size_t i = 0; i < base_points.size(); ++i) {
                const Localizer loc = Localizer::at(base_points[i], p.localizer_inner,
                                                    p.localizer_outer, p.profile);
                GridSignal ghat = tube_windowed_spectrum(line, loc, F.dim);
                for (std::size_t s = 0; s < spaces.size(); ++s)
                    norms[s][i][k - p.tube_k_min] = weighted_norm(ghat, spaces[s]);
            }
        }
        for (std::size_t s = 0; s < spaces.size(); ++s) {
            for (std::size_t i = 0; i < base_points.size(); ++i) {
                BinVerdict& cell = reports[s].at(i, b);
                cell.annulus_norms = norms[s][i];
                cell.j_min = p.tube_k_min;
                double lambda = 0;
                cell.verdict = tube_verdict(norms[s][i], p.tube_k_min, p, &lambda);
                cell.tau = spaces[s].tau(F.dim);
                cell.alpha = cell.tau + lambda;  // lambda measures the divergence strength
                cell.margin_dist = lambda;
                cell.converged = cell.verdict != Verdict::Inconclusive;
            }
        }
    });
    return reports;
}

std::string report_to_csv(const WfReport& report) {
    std::ostringstream out;
    out << io::kCsvVersionLine << "\n";
    out << "# detector=" << report.detector << " space=" << report.space.str()
        << " bins=" << report.bin_axes.size() << " base-points=" << report.base_points.size()
        << "\n";
    out << (report.dim == 1 ? "x" : "x,y") << ",bin-axis-angle,alpha,tau,verdict,margin\n";
    for (std::size_t i = 0; i < report.base_points.size(); ++i) {
        for (std::size_t b = 0; b < report.bin_axes.size(); ++b) {
            const auto& cell = report.at(i, b);
            const Vec2& axis = report.bin_axes[b];
            const double angle = std::atan2(report.dim == 1 ? 0.0 : axis[1], axis[0]);
            out << io::format_double(report.base_points[i][0]);
            if (report.dim == 2) out << "," << io::format_double(report.base_points[i][1]);
            out << "," << io::format_double(angle * 180.0 / kPi) << ","
                << io::format_double(cell.alpha) << "," << io::format_double(cell.tau) << ","
                << to_string(cell.verdict) << "," << io::format_double(cell.margin_dist) << "\n";
        }
    }
    return out.str();
}

}  // namespace tubewf
