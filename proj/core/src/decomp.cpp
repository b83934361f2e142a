#include "tubewf/decomp.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "tubewf/kernel.hpp"
#include "tubewf/tube.hpp"

namespace tubewf {

namespace {

void check_cover(const GridSignal& f, const ConeCover& cover) {
    if (cover.dim != f.dim) throw std::invalid_argument("cone cover dimension mismatch");
    if (cover.cones.empty()) throw std::invalid_argument("empty cone cover");
    if (auto gap = cover.uncovered_direction()) {
        std::ostringstream msg;
        msg << "cone cover misses direction (" << (*gap)[0];
        if (f.dim == 2) msg << ", " << (*gap)[1];
        msg << ")";
        throw std::invalid_argument(msg.str());
    }
}

// Partition index per frequency bin; DC goes to cone 0.
int cell_of(const ConeCover& cover, const Vec2& xi, int dim) {
    if (norm2(xi, dim) == 0) return 0;
    const int j = cover.first_containing(xi);
    return j < 0 ? 0 : j;  // covered by check_cover; <0 unreachable
}

}  // namespace

std::vector<GridSignal> cone_decompose(const GridSignal& f, const ConeCover& cover) {
    check_cover(f, cover);
    GridSignal fhat = spectrum(f);
    const int m = static_cast<int>(cover.cones.size());

    std::vector<GridSignal> masked(m, fhat);
    for (auto& g : masked)
        for (auto& v : g.samples) v = 0;

    auto assign = [&](const Vec2& xi, std::size_t idx) {
        const int j = cell_of(cover, xi, f.dim);
        masked[j].samples[idx] = fhat.samples[idx];
    };
    if (f.dim == 1) {
        for (int i = 0; i < fhat.n; ++i) assign(fhat.point1(i), i);
    } else {
        for (int ix = 0; ix < fhat.n; ++ix)
            for (int iy = 0; iy < fhat.n; ++iy)
                assign(fhat.point2(ix, iy), static_cast<std::size_t>(ix) * fhat.n + iy);
    }

    std::vector<GridSignal> parts;
    parts.reserve(m);
    for (const auto& g : masked) parts.push_back(inverse_spectrum(g, f.origin));
    return parts;
}

std::vector<GridSignal> cone_decompose_boundary(const GridSignal& f, const ConeCover& cover,
                                                double eps) {
    check_cover(f, cover);
    if (!(eps > 0) || !(eps < 0.5)) throw std::invalid_argument("eps must lie in (0, 0.5)");
    const int m = static_cast<int>(cover.cones.size());
    AnalyticRep rep = make_analytic_rep(f);

    const SphereMeasure mu = SphereMeasure::full_uniform(f.dim, 256);
    std::vector<GridSignal> parts(m, f);
    for (auto& g : parts)
        for (auto& v : g.samples) v = 0;

    // f_j = int F(. - i xi) phi_j(xi) dxi at radius 1-eps; the node set is the
    // same sphere quadrature for every cone so the parts resum to the
    // full-sphere reconstruction.
    for (const auto& nd : mu.nodes) {
        const int j = cell_of(cover, nd.xi, f.dim);
        const Vec2 y{-(1.0 - eps) * nd.xi[0], -(1.0 - eps) * nd.xi[1]};
        GridSignal line = rep.boundary_line(y, f.origin);
        for (std::size_t i = 0; i < line.samples.size(); ++i)
            parts[j].samples[i] += nd.w * line.samples[i];
    }
    return parts;
}

DefectTable decomposition_defect(const GridSignal& f, const ConeCover& cover,
                                 const std::vector<GridSignal>& alt) {
    check_cover(f, cover);
    const int m = static_cast<int>(cover.cones.size());
    if (static_cast<int>(alt.size()) != m)
        throw std::invalid_argument("decomposition_defect: alt size mismatch");

    // alt must resum to f.
    GridSignal sum = alt[0];
    for (int j = 1; j < m; ++j)
        for (std::size_t i = 0; i < sum.samples.size(); ++i)
            sum.samples[i] += alt[j].samples[i];
    double err = 0, scale = std::max(f.max_abs(), 1e-300);
    for (std::size_t i = 0; i < sum.samples.size(); ++i)
        err = std::max(err, std::abs(sum.samples[i] - f.samples[i]));
    if (err > 1e-8 * scale)
        throw std::invalid_argument("decomposition_defect: alt does not sum to f");

    std::vector<GridSignal> canonical = cone_decompose(f, cover);
    std::vector<GridSignal> d_hat;  // spectra of alt_j - f_j
    d_hat.reserve(m);
    for (int j = 0; j < m; ++j) {
        GridSignal diff = alt[j];
        for (std::size_t i = 0; i < diff.samples.size(); ++i)
            diff.samples[i] -= canonical[j].samples[i];
        d_hat.push_back(spectrum(diff));
    }

    auto masked = [&](const GridSignal& g, int cone_idx) {
        GridSignal out = g;
        auto apply = [&](const Vec2& xi, std::size_t idx) {
            if (cell_of(cover, xi, f.dim) != cone_idx) out.samples[idx] = 0;
        };
        if (f.dim == 1) {
            for (int i = 0; i < g.n; ++i) apply(g.point1(i), i);
        } else {
            for (int ix = 0; ix < g.n; ++ix)
                for (int iy = 0; iy < g.n; ++iy)
                    apply(g.point2(ix, iy), static_cast<std::size_t>(ix) * g.n + iy);
        }
        return out;
    };

    DefectTable table;
    table.m = m;
    GridSignal zero = f;
    for (auto& v : zero.samples) v = 0;
    table.cells.assign(static_cast<std::size_t>(m) * m, zero);
    for (int j = 0; j < m; ++j) {
        for (int k = j + 1; k < m; ++k) {
            GridSignal a = masked(d_hat[j], k);
            GridSignal b = masked(d_hat[k], j);
            for (std::size_t i = 0; i < a.samples.size(); ++i) a.samples[i] -= b.samples[i];
            GridSignal fjk = inverse_spectrum(a, f.origin);
            GridSignal fkj = fjk;
            for (auto& v : fkj.samples) v = -v;
            table.at(j, k) = std::move(fjk);
            table.at(k, j) = std::move(fkj);
        }
    }
    return table;
}

GridSignal project_integrate(const GridSignal& f, int axis) {
    if (f.dim != 2) throw std::invalid_argument("project_integrate: d=2 input required");
    if (axis != 0 && axis != 1) throw std::invalid_argument("project_integrate: axis in {0,1}");

    // Compact support in the integrated variable: the two boundary slabs must
    // be numerically empty.
    const double scale = std::max(f.max_abs(), 1e-300);
    double edge = 0;
    for (int k = 0; k < f.n; ++k) {
        if (axis == 0) {
            edge = std::max({edge, std::abs(f.at(0, k)), std::abs(f.at(f.n - 1, k))});
        } else {
            edge = std::max({edge, std::abs(f.at(k, 0)), std::abs(f.at(k, f.n - 1))});
        }
    }
    if (edge > 1e-8 * scale)
        throw std::invalid_argument("project_integrate: support touches the boundary in the integrated variable");

    const int keep = 1 - axis;
    GridSignal out = GridSignal::make(1, f.n, f.spacing, Vec2{f.origin[keep], 0});
    for (int i = 0; i < f.n; ++i) {
        cplx acc = 0;
        for (int k = 0; k < f.n; ++k) acc += (axis == 0) ? f.at(k, i) : f.at(i, k);
        out.samples[i] = acc * f.spacing;
    }
    return out;
}

}  // namespace tubewf
