#include "tubewf/grid_signal.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "tubewf/fft.hpp"

namespace tubewf {

namespace {
constexpr double kPi = std::numbers::pi;

bool power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }
}  // namespace

double norm2(const Vec2& v, int dim) {
    double s = v[0] * v[0];
    if (dim == 2) s += v[1] * v[1];
    return std::sqrt(s);
}

double dot(const Vec2& a, const Vec2& b, int dim) {
    double s = a[0] * b[0];
    if (dim == 2) s += a[1] * b[1];
    return s;
}

GridSignal GridSignal::make(int dim, int n, double spacing, Vec2 origin) {
    if (dim != 1 && dim != 2) throw std::invalid_argument("GridSignal: dim must be 1 or 2");
    if (!power_of_two(n)) throw std::invalid_argument("GridSignal: n must be a power of two");
    if (!(spacing > 0)) throw std::invalid_argument("GridSignal: spacing must be positive");
    GridSignal f;
    f.dim = dim;
    f.n = n;
    f.spacing = spacing;
    f.origin = origin;
    f.samples.assign(dim == 2 ? static_cast<std::size_t>(n) * n : n, cplx{0, 0});
    return f;
}

double GridSignal::nyquist() const { return kPi / spacing; }

double GridSignal::dual_spacing() const { return 2.0 * kPi / (n * spacing); }

Vec2 GridSignal::dual_origin() const {
    const double o = -(n / 2) * dual_spacing();
    return {o, dim == 2 ? o : 0.0};
}

Vec2 GridSignal::centered_origin() const {
    const double o = -(n / 2) * spacing;
    return {o, dim == 2 ? o : 0.0};
}

double GridSignal::l2() const {
    double s = 0;
    for (const auto& v : samples) s += std::norm(v);
    const double measure = dim == 2 ? spacing * spacing : spacing;
    return std::sqrt(s * measure);
}

double GridSignal::max_abs() const {
    double m = 0;
    for (const auto& v : samples) m = std::max(m, std::abs(v));
    return m;
}

GridSignal spectrum(const GridSignal& f) {
    GridSignal out = GridSignal::make(f.dim, f.n, f.dual_spacing(), f.dual_origin());
    const int n = f.n;
    std::vector<cplx> work(f.samples);
    if (f.dim == 1) {
        fft::dft_1d(work.data(), n, -1);
        const double scale = f.spacing * std::pow(2.0 * kPi, -0.5);
        for (int m = 0; m < n; ++m) {
            const double xi = out.coord(0, m);
            const int k = (m + n / 2) % n;  // DFT index of frequency (m - n/2)
            out.samples[m] = scale * std::polar(1.0, -f.origin[0] * xi) * work[k];
        }
    } else {
        fft::dft_2d(work.data(), n, n, -1);
        const double scale = f.spacing * f.spacing / (2.0 * kPi);
        for (int mx = 0; mx < n; ++mx) {
            const double xix = out.coord(0, mx);
            const int kx = (mx + n / 2) % n;
            for (int my = 0; my < n; ++my) {
                const double xiy = out.coord(1, my);
                const int ky = (my + n / 2) % n;
                out.samples[static_cast<std::size_t>(mx) * n + my] =
                    scale * std::polar(1.0, -(f.origin[0] * xix + f.origin[1] * xiy)) *
                    work[static_cast<std::size_t>(kx) * n + ky];
            }
        }
    }
    return out;
}

GridSignal inverse_spectrum(const GridSignal& g, std::optional<Vec2> origin) {
    const int n = g.n;
    const double dx = 2.0 * kPi / (n * g.spacing);
    Vec2 x0 = origin.value_or(Vec2{-(n / 2) * dx, g.dim == 2 ? -(n / 2) * dx : 0.0});
    GridSignal out = GridSignal::make(g.dim, n, dx, x0);

    // Undo the spectrum() scaling, then run the backward DFT (1/n^d folded in).
    std::vector<cplx> work(g.samples.size());
    if (g.dim == 1) {
        const double scale = std::pow(2.0 * kPi, 0.5) / (dx * n);
        for (int m = 0; m < n; ++m) {
            const double xi = g.coord(0, m);
            const int k = (m + n / 2) % n;
            work[k] = scale * std::polar(1.0, x0[0] * xi) * g.samples[m];
        }
        fft::dft_1d(work.data(), n, +1);
    } else {
        const double scale = (2.0 * kPi) / (dx * dx * static_cast<double>(n) * n);
        for (int mx = 0; mx < n; ++mx) {
            const double xix = g.coord(0, mx);
            const int kx = (mx + n / 2) % n;
            for (int my = 0; my < n; ++my) {
                const double xiy = g.coord(1, my);
                const int ky = (my + n / 2) % n;
                work[static_cast<std::size_t>(kx) * n + ky] =
                    scale * std::polar(1.0, x0[0] * xix + x0[1] * xiy) *
                    g.samples[static_cast<std::size_t>(mx) * n + my];
            }
        }
        fft::dft_2d(work.data(), n, n, +1);
    }
    out.samples = std::move(work);
    return out;
}

}  // namespace tubewf
