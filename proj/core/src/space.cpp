#include "tubewf/space.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "tubewf/fft.hpp"

namespace tubewf {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double parse_exponent(const std::string& v) {
    if (v == "inf" || v == "Inf" || v == "INF") return kInf;
    return std::stod(v);
}

}  // namespace

SpaceDescriptor SpaceDescriptor::parse(std::string_view text) {
    std::string s(text);
    // Strip whitespace.
    s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }),
            s.end());
    if (s.rfind("FL(", 0) != 0 || s.back() != ')')
        throw std::invalid_argument("bad space descriptor (expected FL(p=..,s=..)): " + s);
    std::string body = s.substr(3, s.size() - 4);

    std::optional<double> p, q, w;
    std::istringstream items(body);
    std::string item;
    while (std::getline(items, item, ',')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("bad space descriptor field: " + item);
        const std::string key = item.substr(0, eq);
        const std::string val = item.substr(eq + 1);
        if (key == "p") p = parse_exponent(val);
        else if (key == "q") q = parse_exponent(val);
        else if (key == "s") w = std::stod(val);
        else throw std::invalid_argument("bad space descriptor key: " + key);
    }
    if (!p) throw std::invalid_argument("space descriptor needs p");

    SpaceDescriptor sp;
    sp.p = *p;
    sp.q = q;
    sp.weight = Weight(w.value_or(0.0));
    if (sp.p < 1 || (sp.q && *sp.q < 1))
        throw std::invalid_argument("space descriptor: exponents must be >= 1");
    return sp;
}

std::string SpaceDescriptor::str() const {
    std::ostringstream out;
    auto fmt = [](double e) -> std::string {
        if (std::isinf(e)) return "inf";
        std::ostringstream o;
        o << e;
        return o.str();
    };
    out << "FL(p=" << fmt(p);
    if (q) out << ",q=" << fmt(*q);
    out << ",s=" << weight.s << ")";
    return out.str();
}

double SpaceDescriptor::integrability_offset(int dim) const {
    double inv = std::isinf(p) ? 0.0 : 1.0 / p;
    double sum = inv * (q ? 1.0 : dim);
    if (q) sum += std::isinf(*q) ? 0.0 : 1.0 / *q;
    return weight.s + sum;
}

bool RegionMask::contains(const Vec2& xi, int dim) const {
    if (annulus) {
        const double r = norm2(xi, dim);
        if (r < annulus->first || r >= annulus->second) return false;
    }
    if (cone && !cone->contains(xi)) return false;
    return true;
}

namespace {

// Plain (non-mixed) accumulation.
double plain_norm(const GridSignal& g, const SpaceDescriptor& sp, const RegionMask& mask) {
    const int dim = g.dim;
    const double measure = dim == 2 ? g.spacing * g.spacing : g.spacing;
    const bool sup = std::isinf(sp.p);
    double acc = 0;
    auto feed = [&](const Vec2& xi, const cplx& v) {
        if (!mask.contains(xi, dim)) return;
        const double t = std::abs(v) * sp.weight(xi, dim);
        if (sup)
            acc = std::max(acc, t);
        else
            acc += std::pow(t, sp.p);
    };
    if (dim == 1) {
        for (int i = 0; i < g.n; ++i) feed(g.point1(i), g.samples[i]);
    } else {
        for (int ix = 0; ix < g.n; ++ix)
            for (int iy = 0; iy < g.n; ++iy)
                feed(g.point2(ix, iy), g.samples[static_cast<std::size_t>(ix) * g.n + iy]);
    }
    return sup ? acc : std::pow(acc * measure, 1.0 / sp.p);
}

// Mixed L^{p,q}: inner exponent p along axis 0, outer q along axis 1.
double mixed_norm(const GridSignal& g, const SpaceDescriptor& sp, const RegionMask& mask) {
    const double p = sp.p, q = *sp.q;
    const bool sup_p = std::isinf(p), sup_q = std::isinf(q);
    double outer = 0;
    for (int iy = 0; iy < g.n; ++iy) {
        double inner = 0;
        for (int ix = 0; ix < g.n; ++ix) {
            const Vec2 xi = g.point2(ix, iy);
            if (!mask.contains(xi, 2)) continue;
            const double t = std::abs(g.samples[static_cast<std::size_t>(ix) * g.n + iy]) *
                             sp.weight(xi, 2);
            if (sup_p)
                inner = std::max(inner, t);
            else
                inner += std::pow(t, p);
        }
        const double row = sup_p ? inner : std::pow(inner * g.spacing, 1.0 / p);
        if (sup_q)
            outer = std::max(outer, row);
        else
            outer += std::pow(row, q);
    }
    return sup_q ? outer : std::pow(outer * g.spacing, 1.0 / q);
}

GridSignal padded_linear_convolution(const GridSignal& a, const GridSignal& b) {
    const int n = a.n, n2 = 2 * n;
    GridSignal out = GridSignal::make(a.dim, n2, a.spacing,
                                      Vec2{a.origin[0] + b.origin[0],
                                           a.dim == 2 ? a.origin[1] + b.origin[1] : 0.0});
    const double measure = a.dim == 2 ? a.spacing * a.spacing : a.spacing;
    if (a.dim == 1) {
        std::vector<cplx> pa(n2, cplx{0, 0}), pb(n2, cplx{0, 0});
        std::copy(a.samples.begin(), a.samples.end(), pa.begin());
        std::copy(b.samples.begin(), b.samples.end(), pb.begin());
        fft::dft_1d(pa.data(), n2, -1);
        fft::dft_1d(pb.data(), n2, -1);
        for (int k = 0; k < n2; ++k) pa[k] *= pb[k];
        fft::dft_1d(pa.data(), n2, +1);
        for (int k = 0; k < n2; ++k) out.samples[k] = pa[k] * (measure / n2);
    } else {
        std::vector<cplx> pa(static_cast<std::size_t>(n2) * n2, cplx{0, 0}), pb(pa);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                pa[static_cast<std::size_t>(i) * n2 + j] = a.samples[static_cast<std::size_t>(i) * n + j];
                pb[static_cast<std::size_t>(i) * n2 + j] = b.samples[static_cast<std::size_t>(i) * n + j];
            }
        fft::dft_2d(pa.data(), n2, n2, -1);
        fft::dft_2d(pb.data(), n2, n2, -1);
        for (std::size_t k = 0; k < pa.size(); ++k) pa[k] *= pb[k];
        fft::dft_2d(pa.data(), n2, n2, +1);
        const double scale = measure / (static_cast<double>(n2) * n2);
        for (std::size_t k = 0; k < pa.size(); ++k) out.samples[k] = pa[k] * scale;
    }
    return out;
}

void require_same_grid(const GridSignal& a, const GridSignal& b) {
    if (a.dim != b.dim || a.n != b.n || a.spacing != b.spacing ||
        a.origin[0] != b.origin[0] || a.origin[1] != b.origin[1])
        throw std::invalid_argument("grid mismatch");
}

double weighted_l1(const GridSignal& g, const Weight& w) {
    const double measure = g.dim == 2 ? g.spacing * g.spacing : g.spacing;
    double acc = 0;
    if (g.dim == 1) {
        for (int i = 0; i < g.n; ++i) acc += std::abs(g.samples[i]) * w.v(g.point1(i), 1);
    } else {
        for (int ix = 0; ix < g.n; ++ix)
            for (int iy = 0; iy < g.n; ++iy)
                acc += std::abs(g.samples[static_cast<std::size_t>(ix) * g.n + iy]) *
                       w.v(g.point2(ix, iy), 2);
    }
    return acc * measure;
}

}  // namespace

double weighted_norm(const GridSignal& g, const SpaceDescriptor& sp, const RegionMask& mask) {
    if (sp.p < 1) throw std::invalid_argument("weighted_norm: p < 1");
    if (sp.q && g.dim != 2) throw std::invalid_argument("weighted_norm: mixed norms need d=2");
    return (sp.q && g.dim == 2) ? mixed_norm(g, sp, mask) : plain_norm(g, sp, mask);
}

EstimatePair young_convolution_check(const GridSignal& phi, const GridSignal& f,
                                     const SpaceDescriptor& sp) {
    require_same_grid(phi, f);
    GridSignal conv = padded_linear_convolution(phi, f);
    EstimatePair r;
    r.lhs = weighted_norm(conv, sp);
    r.rhs = sp.weight.moderate_c * weighted_l1(phi, sp.weight) * weighted_norm(f, sp);
    return r;
}

EstimatePair product_module_check(const GridSignal& f, const GridSignal& g,
                                  const SpaceDescriptor& sp) {
    require_same_grid(f, g);
    GridSignal prod = f;
    for (std::size_t k = 0; k < prod.samples.size(); ++k) prod.samples[k] *= g.samples[k];
    GridSignal prod_hat = spectrum(prod);
    GridSignal f_hat = spectrum(f);
    GridSignal g_hat = spectrum(g);
    EstimatePair r;
    r.lhs = weighted_norm(prod_hat, sp);
    r.rhs = sp.weight.moderate_c * std::pow(2.0 * std::numbers::pi, -0.5 * f.dim) *
            weighted_norm(f_hat, sp) * weighted_l1(g_hat, sp.weight);
    return r;
}

}  // namespace tubewf
