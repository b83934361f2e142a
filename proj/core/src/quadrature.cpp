#include "tubewf/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace tubewf::quad {

namespace {
constexpr double kPi = std::numbers::pi;
}

Rule gauss_legendre(int n) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: n < 1");
    Rule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);

    // Newton iteration on P_n, symmetric pairs.
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (x * p0 - p1) / (x * x - 1.0);
            const double dx = p0 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        const double w = 2.0 / ((1.0 - x * x) * pp * pp);
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    return rule;
}

Rule gauss_chebyshev(int n) {
    if (n < 1) throw std::invalid_argument("gauss_chebyshev: n < 1");
    Rule rule;
    rule.nodes.resize(n);
    rule.weights.assign(n, kPi / n);
    for (int k = 0; k < n; ++k) {
        // Ascending order; node k of the classical rule is cos((2k-1)pi/2n).
        rule.nodes[k] = std::cos((2.0 * (n - k) - 1.0) * kPi / (2.0 * n));
    }
    return rule;
}

Rule sphere_profile_rule(int d, int n) {
    switch (d) {
        case 2: return gauss_chebyshev(n);
        case 3: return gauss_legendre(n);
        default: throw std::invalid_argument("sphere_profile_rule: only d in {2,3}");
    }
}

}  // namespace tubewf::quad
