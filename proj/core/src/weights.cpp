#include "tubewf/weights.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace tubewf {

namespace {
double bracket(double r) { return std::sqrt(1.0 + r * r); }  // <r>
}

Weight::Weight(double exponent)
    : s(exponent), moderate_c(std::pow(2.0, std::abs(exponent))), moderate_n(std::abs(exponent)) {}

Weight::Weight(double exponent, double claimed_c, double claimed_n)
    : s(exponent), moderate_c(claimed_c), moderate_n(claimed_n) {
    if (!(claimed_c > 0) || claimed_n < 0)
        throw std::invalid_argument("Weight: certificate must have C>0, N>=0");
}

double Weight::of_radius(double r) const { return std::pow(bracket(r), s); }
double Weight::v_of_radius(double r) const { return std::pow(bracket(r), moderate_n); }

double Weight::operator()(const Vec2& x, int dim) const { return of_radius(norm2(x, dim)); }
double Weight::v(const Vec2& y, int dim) const { return v_of_radius(norm2(y, dim)); }

ModerateCheckResult moderate_check(const Weight& w, int trials, std::uint64_t seed,
                                   int dim, double radius) {
    if (trials < 1) throw std::invalid_argument("moderate_check: trials >= 1");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> coord(-radius, radius);
    ModerateCheckResult result;
    for (int t = 0; t < trials; ++t) {
        Vec2 x{coord(rng), dim == 2 ? coord(rng) : 0.0};
        Vec2 y{coord(rng), dim == 2 ? coord(rng) : 0.0};
        Vec2 xy{x[0] + y[0], x[1] + y[1]};
        const double lhs = w(xy, dim);
        const double rhs = w.moderate_c * w(x, dim) * w.v(y, dim);
        if (lhs > rhs * (1.0 + 1e-12)) {
            result.ok = false;
            result.counterexample = {x, y};
            return result;
        }
    }
    return result;
}

}  // namespace tubewf
