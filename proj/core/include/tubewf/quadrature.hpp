#pragma once

#include <vector>

namespace tubewf::quad {

struct Rule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Gauss-Legendre rule on [-1,1], weight 1. Nodes ascending.
Rule gauss_legendre(int n);

/// Gauss-Chebyshev rule on [-1,1], weight (1-t^2)^{-1/2}. Nodes ascending.
Rule gauss_chebyshev(int n);

/// Rule matching the endpoint weight (1-t^2)^{(d-3)/2} of the sphere profile
/// integral: Chebyshev for d=2, Legendre for d=3. Throws for other d.
Rule sphere_profile_rule(int d, int n);

}  // namespace tubewf::quad
