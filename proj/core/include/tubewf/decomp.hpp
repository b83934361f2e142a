#pragma once

#include <vector>

#include "tubewf/cone.hpp"
#include "tubewf/grid_signal.hpp"

namespace tubewf {

/// Cone decomposition f = sum f_j with f_j^ = f^ restricted to the partition
/// cell of cone j (first-containing order; the DC bin goes to cone 0).
/// Grid-exact: the masks partition the frequency grid. Throws (naming an
/// uncovered direction) if the cover misses part of the sphere.
std::vector<GridSignal> cone_decompose(const GridSignal& f, const ConeCover& cover);

/// The paper's boundary-value route at radius 1-eps: per-cone multipliers
/// e^{(1-eps)<omega,xi>}/I(xi) summed over the cone's sphere nodes (exact in
/// d=1 where the sphere is two points). Cross-check companion for
/// cone_decompose; the two agree up to a regular term as eps -> 0.
std::vector<GridSignal> cone_decompose_boundary(const GridSignal& f, const ConeCover& cover,
                                                double eps);

struct DefectTable {
    int m = 0;
    std::vector<GridSignal> cells;  // row-major m x m, exactly antisymmetric

    GridSignal& at(int j, int k) { return cells[static_cast<std::size_t>(j) * m + k]; }
    const GridSignal& at(int j, int k) const { return cells[static_cast<std::size_t>(j) * m + k]; }
};

/// Uniqueness-defect terms f_jk for an alternative decomposition `alt` of the
/// same f over the same cover: f_jk = d_j masked to cone k minus d_k masked
/// to cone j, with d_j = alt_j - f_j. Antisymmetric by construction and
/// alt_j = f_j + sum_k f_jk exactly. Throws if alt does not resum to f.
DefectTable decomposition_defect(const GridSignal& f, const ConeCover& cover,
                                 const std::vector<GridSignal>& alt);

/// f1(x') = int f(x', x'') dx'' along the given axis (d=2 -> d=1 signal).
/// Requires the support to stay clear of the grid boundary in the integrated
/// variable.
GridSignal project_integrate(const GridSignal& f, int axis);

}  // namespace tubewf
