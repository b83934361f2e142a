#pragma once

#include <string>
#include <vector>

#include "tubewf/cone.hpp"
#include "tubewf/grid_signal.hpp"
#include "tubewf/localizer.hpp"
#include "tubewf/space.hpp"
#include "tubewf/tube.hpp"

namespace tubewf {

enum class Verdict { Regular, InWf, Inconclusive };
const char* to_string(Verdict v);

/// Detector configuration. Negative values mean "derive the default from the
/// grid": localizer radii 8/24 grid steps, dyadic range from the window scale
/// up to the last complete annulus under Nyquist.
struct DetectorParams {
    int bins = 0;                  // 0 -> 2 (d=1) or 16 (d=2)
    double localizer_inner = -1;
    double localizer_outer = -1;
    BumpProfile profile = BumpProfile::Exp1;
    double cone_factor = 1.5;      // detection cone half-angle = factor * bin half-width
    double margin = 0.15;          // symmetric dead zone around tau
    int j_min = -1, j_max = -1;
    double convergence_tol = 1e-3;
    double tube_convergence_tol = 1e-2;
    int tube_k_min = 4, tube_k_max = -1;
    /// Annulus values below this fraction of the signal's own spectral scale
    /// count as representation noise (band-limitation leakage), not content.
    double zero_floor_rel = 1e-5;

    DetectorParams resolved(int dim, double grid_spacing, double nyquist) const;
};

std::vector<Vec2> default_bin_axes(int dim, int bins);
double bin_half_width(int dim, int bins);

struct BinVerdict {
    double alpha = 0;   // fitted spectral growth rate (annulus slope minus s+d/p)
    double tau = 0;     // critical rate -(s+d/p)
    double margin_dist = 0;  // alpha - tau, signed
    Verdict verdict = Verdict::Inconclusive;
    bool truncated = false;
    bool converged = false;
    std::vector<double> annulus_norms;  // indexed from j_min
    int j_min = 0;
};

struct WfReport {
    int dim = 1;
    std::string detector;  // "direct", "modulation", "inf", "tube"
    SpaceDescriptor space;
    std::vector<Vec2> base_points;
    std::vector<Vec2> bin_axes;
    DetectorParams params;
    std::vector<BinVerdict> cells;  // base * nbins + bin

    BinVerdict& at(std::size_t point, std::size_t bin);
    const BinVerdict& at(std::size_t point, std::size_t bin) const;
};

/// Weighted norms of F(phi f) over cone-restricted dyadic annuli
/// 2^j <= |xi| < 2^{j+1}, j = j_min..j_max. Annuli beyond Nyquist are
/// truncated, not an error.
std::vector<double> cone_norm_profile(const GridSignal& f, const Vec2& x0, const Cone& cone,
                                      const SpaceDescriptor& sp, const Localizer& w,
                                      int j_min, int j_max, bool* truncated = nullptr);

/// Turns an annulus table into a verdict. `global_scale` is the largest
/// annulus value across all bins of the same base point (noise floor
/// reference); pass 0 to use the table's own max.
BinVerdict verdict_from_annuli(const std::vector<double>& annuli, int j_min, bool truncated,
                               const SpaceDescriptor& sp, int dim, const DetectorParams& p,
                               double global_scale = 0);

WfReport wf_detect(const GridSignal& f, const SpaceDescriptor& sp,
                   const std::vector<Vec2>& base_points, const DetectorParams& params = {});

/// Base points with at least one IN_WF bin.
std::vector<Vec2> singular_support(const WfReport& report);

/// Direction-free scan (full-sphere cone); the projection theorem says its
/// failures coincide with singular_support(wf_detect(...)).
std::vector<Verdict> direction_free_scan(const GridSignal& f, const SpaceDescriptor& sp,
                                         const std::vector<Vec2>& base_points,
                                         const DetectorParams& params = {});

/// Conservative intersection over the family: IN_WF iff every member is,
/// INCONCLUSIVE if any member is.
WfReport wf_detect_inf(const GridSignal& f, const std::vector<SpaceDescriptor>& family,
                       const std::vector<Vec2>& base_points, const DetectorParams& params = {});

/// Short-time Fourier transform samples V_phi f(x, .) at the given x points,
/// Gaussian window of width sigma.
struct StftResult {
    std::vector<Vec2> x_points;
    GridSignal freq_template;                // frequency grid metadata (samples unused)
    std::vector<std::vector<cplx>> values;   // values[i] on the frequency grid
};
StftResult stft(const GridSignal& f, double window_sigma, const std::vector<Vec2>& x_points);

/// Modulation-space detector: annulus norms of |V_phi(phi f)| aggregated over
/// a small x-window around each base point.
WfReport wf_detect_modulation(const GridSignal& f, const SpaceDescriptor& sp,
                              const std::vector<Vec2>& base_points,
                              const DetectorParams& params = {});

/// Tube-side membership test at x - i xi: norms of the boundary family
/// g_r = phi_x F(. - i r xi), r = 1 - 2^{-k}; REGULAR iff they stay bounded
/// (uniform-norm reading). Localizer radii must be set explicitly in params.
struct TubeMembership {
    Verdict verdict = Verdict::Inconclusive;
    double lambda = 0;  // fitted log2 growth of the boundary norms in k
    std::vector<double> norms;
    int k_min = 4;
};
TubeMembership tube_membership(const AnalyticRep& F, const Vec2& x, const Vec2& xi,
                               const SpaceDescriptor& sp, const DetectorParams& params);

/// Sweep wrapper producing a WfReport comparable bin-for-bin with wf_detect.
WfReport wf_detect_tube(const AnalyticRep& F, const SpaceDescriptor& sp,
                        const std::vector<Vec2>& base_points, const DetectorParams& params);

/// Same sweep for several spaces at once; the boundary lines and windowed
/// spectra are computed once and only the norms differ per space.
std::vector<WfReport> wf_detect_tube_multi(const AnalyticRep& F,
                                           const std::vector<SpaceDescriptor>& spaces,
                                           const std::vector<Vec2>& base_points,
                                           const DetectorParams& params);

/// Report CSV (columns x [y] bin-axis-angle alpha tau verdict margin).
std::string report_to_csv(const WfReport& report);

}  // namespace tubewf
