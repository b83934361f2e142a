#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tubewf/grid_signal.hpp"

namespace tubewf {

/// Point mass sitting inside f^ (e.g. the pi*delta term of the Heaviside
/// transform). Kept separate from the function part so tube multipliers can
/// treat it exactly.
struct SpectralAtom {
    Vec2 xi{0, 0};
    cplx mass{0, 0};
};

/// Catalog entry: closed-form Fourier data plus ground-truth wave-front
/// metadata. The transform convention is the unitary one,
/// f^(xi) = (2pi)^{-d/2} int f e^{-i<x,xi>} dx.
struct ModelDistribution {
    enum class Provenance { Analytic, Oracle };
    enum class Sampling { Pointwise, Spectral, CustomSpectrum };

    int dim = 1;
    std::string name;
    std::string description;

    /// Function part of f^; empty for entries whose transform is purely
    /// distributional along lines (d=2 indicator types).
    std::function<cplx(const Vec2&)> fourier;
    std::vector<SpectralAtom> atoms;

    /// |f^(xi)| <= C (1+|xi|)^M on 1 <= |xi| <= 1e3 (function part).
    double poly_c = 1, poly_m = 0;

    Provenance provenance = Provenance::Analytic;
    Sampling sampling = Sampling::Pointwise;
    std::function<cplx(const Vec2&)> pointwise;
    /// Fills f^ directly on a frequency grid (distributional lines).
    std::function<void(GridSignal&)> custom_spectrum;

    bool compactly_supported = false;

    /// Ground truth: effective dyadic spectral rate beta at base point x in
    /// direction dir (annulus norm slope = beta + s + d/p); -infinity where
    /// the entry is regular. Present iff ground_truth_known.
    bool ground_truth_known = false;
    std::function<double(const Vec2& x, const Vec2& dir)> rate;
    /// Singular-support membership (available for all entries).
    std::function<bool(const Vec2& x)> singular_at;
};

const std::vector<ModelDistribution>& catalog();
const ModelDistribution& find_model(std::string_view name);  // throws on unknown source

/// Samples the entry on the requested grid per its sampling strategy.
/// Pointwise entries must satisfy the Nyquist policy (spectral content at the
/// Nyquist frequency below 1e-6 of the peak); distribution-type entries are
/// defined spectrally and inverted by FFT.
GridSignal sample_model(const ModelDistribution& model, int dim, int n, double spacing,
                        std::optional<Vec2> origin = std::nullopt);

/// Numerical check of the polynomial bound on the function part (or, for
/// grid-defined spectra, on a default grid).
bool polybound_check(const ModelDistribution& model, double radius = 1e3, int samples = 4096);

}  // namespace tubewf
