#pragma once

// Fourier frame machinery: the exponentials e_{-x}, x in E, acting on the
// discretized model space L^2(Lambda_grid) = span of the dual-grid
// frequencies inside Lambda. All operators are finite matrices there.

#include <cstdint>
#include <optional>

#include "bf/fourier.hpp"
#include "bf/sampling.hpp"

namespace bf {

enum class EigenMethod { automatic, dense_eigen, power_iteration };

struct FrameReport {
    double lower_A = 0.0;
    double upper_B = 0.0;
    double condition = 0.0;  // B/A, +inf when A vanishes
    EigenMethod method = EigenMethod::dense_eigen;
    int iterations = 0;

    bool is_frame() const { return lower_A > 0.0; }
};

// component at x = <F, e_{-x}> = sample_at(F, lambda, x); linear in F
std::vector<cplx> analysis_map(const GridSignal& F, const SeparatedSet& E,
                               const SpectrumSet& lambda);

// S F = sum_{x in E} <F, e_{-x}> e_{-x} restricted to Lambda
GridSignal frame_operator_apply(const GridSignal& F, const SeparatedSet& E,
                                const SpectrumSet& lambda);

struct BoundsOptions {
    EigenMethod method = EigenMethod::automatic;
    int dense_threshold = 512;  // automatic: dense up to this model dimension
    double tol = 1e-9;          // power iteration relative tolerance
    int max_iter = 200000;
};

// A, B = extremal eigenvalues of the discretized frame operator. A below
// 1e-12 * B is reported as A = 0 with infinite condition (not a frame at
// this discretization).
FrameReport frame_bounds(const UniformGrid& time_grid, const SeparatedSet& E,
                         const SpectrumSet& lambda, const BoundsOptions& opts = {});

enum class ReconstructMethod { conjugate_gradient, frame_algorithm };

struct ReconstructOptions {
    ReconstructMethod method = ReconstructMethod::conjugate_gradient;
    double tol = 1e-9;
    int max_iter = 500;
    // frame_algorithm relaxation needs bounds; computed densely when absent
    std::optional<FrameReport> report;
};

struct ReconstructResult {
    GridSignal signal;       // frequency-domain, supported on Lambda_grid
    int iterations = 0;
    double residual = 0.0;   // ||S F - y|| / ||y||, y = synthesis of samples
    bool converged = false;
};

// least-squares inversion of the frame operator: samples -> F with
// analysis_map(F) ~ samples (via the normal equations S F = synthesis)
ReconstructResult frame_reconstruct(const std::vector<cplx>& samples,
                                    const UniformGrid& time_grid,
                                    const SeparatedSet& E, const SpectrumSet& lambda,
                                    const ReconstructOptions& opts = {});

}  // namespace bf
