#pragma once

// Short-time Fourier transform and non-uniform Gabor systems.
//
// Phase convention: V_g f(x, omega) = <f, e_omega tau_x g>, i.e. the
// quadrature of f(t) conj(g(t - x)) exp(-2 pi i t.omega) dt. On full grids
// the transform is computed as windowed DFT columns; at arbitrary phase
// points by direct summation against the band-limited translate of g.

#include "bf/fourier.hpp"
#include "bf/frames.hpp"
#include "bf/sampling.hpp"

namespace bf {

struct STFTField {
    UniformGrid time_grid;  // translation axis
    UniformGrid freq_grid;  // modulation axis (dual of time_grid)
    std::vector<cplx> values;  // row-major: translation index outer

    double cell_volume() const {
        return time_grid.cell_volume() * freq_grid.cell_volume();
    }
};

// phase-space quadrature norm; Moyal: stft_l2_norm(V_g f) = ||f|| ||g||
double stft_l2_norm(const STFTField& V);

// G0(lambda) = 2^{d/4} exp(-pi ||lambda||^2), unit L2 norm. Requires span
// >= 8 per axis and rejects grids too coarse to hold the norm to 1e-10.
GridSignal gaussian_window(const UniformGrid& grid, Domain domain = Domain::time);

STFTField stft_forward(const GridSignal& f, const GridSignal& g);

// V_g f at arbitrary phase-space points (x..., omega...), dimension 2d each
std::vector<cplx> stft_at(const GridSignal& f, const GridSignal& g,
                          const std::vector<std::vector<double>>& phase_points);

// f = integral of V(x, omega) e_omega tau_x g over the full phase grid
GridSignal stft_inverse(const STFTField& V, const GridSignal& g);

// sum over x in E of the omega-quadrature of |V_g f(x, omega)|^2
double semidiscrete_energy(const GridSignal& f, const GridSignal& g,
                           const SeparatedSet& E);

struct UpperConstant {
    double value = 0.0;
    std::vector<double> argmax_y;
    std::vector<double> argmax_gamma;
};

// C = sup over the probe grid (y, gamma) of
//     sum_{x in E} integral |V_{G0}G0(gamma + omega, y + x)| domega,
// evaluated with the closed Gaussian form exp(-pi(|.|^2+|.|^2)/2) and an
// omega-quadrature exact to machine precision. probe_grid has dimension 2d.
UpperConstant upper_constant_C(const SeparatedSet& E, const UniformGrid& probe_grid);

struct FeichtingerNorm {
    double value = 0.0;             // ||V_{G0} g_hat||_1 on the refined grid
    double refinement_delta = 0.0;  // relative change under grid refinement
    bool converged = false;         // refinement_delta <= 1%
};

FeichtingerNorm feichtinger_norm(const GridSignal& g);

struct GaborSystem {
    GridSignal window;         // unit norm, enforced at construction
    SeparatedSet phase_points; // dimension 2d
};

GaborSystem make_gabor_system(GridSignal window, SeparatedSet phase_points);

// coefficient at (s, sigma) = V_g f(s, sigma) = <f, e_sigma tau_s g>
std::vector<cplx> gabor_coefficients(const GridSignal& f, const GaborSystem& sys);

// S f = sum <f, e_sigma tau_s g> e_sigma tau_s g
GridSignal gabor_frame_apply(const GridSignal& f, const GaborSystem& sys);

FrameReport gabor_frame_bounds(const GaborSystem& sys, const BoundsOptions& opts = {});

struct GaborReconstructResult {
    GridSignal signal;
    int iterations = 0;
    double residual = 0.0;
    bool converged = false;
};

// applies S^{-1} by conjugate gradient; round trip
// gabor_reconstruct(gabor_coefficients(f)) recovers f when A > 0
GaborReconstructResult gabor_reconstruct(const std::vector<cplx>& coeffs,
                                         const GaborSystem& sys, double tol = 1e-9,
                                         int max_iter = 500);

}  // namespace bf
