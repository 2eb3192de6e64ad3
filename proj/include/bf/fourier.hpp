#pragma once

// Discrete Fourier analysis on centered grids.
//
// Conventions (fixed once, used by every module):
//   forward:  F(gamma_j) = cell(f) * sum_k f(x_k) exp(-2 pi i x_k . gamma_j)
//   inverse:  f(x_k)     = cell(F) * sum_j F(gamma_j) exp(+2 pi i x_k . gamma_j)
// where cell(.) is the input grid's cell volume and the output lives on the
// dual grid. With these weights the round trip is the identity and Parseval
// holds exactly: ||f||_2 = ||F||_2 in the quadrature norms.
//
// The grid is a torus model: shifts wrap periodically, and off-grid shifts
// are the exact translates of the trigonometric interpolant (frequency-side
// phase ramp).

#include <span>

#include "bf/lattice.hpp"

namespace bf {

enum class Direction { forward, inverse };

struct Exponential {
    std::vector<double> x;
    // e_x(gamma) = exp(2 pi i x . gamma)
    cplx operator()(std::span<const double> gamma) const;
};

GridSignal dft(const GridSignal& f, Direction dir);

// returns exp(2 pi i t.omega) * f(t - x); norm-preserving. x must be a grid
// point unless interpolate is set.
GridSignal time_frequency_shift(const GridSignal& f, std::span<const double> x,
                                std::span<const double> omega,
                                bool interpolate = false);

// zero the values of a frequency-domain signal outside Lambda
GridSignal mask_to_spectrum(GridSignal F, const SpectrumSet& lambda);

// orthogonal projection onto PW_Lambda: transform, mask, invert.
// Rejects spectra that do not fit strictly inside the dual grid's span.
GridSignal pw_project(const GridSignal& f, const SpectrumSet& lambda);

// <F, e_{-x}> = f(x): quadrature of F(gamma) exp(2 pi i x.gamma) over the
// dual-grid points inside Lambda. x need not be a grid point.
cplx sample_at(const GridSignal& F, const SpectrumSet& lambda,
               std::span<const double> x);

// same signal on the (2n, dx/2) grid via frequency zero-padding (exact for
// the torus model); used for grid-refinement convergence checks
GridSignal refine_signal(const GridSignal& f);

}  // namespace bf
