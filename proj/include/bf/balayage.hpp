#pragma once

// Numerical balayage feasibility: sweep an atomic measure mu onto a
// sampling set E so that the transforms match on a discretization of
// Lambda, in the least-squares sense, and report the relative residual.

#include "bf/lattice.hpp"
#include "bf/sampling.hpp"

namespace bf {

struct AtomicMeasure {
    int dim = 1;
    std::vector<std::vector<double>> points;
    std::vector<cplx> weights;

    double total_variation() const;
};

AtomicMeasure make_atomic_measure(int dim, std::vector<std::vector<double>> points,
                                  std::vector<cplx> weights);

// component j = sum_k w_k exp(-2 pi i x_k . gamma_j)
std::vector<cplx> measure_transform(const AtomicMeasure& mu,
                                    const std::vector<std::vector<double>>& freqs);

// symmetric grid over Lambda at per_unit points per unit length per axis
std::vector<std::vector<double>> spectrum_grid(const SpectrumSet& lambda,
                                               int per_unit);

struct BalayageResult {
    AtomicMeasure nu;          // supported exactly on E
    double residual = 0.0;     // ||mu_hat - nu_hat|| / ||mu_hat|| on the Lambda grid
    double condition_estimate = 0.0;  // of the unregularized Gram
    int rows = 0;              // number of Lambda grid points
    double objective = 0.0;    // quadrature misfit^2 + regularization*||w||^2
};

// Ridge-regularized least squares over weights supported on E.
// regularization < 0 selects the default 1e-10 * rows; an explicit 0 is
// accepted only when the Gram condition estimate stays below 1e12.
BalayageResult balayage_solve(const AtomicMeasure& mu, const SeparatedSet& E,
                              const SpectrumSet& lambda, int grid_density,
                              double regularization = -1.0);

struct ResidualCurveRow {
    std::size_t set_size = 0;
    double separation = 0.0;
    double residual = 0.0;
    double condition_estimate = 0.0;
};

// family must be ordered by inclusion (each set contained in the next)
std::vector<ResidualCurveRow> balayage_residual_curve(
    const AtomicMeasure& mu, const std::vector<SeparatedSet>& family,
    const SpectrumSet& lambda, int grid_density, double regularization = -1.0);

}  // namespace bf
