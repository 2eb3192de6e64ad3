#pragma once

// Uniform grids, grid-sampled signals and compact spectrum sets.
//
// Every integral in the toolkit is a Riemann sum on a UniformGrid: a
// centered, half-open grid of n points per axis with spacing dx, covering
// [-n*dx/2, n*dx/2). Its dual grid has spacing 1/(n*dx) and covers
// [-1/(2dx), 1/(2dx)), so grid and dual form an exact DFT pair
// (dx * dual_dx * n == 1).

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace bf {

using cplx = std::complex<double>;

enum class Domain { time, frequency, phase_space };

struct UniformGrid {
    int dim = 1;
    int count = 0;                 // n per axis, even
    std::vector<double> spacing;   // dx per axis
    std::vector<double> origin;    // zero for all grids built by make_grid

    std::size_t total() const;     // n^dim
    double cell_volume() const;    // prod(spacing)
    double span(int axis) const { return count * spacing[axis]; }
    UniformGrid dual() const;

    // coordinate of storage index s (0..n-1) on one axis: (s - n/2) * dx
    double coord(int axis, int storage) const {
        return origin[axis] + (storage - count / 2) * spacing[axis];
    }
    std::vector<double> point(std::size_t flat) const;

    bool same_geometry(const UniformGrid& other, double tol = 1e-12) const;
};

UniformGrid make_grid(int dim, int count, double spacing);

struct GridSignal {
    UniformGrid grid;
    Domain domain = Domain::time;
    std::vector<cplx> values;      // row-major, axis 0 slowest
};

GridSignal make_signal(const UniformGrid& grid, Domain domain = Domain::time);

// Quadrature norm and inner product: ||f||^2 = cell * sum |f|^2,
// <f,g> = cell * sum f * conj(g) (linear in the first argument).
double l2_norm(const GridSignal& f);
cplx inner(const GridSignal& f, const GridSignal& g);

// Compact, convex, 0-symmetric spectrum: a box or a ball, optionally
// enlarged by epsilon in Euclidean distance (so an enlarged box is the
// rounded box {dist(gamma, box) <= epsilon}, exact in every dimension).
struct SpectrumSet {
    enum class Shape { box, ball };

    Shape shape = Shape::box;
    int dimension = 1;
    std::vector<double> half_extent;  // box half-widths (shape == box)
    double radius = 0.0;              // shape == ball
    double epsilon = 0.0;

    // Euclidean distance to the un-enlarged base shape.
    double base_distance(std::span<const double> gamma) const;
    // per-axis bound of the enlarged set: half_extent[i] (or radius) + epsilon
    double bounding_half_width(int axis) const;
};

SpectrumSet box_spectrum(std::vector<double> half_extent, double epsilon = 0.0);
SpectrumSet ball_spectrum(int dimension, double radius, double epsilon = 0.0);

// dist(gamma, Lambda) <= eps, where Lambda already carries its own epsilon.
bool spectrum_membership(const SpectrumSet& s, std::span<const double> gamma,
                         double eps = 0.0);

// Set whose membership at slack 0 equals the input's membership at slack eps.
SpectrumSet epsilon_enlarge(const SpectrumSet& s, double eps);

}  // namespace bf
