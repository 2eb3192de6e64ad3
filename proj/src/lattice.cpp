#include "bf/lattice.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace bf {

std::size_t UniformGrid::total() const {
    std::size_t t = 1;
    for (int i = 0; i < dim; ++i) t *= static_cast<std::size_t>(count);
    return t;
}

double UniformGrid::cell_volume() const {
    double v = 1.0;
    for (double s : spacing) v *= s;
    return v;
}

UniformGrid UniformGrid::dual() const {
    UniformGrid d = *this;
    for (int i = 0; i < dim; ++i) d.spacing[i] = 1.0 / (count * spacing[i]);
    for (int i = 0; i < dim; ++i) d.origin[i] = 0.0;
    return d;
}

std::vector<double> UniformGrid::point(std::size_t flat) const {
    std::vector<double> p(dim);
    for (int axis = dim - 1; axis >= 0; --axis) {
        int s = static_cast<int>(flat % count);
        p[axis] = coord(axis, s);
        flat /= count;
    }
    return p;
}

bool UniformGrid::same_geometry(const UniformGrid& other, double tol) const {
    if (dim != other.dim || count != other.count) return false;
    for (int i = 0; i < dim; ++i) {
        if (std::abs(spacing[i] - other.spacing[i]) > tol * spacing[i]) return false;
        if (std::abs(origin[i] - other.origin[i]) > tol) return false;
    }
    return true;
}

UniformGrid make_grid(int dim, int count, double spacing) {
    if (dim < 1) throw std::invalid_argument("make_grid: dimension must be positive");
    if (count < 2 || count % 2 != 0)
        throw std::invalid_argument("make_grid: n must be even and >= 2");
    if (!(spacing > 0.0)) throw std::invalid_argument("make_grid: spacing must be > 0");
    UniformGrid g;
    g.dim = dim;
    g.count = count;
    g.spacing.assign(dim, spacing);
    g.origin.assign(dim, 0.0);
    return g;
}

GridSignal make_signal(const UniformGrid& grid, Domain domain) {
    GridSignal f;
    f.grid = grid;
    f.domain = domain;
    f.values.assign(grid.total(), cplx{0.0, 0.0});
    return f;
}

double l2_norm(const GridSignal& f) {
    double acc = 0.0;
    for (const cplx& v : f.values) acc += std::norm(v);
    return std::sqrt(f.grid.cell_volume() * acc);
}

cplx inner(const GridSignal& f, const GridSignal& g) {
    if (f.values.size() != g.values.size())
        throw std::invalid_argument("inner: signals live on different grids");
    cplx acc{0.0, 0.0};
    for (std::size_t i = 0; i < f.values.size(); ++i)
        acc += f.values[i] * std::conj(g.values[i]);
    return f.grid.cell_volume() * acc;
}

double SpectrumSet::base_distance(std::span<const double> gamma) const {
    if (static_cast<int>(gamma.size()) != dimension)
        throw std::invalid_argument("SpectrumSet: point dimension mismatch");
    if (shape == Shape::box) {
        double acc = 0.0;
        for (int i = 0; i < dimension; ++i) {
            double d = std::abs(gamma[i]) - half_extent[i];
            if (d > 0.0) acc += d * d;
        }
        return std::sqrt(acc);
    }
    double n2 = 0.0;
    for (double c : gamma) n2 += c * c;
    double d = std::sqrt(n2) - radius;
    return d > 0.0 ? d : 0.0;
}

double SpectrumSet::bounding_half_width(int axis) const {
    return (shape == Shape::box ? half_extent[axis] : radius) + epsilon;
}

SpectrumSet box_spectrum(std::vector<double> half_extent, double epsilon) {
    if (half_extent.empty())
        throw std::invalid_argument("box_spectrum: empty half_extent");
    for (double h : half_extent)
        if (!(h > 0.0)) throw std::invalid_argument("box_spectrum: half_extent must be > 0");
    if (epsilon < 0.0) throw std::invalid_argument("box_spectrum: epsilon must be >= 0");
    SpectrumSet s;
    s.shape = SpectrumSet::Shape::box;
    s.dimension = static_cast<int>(half_extent.size());
    s.half_extent = std::move(half_extent);
    s.epsilon = epsilon;
    return s;
}

SpectrumSet ball_spectrum(int dimension, double radius, double epsilon) {
    if (dimension < 1) throw std::invalid_argument("ball_spectrum: bad dimension");
    if (!(radius > 0.0)) throw std::invalid_argument("ball_spectrum: radius must be > 0");
    if (epsilon < 0.0) throw std::invalid_argument("ball_spectrum: epsilon must be >= 0");
    SpectrumSet s;
    s.shape = SpectrumSet::Shape::ball;
    s.dimension = dimension;
    s.radius = radius;
    s.epsilon = epsilon;
    return s;
}

bool spectrum_membership(const SpectrumSet& s, std::span<const double> gamma, double eps) {
    if (eps < 0.0) throw std::invalid_argument("spectrum_membership: eps must be >= 0");
    return s.base_distance(gamma) <= s.epsilon + eps;
}

SpectrumSet epsilon_enlarge(const SpectrumSet& s, double eps) {
    if (eps < 0.0) throw std::invalid_argument("epsilon_enlarge: eps must be >= 0");
    SpectrumSet out = s;
    out.epsilon += eps;
    return out;
}

}  // namespace bf
