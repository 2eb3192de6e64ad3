#include "bf/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace bf {

namespace {

double dist2(const std::vector<double>& a, const std::vector<double>& b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        double d = a[i] - b[i];
        acc += d * d;
    }
    return acc;
}

double min_pairwise(const std::vector<std::vector<double>>& pts) {
    if (pts.size() < 2) return std::numeric_limits<double>::infinity();
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j)
            best = std::min(best, dist2(pts[i], pts[j]));
    return std::sqrt(best);
}

// uniform in [0,1) from the raw 64-bit stream; engine-portable, so a fixed
// seed gives the same set on every platform
double unit_uniform(std::mt19937_64& gen) {
    return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

bool lex_positive(const std::vector<int>& k) {
    for (int c : k) {
        if (c > 0) return true;
        if (c < 0) return false;
    }
    return false;
}

}  // namespace

SeparatedSet make_separated_set(int dim, std::vector<std::vector<double>> points) {
    if (dim < 1) throw std::invalid_argument("make_separated_set: bad dimension");
    for (const auto& p : points)
        if (static_cast<int>(p.size()) != dim)
            throw std::invalid_argument("make_separated_set: point dimension mismatch");
    SeparatedSet s;
    s.dim = dim;
    s.points = std::move(points);
    s.separation = min_pairwise(s.points);
    return s;
}

bool is_separated(const SeparatedSet& set, double r) {
    if (!(r > 0.0)) throw std::invalid_argument("is_separated: r must be > 0");
    return set.separation >= r;
}

bool is_symmetric(const SeparatedSet& set) {
    for (const auto& p : set.points) {
        bool found = false;
        for (const auto& q : set.points) {
            bool match = true;
            for (int i = 0; i < set.dim; ++i)
                if (q[i] != -p[i]) { match = false; break; }
            if (match) { found = true; break; }
        }
        if (!found) return false;
    }
    return true;
}

SeparatedSet jittered_lattice(int dim, double delta, double eta, double extent,
                              bool symmetric, std::uint64_t seed) {
    if (dim < 1) throw std::invalid_argument("jittered_lattice: bad dimension");
    if (!(delta > 0.0)) throw std::invalid_argument("jittered_lattice: delta must be > 0");
    if (!(extent > 0.0)) throw std::invalid_argument("jittered_lattice: extent must be > 0");
    if (eta < 0.0 || eta >= delta / 2.0)
        throw std::invalid_argument("jittered_lattice: jitter must be < delta/2");

    const int K = static_cast<int>(std::floor(extent / delta));
    const double ext2 = extent * extent;
    std::mt19937_64 gen(seed);

    std::vector<std::vector<double>> pts;
    std::vector<int> k(dim, -K);
    for (;;) {
        double n2 = 0.0;
        for (int c : k) n2 += (c * delta) * (c * delta);
        if (n2 <= ext2 * (1.0 + 1e-12)) {
            bool zero = std::all_of(k.begin(), k.end(), [](int c) { return c == 0; });
            if (!symmetric) {
                std::vector<double> p(dim);
                for (int i = 0; i < dim; ++i)
                    p[i] = k[i] * delta + eta * (2.0 * unit_uniform(gen) - 1.0);
                pts.push_back(std::move(p));
            } else if (zero) {
                pts.emplace_back(dim, 0.0);
            } else if (lex_positive(k)) {
                std::vector<double> p(dim), m(dim);
                for (int i = 0; i < dim; ++i) {
                    p[i] = k[i] * delta + eta * (2.0 * unit_uniform(gen) - 1.0);
                    m[i] = -p[i];
                }
                pts.push_back(std::move(p));
                pts.push_back(std::move(m));
            }
        }
        int axis = dim - 1;
        while (axis >= 0 && ++k[axis] > K) k[axis--] = -K;
        if (axis < 0) break;
    }
    std::sort(pts.begin(), pts.end());
    return make_separated_set(dim, std::move(pts));
}

double covering_radius(const SeparatedSet& set, const Region& region,
                       double probe_spacing) {
    if (set.points.empty())
        throw std::invalid_argument("covering_radius: empty sampling set");
    if (static_cast<int>(region.lo.size()) != set.dim ||
        static_cast<int>(region.hi.size()) != set.dim)
        throw std::invalid_argument("covering_radius: region dimension mismatch");
    double max_side = 0.0;
    for (int i = 0; i < set.dim; ++i) {
        if (!(region.hi[i] > region.lo[i]))
            throw std::invalid_argument("covering_radius: region must be a nonempty box");
        max_side = std::max(max_side, region.hi[i] - region.lo[i]);
    }

    double h = probe_spacing;
    if (!(h > 0.0)) {
        double base = std::isfinite(set.separation) && set.separation > 0.0
                          ? set.separation
                          : max_side;
        h = base / 8.0;
    }

    std::vector<int> steps(set.dim);
    std::size_t total = 1;
    for (int i = 0; i < set.dim; ++i) {
        steps[i] = std::max(1, static_cast<int>(std::ceil((region.hi[i] - region.lo[i]) / h)));
        total *= static_cast<std::size_t>(steps[i]) + 1;
        if (total > (std::size_t{1} << 26))
            throw std::invalid_argument("covering_radius: probe grid too large");
    }

    std::vector<int> idx(set.dim, 0);
    std::vector<double> probe(set.dim);
    double worst = 0.0;
    for (;;) {
        for (int i = 0; i < set.dim; ++i)
            probe[i] = region.lo[i] +
                       (region.hi[i] - region.lo[i]) * idx[i] / steps[i];
        double best = std::numeric_limits<double>::infinity();
        for (const auto& p : set.points) best = std::min(best, dist2(probe, p));
        worst = std::max(worst, best);
        int axis = set.dim - 1;
        while (axis >= 0 && ++idx[axis] > steps[axis]) idx[axis--] = 0;
        if (axis < 0) break;
    }
    return std::sqrt(worst);
}

}  // namespace bf
