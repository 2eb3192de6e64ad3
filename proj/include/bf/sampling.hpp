#pragma once

// Separated sampling sets in R^d (and R^{2d} for phase space).

#include <cstdint>
#include <vector>

namespace bf {

struct SeparatedSet {
    int dim = 1;
    std::vector<std::vector<double>> points;
    double separation = 0.0;  // min pairwise distance, +inf for < 2 points
};

SeparatedSet make_separated_set(int dim, std::vector<std::vector<double>> points);

// true iff all pairwise distances are >= r (vacuous for < 2 points)
bool is_separated(const SeparatedSet& set, double r);

// x in E implies -x in E, with exact coordinate match
bool is_symmetric(const SeparatedSet& set);

// Lattice k*delta (||k*delta|| <= extent), each point displaced by at most
// eta per axis, deterministically from the seed. With symmetric=true the
// jitter is drawn on the lex-positive half and mirrored so E = -E exactly
// (the origin point stays unjittered). Separation is >= delta - 2*eta.
// Jitter draws scale linearly with eta for a fixed seed, so sweeps over
// eta use common random numbers.
SeparatedSet jittered_lattice(int dim, double delta, double eta, double extent,
                              bool symmetric, std::uint64_t seed);

struct Region {
    std::vector<double> lo, hi;
};

// max over a probe grid of the region of the distance to the nearest point
// of E. probe_spacing <= 0 selects separation/8 (region side / 8 when the
// set has fewer than two points); the result is accurate to that spacing.
double covering_radius(const SeparatedSet& set, const Region& region,
                       double probe_spacing = 0.0);

}  // namespace bf
