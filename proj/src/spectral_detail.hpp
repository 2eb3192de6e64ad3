#pragma once

// Internal: power iteration for extremal eigenvalues of Hermitian PSD
// operators given as matrix-free applies on std::vector<cplx>.

#include <cmath>
#include <random>
#include <utility>
#include <vector>

#include "bf/lattice.hpp"

namespace bf::detail {

inline cplx vdot(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    cplx acc{0.0, 0.0};
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * std::conj(b[i]);
    return acc;
}

inline double vnorm(const std::vector<cplx>& a) {
    double acc = 0.0;
    for (const cplx& z : a) acc += std::norm(z);
    return std::sqrt(acc);
}

// deterministic start vector: fixed-seed engine, portable draw
inline std::vector<cplx> power_start(std::size_t m) {
    std::mt19937_64 gen(0x5eedULL);
    std::vector<cplx> v(m);
    for (auto& z : v) {
        double re = static_cast<double>(gen() >> 11) * 0x1.0p-53 - 0.5;
        double im = static_cast<double>(gen() >> 11) * 0x1.0p-53 - 0.5;
        z = cplx{re, im};
    }
    return v;
}

// Rayleigh-quotient power iteration; stops when the quotient is stable to
// a relative tol over three consecutive iterations.
template <typename Op>
std::pair<double, int> power_largest(std::size_t m, Op&& op, double tol,
                                     int max_iter) {
    std::vector<cplx> v = power_start(m);
    double nv = vnorm(v);
    for (auto& z : v) z /= nv;
    double rho_prev = 0.0;
    int stable = 0;
    for (int it = 0; it < max_iter; ++it) {
        std::vector<cplx> w = op(v);
        double rho = std::real(vdot(w, v));
        double nw = vnorm(w);
        if (nw == 0.0) return {0.0, it + 1};
        for (auto& z : w) z /= nw;
        v = std::move(w);
        if (std::abs(rho - rho_prev) <= tol * std::max(std::abs(rho), 1e-300)) {
            if (++stable >= 3) return {rho, it + 1};
        } else {
            stable = 0;
        }
        rho_prev = rho;
    }
    return {rho_prev, max_iter};
}

// B from power iteration on S, then A from the shifted operator
// (shift - S) whose top eigenvalue is shift - A.
template <typename Op>
void power_bounds(std::size_t m, Op&& op, double tol, int max_iter,
                  double& lower_A, double& upper_B, int& iterations) {
    auto [B, itB] = power_largest(m, op, tol, max_iter);
    const double shift = B * (1.0 + 1e-3) + 1e-300;
    auto shifted = [&](const std::vector<cplx>& v) {
        std::vector<cplx> w = op(v);
        for (std::size_t j = 0; j < v.size(); ++j) w[j] = shift * v[j] - w[j];
        return w;
    };
    auto [mu, itA] = power_largest(m, shifted, tol, max_iter);
    upper_B = B > 0.0 ? B : 0.0;
    lower_A = shift - mu > 0.0 ? shift - mu : 0.0;
    iterations = itB + itA;
}

}  // namespace bf::detail
