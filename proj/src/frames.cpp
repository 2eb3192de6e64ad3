#include "bf/frames.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "spectral_detail.hpp"

namespace bf {

namespace {

using detail::vdot;
using detail::vnorm;

constexpr double two_pi = 2.0 * std::numbers::pi;

// compacted model space: dual-grid points inside Lambda
struct ModelBasis {
    UniformGrid freq_grid;
    std::vector<std::size_t> index;  // flat indices into the dual grid
    std::vector<double> coords;      // index.size() x dim, row-major
    double q = 0.0;                  // dual-grid cell volume

    std::size_t size() const { return index.size(); }
};

ModelBasis build_basis(const UniformGrid& time_grid, const SpectrumSet& lambda) {
    if (lambda.dimension != time_grid.dim)
        throw std::invalid_argument("frame ops: dimension mismatch");
    ModelBasis b;
    b.freq_grid = time_grid.dual();
    b.q = b.freq_grid.cell_volume();
    const int dim = b.freq_grid.dim;
    const int n = b.freq_grid.count;
    std::vector<int> idx(dim, 0);
    std::vector<double> gamma(dim);
    const std::size_t total = b.freq_grid.total();
    for (std::size_t flat = 0; flat < total; ++flat) {
        for (int i = 0; i < dim; ++i) gamma[i] = b.freq_grid.coord(i, idx[i]);
        if (spectrum_membership(lambda, gamma)) {
            b.index.push_back(flat);
            b.coords.insert(b.coords.end(), gamma.begin(), gamma.end());
        }
        int axis = dim - 1;
        while (axis >= 0 && ++idx[axis] >= n) idx[axis--] = 0;
    }
    return b;
}

// c_x = q * sum_j v_j exp(2 pi i x . gamma_j)
std::vector<cplx> analyze(const ModelBasis& b, const std::vector<cplx>& v,
                          const SeparatedSet& E) {
    const int dim = E.dim;
    std::vector<cplx> c(E.points.size());
    for (std::size_t e = 0; e < E.points.size(); ++e) {
        cplx acc{0.0, 0.0};
        for (std::size_t j = 0; j < b.size(); ++j) {
            double phase = 0.0;
            for (int i = 0; i < dim; ++i)
                phase += E.points[e][i] * b.coords[j * dim + i];
            acc += v[j] * std::polar(1.0, two_pi * phase);
        }
        c[e] = b.q * acc;
    }
    return c;
}

// out_j = sum_x c_x exp(-2 pi i x . gamma_j)
std::vector<cplx> synthesize(const ModelBasis& b, const std::vector<cplx>& c,
                             const SeparatedSet& E) {
    const int dim = E.dim;
    std::vector<cplx> out(b.size(), cplx{0.0, 0.0});
    for (std::size_t j = 0; j < b.size(); ++j) {
        cplx acc{0.0, 0.0};
        for (std::size_t e = 0; e < E.points.size(); ++e) {
            double phase = 0.0;
            for (int i = 0; i < dim; ++i)
                phase += E.points[e][i] * b.coords[j * dim + i];
            acc += c[e] * std::polar(1.0, -two_pi * phase);
        }
        out[j] = acc;
    }
    return out;
}

std::vector<cplx> apply_S(const ModelBasis& b, const std::vector<cplx>& v,
                          const SeparatedSet& E) {
    return synthesize(b, analyze(b, v, E), E);
}

std::vector<cplx> compact(const ModelBasis& b, const GridSignal& F) {
    std::vector<cplx> v(b.size());
    for (std::size_t j = 0; j < b.size(); ++j) v[j] = F.values[b.index[j]];
    return v;
}

GridSignal scatter(const ModelBasis& b, const std::vector<cplx>& v) {
    GridSignal F = make_signal(b.freq_grid, Domain::frequency);
    for (std::size_t j = 0; j < b.size(); ++j) F.values[b.index[j]] = v[j];
    return F;
}

Eigen::MatrixXcd dense_frame_matrix(const ModelBasis& b, const SeparatedSet& E) {
    const std::size_t m = b.size();
    const int dim = E.dim;
    Eigen::MatrixXcd phi(E.points.size(), m);
    for (std::size_t e = 0; e < E.points.size(); ++e)
        for (std::size_t j = 0; j < m; ++j) {
            double phase = 0.0;
            for (int i = 0; i < dim; ++i)
                phase += E.points[e][i] * b.coords[j * dim + i];
            phi(e, j) = std::polar(1.0, two_pi * phase);
        }
    return b.q * (phi.adjoint() * phi);
}

}  // namespace

std::vector<cplx> analysis_map(const GridSignal& F, const SeparatedSet& E,
                               const SpectrumSet& lambda) {
    // equivalent to sample_at per point, with the basis cached across E
    UniformGrid time_grid = F.grid.dual();
    ModelBasis b = build_basis(time_grid, lambda);
    return analyze(b, compact(b, F), E);
}

GridSignal frame_operator_apply(const GridSignal& F, const SeparatedSet& E,
                                const SpectrumSet& lambda) {
    UniformGrid time_grid = F.grid.dual();
    ModelBasis b = build_basis(time_grid, lambda);
    return scatter(b, apply_S(b, compact(b, F), E));
}

FrameReport frame_bounds(const UniformGrid& time_grid, const SeparatedSet& E,
                         const SpectrumSet& lambda, const BoundsOptions& opts) {
    ModelBasis b = build_basis(time_grid, lambda);
    const std::size_t m = b.size();
    if (m == 0)
        throw std::invalid_argument("frame_bounds: no dual-grid frequencies inside Lambda");

    EigenMethod method = opts.method;
    if (method == EigenMethod::automatic)
        method = m <= static_cast<std::size_t>(opts.dense_threshold)
                     ? EigenMethod::dense_eigen
                     : EigenMethod::power_iteration;

    FrameReport rep;
    rep.method = method;
    if (method == EigenMethod::dense_eigen) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(dense_frame_matrix(b, E));
        rep.lower_A = std::max(eig.eigenvalues().minCoeff(), 0.0);
        rep.upper_B = std::max(eig.eigenvalues().maxCoeff(), 0.0);
        rep.iterations = 0;
    } else {
        auto S = [&](const std::vector<cplx>& v) { return apply_S(b, v, E); };
        detail::power_bounds(m, S, opts.tol, opts.max_iter, rep.lower_A,
                             rep.upper_B, rep.iterations);
    }

    if (rep.lower_A < 1e-12 * rep.upper_B) rep.lower_A = 0.0;
    rep.condition = rep.lower_A > 0.0 ? rep.upper_B / rep.lower_A
                                      : std::numeric_limits<double>::infinity();
    return rep;
}

ReconstructResult frame_reconstruct(const std::vector<cplx>& samples,
                                    const UniformGrid& time_grid,
                                    const SeparatedSet& E, const SpectrumSet& lambda,
                                    const ReconstructOptions& opts) {
    if (samples.size() != E.points.size())
        throw std::invalid_argument("frame_reconstruct: one sample per point of E required");
    ModelBasis b = build_basis(time_grid, lambda);
    const std::size_t m = b.size();
    if (m == 0)
        throw std::invalid_argument("frame_reconstruct: empty model space");

    const std::vector<cplx> y = synthesize(b, samples, E);
    const double ny = vnorm(y);

    ReconstructResult res;
    if (ny == 0.0) {
        res.signal = scatter(b, std::vector<cplx>(m, cplx{0.0, 0.0}));
        res.converged = true;
        return res;
    }

    std::vector<cplx> z(m, cplx{0.0, 0.0});
    int it = 0;

    if (opts.method == ReconstructMethod::conjugate_gradient) {
        // CG on the normal equations S z = y:
        //   r0 = p0 = y
        //   alpha = <r,r>/<Sp,p>; z += alpha p; r -= alpha Sp
        //   beta = <r',r'>/<r,r>;  p = r' + beta p
        std::vector<cplx> r = y, p = y;
        double rr = std::real(vdot(r, r));
        for (; it < opts.max_iter && std::sqrt(rr) / ny > opts.tol; ++it) {
            std::vector<cplx> Sp = apply_S(b, p, E);
            double pSp = std::real(vdot(Sp, p));
            if (pSp <= 0.0) break;  // numerically singular direction
            double alpha = rr / pSp;
            for (std::size_t j = 0; j < m; ++j) {
                z[j] += alpha * p[j];
                r[j] -= alpha * Sp[j];
            }
            double rr_next = std::real(vdot(r, r));
            double beta = rr_next / rr;
            for (std::size_t j = 0; j < m; ++j) p[j] = r[j] + beta * p[j];
            rr = rr_next;
        }
    } else {
        FrameReport rep =
            opts.report ? *opts.report : frame_bounds(time_grid, E, lambda);
        if (!(rep.lower_A > 0.0))
            throw std::invalid_argument(
                "frame_reconstruct: frame algorithm needs A > 0 (relaxation undefined)");
        const double relax = 2.0 / (rep.lower_A + rep.upper_B);
        for (; it < opts.max_iter; ++it) {
            std::vector<cplx> r = apply_S(b, z, E);
            for (std::size_t j = 0; j < m; ++j) r[j] = y[j] - r[j];
            if (vnorm(r) / ny <= opts.tol) break;
            for (std::size_t j = 0; j < m; ++j) z[j] += relax * r[j];
        }
    }

    // recompute the residual from scratch; iterative recurrences drift
    std::vector<cplx> r = apply_S(b, z, E);
    for (std::size_t j = 0; j < m; ++j) r[j] = y[j] - r[j];
    const double rel = vnorm(r) / ny;

    res.signal = scatter(b, z);
    res.iterations = it;
    res.residual = rel;
    res.converged = rel <= opts.tol;
    return res;
}

}  // namespace bf
