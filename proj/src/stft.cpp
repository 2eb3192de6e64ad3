#include "bf/stft.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "spectral_detail.hpp"

namespace bf {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

// g(t - x) for a grid point x given by integer offsets k (periodic wrap)
std::vector<cplx> rotate_values(const std::vector<cplx>& in, int dim, int n,
                                const std::vector<int>& k) {
    std::vector<cplx> out(in.size());
    for (std::size_t flat = 0; flat < in.size(); ++flat) {
        std::size_t rest = flat, src = 0, stride = 1;
        for (int axis = dim - 1; axis >= 0; --axis) {
            int s = static_cast<int>(rest % n);
            rest /= n;
            int shifted = ((s - k[axis]) % n + n) % n;
            src += static_cast<std::size_t>(shifted) * stride;
            stride *= static_cast<std::size_t>(n);
        }
        out[flat] = in[src];
    }
    return out;
}

void check_window(const GridSignal& g, const char* where) {
    double nrm = l2_norm(g);
    if (std::abs(nrm - 1.0) > 1e-8)
        std::fprintf(stderr, "warning: %s: window norm %.6g differs from 1\n",
                     where, nrm);
}

std::vector<double> split_head(const std::vector<double>& p, int d) {
    return std::vector<double>(p.begin(), p.begin() + d);
}
std::vector<double> split_tail(const std::vector<double>& p, int d) {
    return std::vector<double>(p.begin() + d, p.end());
}

// cached Gabor synthesis matrix: column p holds the atom e_sigma tau_s g
struct GaborOperator {
    const GridSignal* window;
    double cell;
    Eigen::MatrixXcd atoms;  // N x P

    explicit GaborOperator(const GaborSystem& sys) {
        window = &sys.window;
        cell = sys.window.grid.cell_volume();
        const int d = sys.window.grid.dim;
        const std::size_t N = sys.window.grid.total();
        const std::size_t P = sys.phase_points.points.size();
        atoms.resize(N, P);
        for (std::size_t p = 0; p < P; ++p) {
            const auto& pt = sys.phase_points.points[p];
            GridSignal a = time_frequency_shift(sys.window, split_head(pt, d),
                                                split_tail(pt, d), true);
            for (std::size_t t = 0; t < N; ++t) atoms(t, p) = a.values[t];
        }
    }

    Eigen::VectorXcd coefficients(const Eigen::VectorXcd& f) const {
        return cell * (atoms.adjoint() * f);
    }
    Eigen::VectorXcd apply(const Eigen::VectorXcd& f) const {
        return atoms * coefficients(f);
    }
    Eigen::VectorXcd synthesize(const Eigen::VectorXcd& c) const {
        return atoms * c;
    }
    Eigen::MatrixXcd dense() const { return cell * (atoms * atoms.adjoint()); }
};

Eigen::VectorXcd to_eigen(const std::vector<cplx>& v) {
    return Eigen::Map<const Eigen::VectorXcd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

}  // namespace

double stft_l2_norm(const STFTField& V) {
    double acc = 0.0;
    for (const cplx& v : V.values) acc += std::norm(v);
    return std::sqrt(V.cell_volume() * acc);
}

GridSignal gaussian_window(const UniformGrid& grid, Domain domain) {
    for (int i = 0; i < grid.dim; ++i)
        if (grid.span(i) < 8.0 - 1e-9)
            throw std::invalid_argument(
                "gaussian_window: grid span below 8 truncates more than 1e-10 of mass");
    GridSignal g = make_signal(grid, domain);
    const double amp = std::pow(2.0, grid.dim / 4.0);
    std::vector<int> idx(grid.dim, 0);
    for (std::size_t flat = 0; flat < g.values.size(); ++flat) {
        double n2 = 0.0;
        for (int i = 0; i < grid.dim; ++i) {
            double c = grid.coord(i, idx[i]);
            n2 += c * c;
        }
        g.values[flat] = amp * std::exp(-std::numbers::pi * n2);
        int axis = grid.dim - 1;
        while (axis >= 0 && ++idx[axis] >= grid.count) idx[axis--] = 0;
    }
    if (std::abs(l2_norm(g) - 1.0) > 1e-10)
        throw std::invalid_argument(
            "gaussian_window: grid too coarse, norm deviates from 1 by more than 1e-10");
    return g;
}

STFTField stft_forward(const GridSignal& f, const GridSignal& g) {
    if (!f.grid.same_geometry(g.grid))
        throw std::invalid_argument("stft_forward: f and g must share a grid");
    check_window(g, "stft_forward");
    const int dim = f.grid.dim;
    const int n = f.grid.count;
    const std::size_t N = f.grid.total();

    STFTField V;
    V.time_grid = f.grid;
    V.freq_grid = f.grid.dual();
    V.values.resize(N * N);

    GridSignal column = make_signal(f.grid, f.domain);
    std::vector<int> k(dim, -n / 2);
    for (std::size_t xf = 0; xf < N; ++xf) {
        std::vector<cplx> gs = rotate_values(g.values, dim, n, k);
        for (std::size_t t = 0; t < N; ++t)
            column.values[t] = f.values[t] * std::conj(gs[t]);
        GridSignal spec = dft(column, Direction::forward);
        std::copy(spec.values.begin(), spec.values.end(),
                  V.values.begin() + static_cast<std::ptrdiff_t>(xf * N));
        int axis = dim - 1;
        while (axis >= 0 && ++k[axis] >= n / 2) k[axis--] = -n / 2;
    }
    return V;
}

std::vector<cplx> stft_at(const GridSignal& f, const GridSignal& g,
                          const std::vector<std::vector<double>>& phase_points) {
    if (!f.grid.same_geometry(g.grid))
        throw std::invalid_argument("stft_at: f and g must share a grid");
    const int dim = f.grid.dim;
    const int n = f.grid.count;
    const double cell = f.grid.cell_volume();

    std::vector<cplx> out(phase_points.size());
    std::vector<int> idx(dim);
    for (std::size_t p = 0; p < phase_points.size(); ++p) {
        const auto& pt = phase_points[p];
        if (static_cast<int>(pt.size()) != 2 * dim)
            throw std::invalid_argument("stft_at: phase point must have dimension 2d");
        std::vector<double> zeros(dim, 0.0);
        GridSignal gs = time_frequency_shift(g, split_head(pt, dim), zeros, true);
        cplx acc{0.0, 0.0};
        std::fill(idx.begin(), idx.end(), 0);
        for (std::size_t t = 0; t < f.values.size(); ++t) {
            double phase = 0.0;
            for (int i = 0; i < dim; ++i)
                phase += f.grid.coord(i, idx[i]) * pt[dim + i];
            acc += f.values[t] * std::conj(gs.values[t]) *
                   std::polar(1.0, -two_pi * phase);
            int axis = dim - 1;
            while (axis >= 0 && ++idx[axis] >= n) idx[axis--] = 0;
        }
        out[p] = cell * acc;
    }
    return out;
}

GridSignal stft_inverse(const STFTField& V, const GridSignal& g) {
    if (!V.time_grid.same_geometry(g.grid))
        throw std::invalid_argument("stft_inverse: window grid mismatch");
    const std::size_t N = g.grid.total();
    if (V.values.size() != N * N)
        throw std::invalid_argument("stft_inverse: field must cover the full phase grid");

    GridSignal window = g;
    double nrm = l2_norm(g);
    if (std::abs(nrm - 1.0) > 1e-10) {
        std::fprintf(stderr,
                     "warning: stft_inverse: window norm %.6g, rescaling to 1\n", nrm);
        for (cplx& v : window.values) v /= nrm;
    }

    const int dim = g.grid.dim;
    const int n = g.grid.count;
    const double cell_x = V.time_grid.cell_volume();

    GridSignal out = make_signal(g.grid, Domain::time);
    GridSignal column = make_signal(V.freq_grid, Domain::frequency);
    std::vector<int> k(dim, -n / 2);
    for (std::size_t xf = 0; xf < N; ++xf) {
        std::copy(V.values.begin() + static_cast<std::ptrdiff_t>(xf * N),
                  V.values.begin() + static_cast<std::ptrdiff_t>((xf + 1) * N),
                  column.values.begin());
        GridSignal u = dft(column, Direction::inverse);
        std::vector<cplx> gs = rotate_values(window.values, dim, n, k);
        for (std::size_t t = 0; t < N; ++t)
            out.values[t] += cell_x * u.values[t] * gs[t];
        int axis = dim - 1;
        while (axis >= 0 && ++k[axis] >= n / 2) k[axis--] = -n / 2;
    }
    return out;
}

double semidiscrete_energy(const GridSignal& f, const GridSignal& g,
                           const SeparatedSet& E) {
    if (!f.grid.same_geometry(g.grid))
        throw std::invalid_argument("semidiscrete_energy: f and g must share a grid");
    if (E.dim != f.grid.dim)
        throw std::invalid_argument("semidiscrete_energy: E dimension mismatch");
    const double dual_cell = f.grid.dual().cell_volume();
    std::vector<double> zeros(f.grid.dim, 0.0);

    double acc = 0.0;
    GridSignal column = make_signal(f.grid, f.domain);
    for (const auto& x : E.points) {
        GridSignal gs = time_frequency_shift(g, x, zeros, true);
        for (std::size_t t = 0; t < f.values.size(); ++t)
            column.values[t] = f.values[t] * std::conj(gs.values[t]);
        GridSignal spec = dft(column, Direction::forward);
        double col_energy = 0.0;
        for (const cplx& v : spec.values) col_energy += std::norm(v);
        acc += dual_cell * col_energy;
    }
    return acc;
}

UpperConstant upper_constant_C(const SeparatedSet& E, const UniformGrid& probe_grid) {
    const int d = E.dim;
    if (probe_grid.dim != 2 * d)
        throw std::invalid_argument("upper_constant_C: probe grid must have dimension 2d");
    if (E.points.empty())
        throw std::invalid_argument("upper_constant_C: empty sampling set");

    // omega-quadrature of exp(-pi ||gamma + omega||^2 / 2): translation
    // invariant, computed once on a machine-precision grid
    const double h = 1.0 / 16.0;
    double line = 0.0;
    for (int k = -128; k <= 128; ++k)
        line += h * std::exp(-std::numbers::pi * (k * h) * (k * h) / 2.0);
    double omega_integral = 1.0;
    for (int i = 0; i < d; ++i) omega_integral *= line;

    UpperConstant best;
    const std::size_t total = probe_grid.total();
    for (std::size_t flat = 0; flat < total; ++flat) {
        std::vector<double> p = probe_grid.point(flat);
        double sum = 0.0;
        for (const auto& x : E.points) {
            double n2 = 0.0;
            for (int i = 0; i < d; ++i) {
                double u = p[i] + x[i];
                n2 += u * u;
            }
            sum += std::exp(-std::numbers::pi * n2 / 2.0);
        }
        double value = omega_integral * sum;
        if (value > best.value) {
            best.value = value;
            best.argmax_y = split_head(p, d);
            best.argmax_gamma = split_tail(p, d);
        }
    }
    return best;
}

FeichtingerNorm feichtinger_norm(const GridSignal& g) {
    auto evaluate = [](const GridSignal& win) {
        GridSignal G = dft(win, Direction::forward);
        GridSignal G0 = gaussian_window(G.grid, Domain::frequency);
        STFTField V = stft_forward(G, G0);
        double acc = 0.0;
        for (const cplx& v : V.values) acc += std::abs(v);
        return V.cell_volume() * acc;
    };
    const double coarse = evaluate(g);
    const double fine = evaluate(refine_signal(g));
    FeichtingerNorm out;
    out.value = fine;
    out.refinement_delta =
        std::abs(fine - coarse) / std::max(std::abs(fine), 1e-300);
    out.converged = out.refinement_delta <= 0.01;
    return out;
}

GaborSystem make_gabor_system(GridSignal window, SeparatedSet phase_points) {
    if (phase_points.dim != 2 * window.grid.dim)
        throw std::invalid_argument(
            "make_gabor_system: phase points must have dimension 2d");
    double nrm = l2_norm(window);
    if (nrm == 0.0)
        throw std::invalid_argument("make_gabor_system: zero window");
    if (std::abs(nrm - 1.0) > 1e-12)
        for (cplx& v : window.values) v /= nrm;
    return GaborSystem{std::move(window), std::move(phase_points)};
}

std::vector<cplx> gabor_coefficients(const GridSignal& f, const GaborSystem& sys) {
    if (!f.grid.same_geometry(sys.window.grid))
        throw std::invalid_argument("gabor_coefficients: grid mismatch");
    GaborOperator op(sys);
    Eigen::VectorXcd c = op.coefficients(to_eigen(f.values));
    return std::vector<cplx>(c.data(), c.data() + c.size());
}

GridSignal gabor_frame_apply(const GridSignal& f, const GaborSystem& sys) {
    if (!f.grid.same_geometry(sys.window.grid))
        throw std::invalid_argument("gabor_frame_apply: grid mismatch");
    GaborOperator op(sys);
    Eigen::VectorXcd out = op.apply(to_eigen(f.values));
    GridSignal res = make_signal(f.grid, f.domain);
    for (std::size_t t = 0; t < res.values.size(); ++t) res.values[t] = out(t);
    return res;
}

FrameReport gabor_frame_bounds(const GaborSystem& sys, const BoundsOptions& opts) {
    GaborOperator op(sys);
    const std::size_t N = sys.window.grid.total();

    EigenMethod method = opts.method;
    if (method == EigenMethod::automatic)
        method = N <= static_cast<std::size_t>(opts.dense_threshold)
                     ? EigenMethod::dense_eigen
                     : EigenMethod::power_iteration;

    FrameReport rep;
    rep.method = method;
    if (method == EigenMethod::dense_eigen) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(op.dense());
        rep.lower_A = std::max(eig.eigenvalues().minCoeff(), 0.0);
        rep.upper_B = std::max(eig.eigenvalues().maxCoeff(), 0.0);
        rep.iterations = 0;
    } else {
        auto S = [&](const std::vector<cplx>& v) {
            Eigen::VectorXcd out = op.apply(to_eigen(v));
            return std::vector<cplx>(out.data(), out.data() + out.size());
        };
        detail::power_bounds(N, S, opts.tol, opts.max_iter, rep.lower_A,
                             rep.upper_B, rep.iterations);
    }

    if (rep.lower_A < 1e-12 * rep.upper_B) rep.lower_A = 0.0;
    rep.condition = rep.lower_A > 0.0 ? rep.upper_B / rep.lower_A
                                      : std::numeric_limits<double>::infinity();
    return rep;
}

GaborReconstructResult gabor_reconstruct(const std::vector<cplx>& coeffs,
                                         const GaborSystem& sys, double tol,
                                         int max_iter) {
    if (coeffs.size() != sys.phase_points.points.size())
        throw std::invalid_argument(
            "gabor_reconstruct: one coefficient per phase point required");
    GaborOperator op(sys);
    const Eigen::VectorXcd y = op.synthesize(to_eigen(coeffs));
    const double ny = y.norm();

    GaborReconstructResult res;
    res.signal = make_signal(sys.window.grid, Domain::time);
    if (ny == 0.0) {
        res.converged = true;
        return res;
    }

    // CG on S z = y (S Hermitian PSD, y in range(S) for consistent coeffs)
    Eigen::VectorXcd z = Eigen::VectorXcd::Zero(y.size());
    Eigen::VectorXcd r = y, p = y;
    double rr = r.squaredNorm();
    int it = 0;
    for (; it < max_iter && std::sqrt(rr) / ny > tol; ++it) {
        Eigen::VectorXcd Sp = op.apply(p);
        double pSp = std::real(p.dot(Sp));
        if (pSp <= 0.0) break;
        double alpha = rr / pSp;
        z += alpha * p;
        r -= alpha * Sp;
        double rr_next = r.squaredNorm();
        p = r + (rr_next / rr) * p;
        rr = rr_next;
    }

    const double rel = (y - op.apply(z)).norm() / ny;
    for (std::size_t t = 0; t < res.signal.values.size(); ++t)
        res.signal.values[t] = z(static_cast<Eigen::Index>(t));
    res.iterations = it;
    res.residual = rel;
    res.converged = rel <= tol;
    return res;
}

}  // namespace bf
