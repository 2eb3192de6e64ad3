#include "bf/balayage.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace bf {

namespace {
constexpr double two_pi = 2.0 * std::numbers::pi;

bool contains_point(const SeparatedSet& big, const std::vector<double>& p) {
    for (const auto& q : big.points) {
        bool match = true;
        for (std::size_t i = 0; i < p.size(); ++i)
            if (q[i] != p[i]) { match = false; break; }
        if (match) return true;
    }
    return false;
}
}  // namespace

double AtomicMeasure::total_variation() const {
    double acc = 0.0;
    for (const cplx& w : weights) acc += std::abs(w);
    return acc;
}

AtomicMeasure make_atomic_measure(int dim, std::vector<std::vector<double>> points,
                                  std::vector<cplx> weights) {
    if (points.size() != weights.size())
        throw std::invalid_argument("make_atomic_measure: points/weights size mismatch");
    for (const auto& p : points)
        if (static_cast<int>(p.size()) != dim)
            throw std::invalid_argument("make_atomic_measure: point dimension mismatch");
    return AtomicMeasure{dim, std::move(points), std::move(weights)};
}

std::vector<cplx> measure_transform(const AtomicMeasure& mu,
                                    const std::vector<std::vector<double>>& freqs) {
    std::vector<cplx> out(freqs.size(), cplx{0.0, 0.0});
    for (std::size_t j = 0; j < freqs.size(); ++j) {
        cplx acc{0.0, 0.0};
        for (std::size_t k = 0; k < mu.points.size(); ++k) {
            double phase = 0.0;
            for (int i = 0; i < mu.dim; ++i) phase += mu.points[k][i] * freqs[j][i];
            acc += mu.weights[k] * std::polar(1.0, -two_pi * phase);
        }
        out[j] = acc;
    }
    return out;
}

std::vector<std::vector<double>> spectrum_grid(const SpectrumSet& lambda,
                                               int per_unit) {
    if (per_unit < 1) throw std::invalid_argument("spectrum_grid: density must be >= 1");
    const double h = 1.0 / per_unit;
    const int dim = lambda.dimension;
    std::vector<int> K(dim);
    for (int i = 0; i < dim; ++i)
        K[i] = static_cast<int>(std::floor(lambda.bounding_half_width(i) / h + 1e-12));
    std::vector<std::vector<double>> pts;
    std::vector<int> k(dim);
    for (int i = 0; i < dim; ++i) k[i] = -K[i];
    std::vector<double> gamma(dim);
    for (;;) {
        for (int i = 0; i < dim; ++i) gamma[i] = k[i] * h;
        if (spectrum_membership(lambda, gamma)) pts.push_back(gamma);
        int axis = dim - 1;
        while (axis >= 0 && ++k[axis] > K[axis]) k[axis--] = -K[axis];
        if (axis < 0) break;
    }
    return pts;
}

BalayageResult balayage_solve(const AtomicMeasure& mu, const SeparatedSet& E,
                              const SpectrumSet& lambda, int grid_density,
                              double regularization) {
    if (E.points.empty())
        throw std::invalid_argument("balayage_solve: E must be nonempty");
    if (mu.dim != E.dim || lambda.dimension != E.dim)
        throw std::invalid_argument("balayage_solve: dimension mismatch");

    const auto freqs = spectrum_grid(lambda, grid_density);
    const int rows = static_cast<int>(freqs.size());
    const int cols = static_cast<int>(E.points.size());
    if (rows == 0)
        throw std::invalid_argument("balayage_solve: empty Lambda discretization");

    double cell = 1.0;
    for (int i = 0; i < E.dim; ++i) cell /= grid_density;

    Eigen::MatrixXcd M(rows, cols);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) {
            double phase = 0.0;
            for (int i = 0; i < E.dim; ++i) phase += E.points[c][i] * freqs[r][i];
            M(r, c) = std::polar(1.0, -two_pi * phase);
        }

    const auto target = measure_transform(mu, freqs);
    Eigen::VectorXcd b(rows);
    for (int r = 0; r < rows; ++r) b(r) = target[r];

    Eigen::MatrixXcd gram = cell * (M.adjoint() * M);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(gram);
    const double lam_max = eig.eigenvalues().maxCoeff();
    const double lam_min = eig.eigenvalues().minCoeff();
    const double cond = lam_min > 0.0 ? lam_max / lam_min
                                      : std::numeric_limits<double>::infinity();

    double reg = regularization;
    if (reg < 0.0) reg = 1e-10 * rows;
    if (reg == 0.0 && cond > 1e12) {
        std::ostringstream msg;
        msg << "balayage_solve: Gram condition estimate " << cond
            << " exceeds 1e12; regularization > 0 required";
        throw std::runtime_error(msg.str());
    }

    Eigen::MatrixXcd A = gram;
    for (int c = 0; c < cols; ++c) A(c, c) += reg;
    Eigen::VectorXcd w = Eigen::LDLT<Eigen::MatrixXcd>(A).solve(cell * (M.adjoint() * b));

    const double misfit = (M * w - b).norm();
    const double target_norm = b.norm();
    double residual = 0.0;
    if (target_norm > 0.0)
        residual = misfit / target_norm;
    else if (misfit > 0.0)
        residual = std::numeric_limits<double>::infinity();

    BalayageResult out;
    out.nu.dim = E.dim;
    out.nu.points = E.points;
    out.nu.weights.assign(w.data(), w.data() + cols);
    out.residual = residual;
    out.condition_estimate = cond;
    out.rows = rows;
    out.objective = cell * misfit * misfit + reg * w.squaredNorm();
    return out;
}

std::vector<ResidualCurveRow> balayage_residual_curve(
    const AtomicMeasure& mu, const std::vector<SeparatedSet>& family,
    const SpectrumSet& lambda, int grid_density, double regularization) {
    for (std::size_t i = 0; i + 1 < family.size(); ++i) {
        for (const auto& p : family[i].points)
            if (!contains_point(family[i + 1], p))
                throw std::invalid_argument(
                    "balayage_residual_curve: family must be ordered by inclusion");
    }
    std::vector<ResidualCurveRow> rows;
    rows.reserve(family.size());
    for (const auto& E : family) {
        BalayageResult r = balayage_solve(mu, E, lambda, grid_density, regularization);
        rows.push_back({E.points.size(), E.separation, r.residual, r.condition_estimate});
    }
    return rows;
}

}  // namespace bf
