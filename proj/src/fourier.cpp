#include "bf/fourier.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace bf {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

std::mutex& fftw_planner_mutex() {
    static std::mutex m;
    return m;
}

// in-place c2c transform of a row-major n^dim array; sign = FFTW_FORWARD
// or FFTW_BACKWARD, no normalization
void raw_fft(std::vector<cplx>& buf, int dim, int count, int sign) {
    std::vector<int> dims(dim, count);
    auto* data = reinterpret_cast<fftw_complex*>(buf.data());
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(fftw_planner_mutex());
        plan = fftw_plan_dft(dim, dims.data(), data, data, sign, FFTW_ESTIMATE);
    }
    if (!plan) throw std::runtime_error("fftw plan creation failed");
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(fftw_planner_mutex());
        fftw_destroy_plan(plan);
    }
}

// rotate every axis by n/2; self-inverse for even n. Maps centered storage
// (k + n/2) to standard DFT order and back.
std::vector<cplx> half_rotate(const std::vector<cplx>& in, int dim, int count) {
    std::vector<cplx> out(in.size());
    const int half = count / 2;
    for (std::size_t flat = 0; flat < in.size(); ++flat) {
        std::size_t rest = flat, target = 0, stride = 1;
        for (int axis = dim - 1; axis >= 0; --axis) {
            int s = static_cast<int>(rest % count);
            rest /= count;
            target += static_cast<std::size_t>((s + half) % count) * stride;
            stride *= static_cast<std::size_t>(count);
        }
        out[target] = in[flat];
    }
    return out;
}

// signed frequency index for standard-order storage m: m < n/2 ? m : m - n
inline int signed_index(int m, int count) { return m < count / 2 ? m : m - count; }

}  // namespace

cplx Exponential::operator()(std::span<const double> gamma) const {
    if (gamma.size() != x.size())
        throw std::invalid_argument("Exponential: dimension mismatch");
    double phase = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) phase += x[i] * gamma[i];
    return std::polar(1.0, two_pi * phase);
}

GridSignal dft(const GridSignal& f, Direction dir) {
    if (f.values.size() != f.grid.total())
        throw std::invalid_argument("dft: value count does not match grid");
    GridSignal out;
    out.grid = f.grid.dual();
    out.domain = f.domain == Domain::time ? Domain::frequency : Domain::time;
    std::vector<cplx> buf = half_rotate(f.values, f.grid.dim, f.grid.count);
    raw_fft(buf, f.grid.dim, f.grid.count,
            dir == Direction::forward ? FFTW_FORWARD : FFTW_BACKWARD);
    out.values = half_rotate(buf, f.grid.dim, f.grid.count);
    const double scale = f.grid.cell_volume();
    for (cplx& v : out.values) v *= scale;
    return out;
}

GridSignal time_frequency_shift(const GridSignal& f, std::span<const double> x,
                                std::span<const double> omega, bool interpolate) {
    const int dim = f.grid.dim;
    const int n = f.grid.count;
    if (static_cast<int>(x.size()) != dim || static_cast<int>(omega.size()) != dim)
        throw std::invalid_argument("time_frequency_shift: dimension mismatch");

    // shift: on-grid -> circular index rotation (exact), else phase ramp
    std::vector<int> k(dim);
    bool on_grid = true;
    for (int i = 0; i < dim; ++i) {
        double r = x[i] / f.grid.spacing[i];
        k[i] = static_cast<int>(std::llround(r));
        if (std::abs(r - k[i]) > 1e-9 * std::max(1.0, std::abs(r))) on_grid = false;
    }

    GridSignal out = f;
    if (on_grid) {
        for (std::size_t flat = 0; flat < f.values.size(); ++flat) {
            std::size_t rest = flat, src = 0, stride = 1;
            for (int axis = dim - 1; axis >= 0; --axis) {
                int s = static_cast<int>(rest % n);
                rest /= n;
                int shifted = ((s - k[axis]) % n + n) % n;
                src += static_cast<std::size_t>(shifted) * stride;
                stride *= static_cast<std::size_t>(n);
            }
            out.values[flat] = f.values[src];
        }
    } else {
        if (!interpolate)
            throw std::invalid_argument(
                "time_frequency_shift: x is off-grid; pass interpolate=true");
        std::vector<cplx> buf = half_rotate(f.values, dim, n);
        raw_fft(buf, dim, n, FFTW_FORWARD);
        std::vector<int> idx(dim, 0);
        for (std::size_t flat = 0; flat < buf.size(); ++flat) {
            double phase = 0.0;
            for (int i = 0; i < dim; ++i)
                phase += x[i] * signed_index(idx[i], n) / (n * f.grid.spacing[i]);
            buf[flat] *= std::polar(1.0, -two_pi * phase);
            int axis = dim - 1;
            while (axis >= 0 && ++idx[axis] >= n) idx[axis--] = 0;
        }
        raw_fft(buf, dim, n, FFTW_BACKWARD);
        out.values = half_rotate(buf, dim, n);
        const double inv_total = 1.0 / static_cast<double>(f.grid.total());
        for (cplx& v : out.values) v *= inv_total;
    }

    bool modulate = false;
    for (int i = 0; i < dim; ++i)
        if (omega[i] != 0.0) modulate = true;
    if (modulate) {
        for (std::size_t flat = 0; flat < out.values.size(); ++flat) {
            std::size_t rest = flat;
            double phase = 0.0;
            for (int axis = dim - 1; axis >= 0; --axis) {
                int s = static_cast<int>(rest % n);
                rest /= n;
                phase += omega[axis] * out.grid.coord(axis, s);
            }
            out.values[flat] *= std::polar(1.0, two_pi * phase);
        }
    }
    return out;
}

GridSignal mask_to_spectrum(GridSignal F, const SpectrumSet& lambda) {
    if (lambda.dimension != F.grid.dim)
        throw std::invalid_argument("mask_to_spectrum: dimension mismatch");
    std::vector<double> gamma(F.grid.dim);
    std::vector<int> idx(F.grid.dim, 0);
    for (std::size_t flat = 0; flat < F.values.size(); ++flat) {
        for (int i = 0; i < F.grid.dim; ++i) gamma[i] = F.grid.coord(i, idx[i]);
        if (!spectrum_membership(lambda, gamma)) F.values[flat] = cplx{0.0, 0.0};
        int axis = F.grid.dim - 1;
        while (axis >= 0 && ++idx[axis] >= F.grid.count) idx[axis--] = 0;
    }
    return F;
}

GridSignal pw_project(const GridSignal& f, const SpectrumSet& lambda) {
    if (lambda.dimension != f.grid.dim)
        throw std::invalid_argument("pw_project: dimension mismatch");
    UniformGrid dual = f.grid.dual();
    for (int i = 0; i < f.grid.dim; ++i) {
        if (!(lambda.bounding_half_width(i) < dual.span(i) / 2.0))
            throw std::invalid_argument(
                "pw_project: spectrum exceeds representable frequency span (aliasing)");
    }
    GridSignal F = mask_to_spectrum(dft(f, Direction::forward), lambda);
    GridSignal out = dft(F, Direction::inverse);
    out.domain = f.domain;
    return out;
}

cplx sample_at(const GridSignal& F, const SpectrumSet& lambda,
               std::span<const double> x) {
    const int dim = F.grid.dim;
    if (lambda.dimension != dim || static_cast<int>(x.size()) != dim)
        throw std::invalid_argument("sample_at: dimension mismatch");
    std::vector<double> gamma(dim);
    std::vector<int> idx(dim, 0);
    cplx acc{0.0, 0.0};
    for (std::size_t flat = 0; flat < F.values.size(); ++flat) {
        for (int i = 0; i < dim; ++i) gamma[i] = F.grid.coord(i, idx[i]);
        if (spectrum_membership(lambda, gamma)) {
            double phase = 0.0;
            for (int i = 0; i < dim; ++i) phase += x[i] * gamma[i];
            acc += F.values[flat] * std::polar(1.0, two_pi * phase);
        }
        int axis = dim - 1;
        while (axis >= 0 && ++idx[axis] >= F.grid.count) idx[axis--] = 0;
    }
    return F.grid.cell_volume() * acc;
}

GridSignal refine_signal(const GridSignal& f) {
    const int dim = f.grid.dim;
    const int n = f.grid.count;
    GridSignal F = dft(f, Direction::forward);
    UniformGrid fine = make_grid(dim, 2 * n, f.grid.spacing[0] / 2.0);
    for (int i = 0; i < dim; ++i) fine.spacing[i] = f.grid.spacing[i] / 2.0;
    GridSignal Fpad = make_signal(fine.dual(), F.domain);
    // copy the centered block: storage offset n/2 per axis in the padded grid
    std::vector<int> idx(dim, 0);
    for (std::size_t flat = 0; flat < F.values.size(); ++flat) {
        std::size_t target = 0, stride = 1;
        for (int axis = dim - 1; axis >= 0; --axis) {
            target += static_cast<std::size_t>(idx[axis] + n / 2) * stride;
            stride *= static_cast<std::size_t>(2 * n);
        }
        Fpad.values[target] = F.values[flat];
        int axis = dim - 1;
        while (axis >= 0 && ++idx[axis] >= n) idx[axis--] = 0;
    }
    GridSignal out = dft(Fpad, Direction::inverse);
    out.domain = f.domain;
    return out;
}

}  // namespace bf
