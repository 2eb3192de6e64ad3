#include "doctest.h"

#include <cmath>
#include <numbers>

#include "bf/fourier.hpp"
#include "oracles.hpp"

using namespace bf;

TEST_CASE("dft: point mass maps to the constant") {
    UniformGrid g = make_grid(1, 64, 0.25);
    GridSignal f = make_signal(g);
    f.values[32] = cplx{1.0 / 0.25, 0.0};  // unit mass at the origin
    GridSignal F = dft(f, Direction::forward);
    for (const cplx& v : F.values) {
        CHECK(v.real() == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(std::abs(v.imag()) < 1e-12);
    }
}

TEST_CASE("dft: Gaussian is self-dual") {
    UniformGrid g = make_grid(1, 512, 1.0 / 16.0);
    GridSignal f = make_signal(g);
    for (int s = 0; s < 512; ++s) {
        double x = g.coord(0, s);
        f.values[s] = std::exp(-std::numbers::pi * x * x);
    }
    GridSignal F = dft(f, Direction::forward);
    for (int s = 0; s < 512; ++s) {
        double gamma = F.grid.coord(0, s);
        CHECK(std::abs(F.values[s] - std::exp(-std::numbers::pi * gamma * gamma)) <
              1e-12);
    }
}

TEST_CASE("dft round trip and Parseval") {
    for (auto [d, n, dx] : {std::tuple<int, int, double>{1, 64, 0.3},
                            {2, 16, 0.5},
                            {1, 250, 0.11}}) {
        UniformGrid g = make_grid(d, n, dx);
        GridSignal f = oracle::random_signal(g, 99 + n);
        GridSignal back = dft(dft(f, Direction::forward), Direction::inverse);
        CHECK(oracle::rel_err(back, f) < 1e-13);
        CHECK(std::abs(l2_norm(dft(f, Direction::forward)) - l2_norm(f)) <
              1e-12 * l2_norm(f));
    }
}

TEST_CASE("dft matches the direct-summation oracle") {
    for (auto [d, n, dx] : {std::tuple<int, int, double>{1, 32, 0.7}, {2, 8, 0.5}}) {
        UniformGrid g = make_grid(d, n, dx);
        GridSignal f = oracle::random_signal(g, 31 + d);
        for (Direction dir : {Direction::forward, Direction::inverse}) {
            GridSignal got = dft(f, dir);
            GridSignal want = oracle::naive_dft(f, dir);
            CHECK(oracle::rel_err(got, want) < 1e-12);
        }
    }
}

TEST_CASE("time_frequency_shift identity, unitarity, inverse") {
    UniformGrid g = make_grid(1, 128, 0.25);
    GridSignal f = oracle::random_signal(g, 5);

    std::vector<double> zero{0.0};
    GridSignal same = time_frequency_shift(f, zero, zero);
    for (std::size_t i = 0; i < f.values.size(); ++i)
        CHECK(same.values[i] == f.values[i]);

    std::mt19937_64 gen(17);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<double> x{0.25 * static_cast<double>(static_cast<int>(gen() % 40) - 20)};
        std::vector<double> w{3.0 * oracle::unit_uniform(gen) - 1.5};
        GridSignal shifted = time_frequency_shift(f, x, w);
        CHECK(std::abs(l2_norm(shifted) - l2_norm(f)) < 1e-13 * l2_norm(f));
        std::vector<double> back{-x[0]};
        std::vector<double> wneg{-w[0]};
        GridSignal mod_off = time_frequency_shift(shifted, zero, wneg);
        GridSignal orig = time_frequency_shift(mod_off, back, zero);
        CHECK(oracle::rel_err(orig, f) < 1e-13);
    }

    // off-grid interpolated shifts invert as well
    std::vector<double> xo{0.37};
    GridSignal s1 = time_frequency_shift(f, xo, zero, true);
    std::vector<double> xb{-0.37};
    GridSignal s2 = time_frequency_shift(s1, xb, zero, true);
    CHECK(oracle::rel_err(s2, f) < 1e-12);
    CHECK(std::abs(l2_norm(s1) - l2_norm(f)) < 1e-13 * l2_norm(f));

    CHECK_THROWS_AS(time_frequency_shift(f, xo, zero), std::invalid_argument);
}

TEST_CASE("pw_project is the orthogonal projection") {
    UniformGrid g = make_grid(1, 256, 1.0 / 8.0);
    SpectrumSet lambda = box_spectrum({0.5});

    GridSignal F = oracle::random_band_limited(g, lambda, 21);
    GridSignal f = dft(F, Direction::inverse);
    GridSignal pf = pw_project(f, lambda);
    CHECK(oracle::rel_err(pf, f) < 1e-13);  // identity on the range

    GridSignal h = oracle::random_signal(g, 22);
    GridSignal ph = pw_project(h, lambda);
    GridSignal pph = pw_project(ph, lambda);
    CHECK(oracle::rel_err(pph, ph) < 1e-13);          // idempotent
    CHECK(l2_norm(ph) <= l2_norm(h) * (1 + 1e-13));   // contraction

    GridSignal u = oracle::random_signal(g, 23);
    cplx a = inner(pw_project(h, lambda), u);
    cplx b = inner(h, pw_project(u, lambda));
    CHECK(std::abs(a - b) < 1e-12 * std::abs(a));     // self-adjoint

    // translation invariance: projection commutes with on-grid shifts
    std::vector<double> x{0.5}, zero{0.0};
    GridSignal lhs = pw_project(time_frequency_shift(h, x, zero), lambda);
    GridSignal rhs = time_frequency_shift(pw_project(h, lambda), x, zero);
    CHECK(oracle::rel_err(lhs, rhs) < 1e-12);
}

TEST_CASE("pw_project rejects aliasing spectra") {
    UniformGrid g = make_grid(1, 64, 1.0 / 8.0);  // dual span [-4, 4)
    GridSignal f = oracle::random_signal(g, 2);
    CHECK_THROWS_AS(pw_project(f, box_spectrum({4.0})), std::invalid_argument);
    CHECK_THROWS_AS(pw_project(f, box_spectrum({3.0}, 1.5)), std::invalid_argument);
    CHECK_NOTHROW(pw_project(f, box_spectrum({3.9})));
}

TEST_CASE("sample_at agrees with the inverse DFT on grid points") {
    UniformGrid g = make_grid(1, 520, 1.0 / 8.0);
    SpectrumSet lambda = box_spectrum({0.5});
    GridSignal F = oracle::random_band_limited(g, lambda, 77);
    GridSignal f = dft(F, Direction::inverse);
    for (int s : {100, 260, 301}) {
        std::vector<double> x{g.coord(0, s)};
        cplx v = sample_at(F, lambda, x);
        CHECK(std::abs(v - f.values[s]) < 1e-12 * l2_norm(f));
    }
}

TEST_CASE("sample_at sinc oracle") {
    UniformGrid g = make_grid(1, 520, 1.0 / 8.0);  // n dx = 65, dual step 1/65
    SpectrumSet lambda = box_spectrum({0.5});
    GridSignal F = make_signal(g.dual(), Domain::frequency);
    for (auto& v : F.values) v = cplx{1.0, 0.0};  // indicator after masking

    std::vector<double> x0{0.0};
    CHECK(std::abs(sample_at(F, lambda, x0) - cplx{1.0, 0.0}) < 1e-13);

    std::vector<double> x3{1.0 / 3.0};
    double want = oracle::sinc(1.0 / 3.0);  // 0.82699...
    double got = sample_at(F, lambda, x3).real();
    CHECK(std::abs(got - want) < 2e-4);     // quadrature gap at this grid

    // refinement halves nothing but doubles n dx: closer to the sinc limit
    UniformGrid g2 = make_grid(1, 1040, 1.0 / 8.0);
    GridSignal F2 = make_signal(g2.dual(), Domain::frequency);
    for (auto& v : F2.values) v = cplx{1.0, 0.0};
    double got2 = sample_at(F2, lambda, x3).real();
    CHECK(std::abs(got2 - want) < std::abs(got - want));
}

TEST_CASE("sample_at is linear in F") {
    UniformGrid g = make_grid(1, 128, 1.0 / 4.0);
    SpectrumSet lambda = box_spectrum({1.0});
    GridSignal F1 = oracle::random_band_limited(g, lambda, 1);
    GridSignal F2 = oracle::random_band_limited(g, lambda, 2);
    GridSignal mix = F1;
    const cplx a{0.3, -1.1}, b{-2.0, 0.7};
    for (std::size_t i = 0; i < mix.values.size(); ++i)
        mix.values[i] = a * F1.values[i] + b * F2.values[i];
    std::vector<double> x{0.77};
    cplx lhs = sample_at(mix, lambda, x);
    cplx rhs = a * sample_at(F1, lambda, x) + b * sample_at(F2, lambda, x);
    CHECK(std::abs(lhs - rhs) < 1e-12);
}

TEST_CASE("Exponential evaluates with unit modulus") {
    Exponential e{{0.3, -0.4}};
    double gamma[2] = {1.0, 2.0};
    CHECK(std::abs(std::abs(e(gamma)) - 1.0) < 1e-15);
    Exponential zero{{0.0, 0.0}};
    CHECK(zero(gamma) == cplx{1.0, 0.0});
    double bad[1] = {1.0};
    CHECK_THROWS_AS(e(bad), std::invalid_argument);
}

TEST_CASE("refine_signal keeps original samples") {
    UniformGrid g = make_grid(1, 64, 0.25);
    GridSignal f = oracle::random_signal(g, 8);
    GridSignal r = refine_signal(f);
    CHECK(r.grid.count == 128);
    CHECK(r.grid.spacing[0] == doctest::Approx(0.125));
    for (int s = 0; s < 64; ++s)
        CHECK(std::abs(r.values[2 * s] - f.values[s]) < 1e-12);
}
