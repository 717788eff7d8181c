// test_spectral.cpp — Windows, spectra, entropy and the long-time two-level picture

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "dqw/core.hpp"
#include "dqw/errors.hpp"
#include "dqw/spectral.hpp"
#include "support/hermitian_jacobi.hpp"

using namespace dqw;
using namespace dqw::spectral;

namespace {

// Off-centre 21 x 21 block of a window as nested vectors for the reference solver.
std::vector<std::vector<std::complex<double>>> nested(const Eigen::MatrixXcd& m) {
    std::vector<std::vector<std::complex<double>>> out(static_cast<std::size_t>(m.rows()));
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) out[static_cast<std::size_t>(i)].push_back(m(i, j));
    }
    return out;
}

} // namespace

TEST_CASE("window at t' = 0") {
    const auto w = build_window(ModelParams{0.0, 0.0});
    CHECK(w.half_width == kMinHalfWidth);
    CHECK(w.at(0, 0) == ComplexAmplitude{1, 0});
    CHECK(w.elements.cwiseAbs().sum() == 1.0);
    const auto r = dephase_to_real(w);
    CHECK(r(w.index(0), w.index(0)) == 1.0);
}

TEST_CASE("window reaches past the ballistic peaks") {
    CHECK(build_window(ModelParams{31.8, 0.0}).half_width >= 30);
    CHECK_THROWS_AS(build_window(ModelParams{1.0, 0.0}, 0.0), InvalidInput);
    CHECK_THROWS_AS(build_window(ModelParams{1.0, 0.0}, 1e-3), InvalidInput);
}

TEST_CASE("trace preservation") {
    for (const ModelParams p : {ModelParams{3, 0}, ModelParams{12, 0.4}, ModelParams{20, 6}}) {
        const auto w = build_window(p, 1e-12);
        CHECK(std::abs(w.elements.trace().real() - 1.0) < 1e-12 + 1e-12);
        CHECK(w.truncated_mass < 1e-12);
    }
}

TEST_CASE("dephased window is real and isospectral with the raw window") {
    const ModelParams p{3.0, 0.4};
    const auto w = build_window(p);
    const auto r = dephase_to_real(w);
    for (int a = -w.half_width; a <= w.half_width; ++a) {
        for (int b = -w.half_width; b <= w.half_width; ++b) {
            const auto expected = w.at(a, b) / i_power(a - b);
            CHECK(std::abs(expected.imag()) < 1e-14);
            CHECK(r(w.index(a), w.index(b)) == doctest::Approx(expected.real()).epsilon(1e-14));
        }
    }

    // 21 x 21 block: Eigen on the real form against the reference on the complex form
    const Eigen::MatrixXcd block = w.elements.block(w.index(-10), w.index(-10), 21, 21);
    const auto ref = dqw::testing::hermitian_eigenvalues(nested(block));
    const Eigen::MatrixXd rblock = r.block(w.index(-10), w.index(-10), 21, 21);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(rblock, Eigen::EigenvaluesOnly);
    std::vector<double> mine(es.eigenvalues().data(), es.eigenvalues().data() + 21);
    std::sort(mine.begin(), mine.end(), std::greater<>());
    for (std::size_t i = 0; i < 21; ++i) CHECK(std::abs(mine[i] - ref[i]) < 1e-10);
}

TEST_CASE("spectrum of the window is the scaled I sequence") {
    // The states i^s J_{s+n}(t') are orthonormal, so rho has eigenvalues e^{-x} I_n(x).
    const ModelParams p{8.0, 0.3};
    const auto spec = eigen_spectrum(build_window(p));
    std::vector<double> exact;
    for (int n = -40; n <= 40; ++n) exact.push_back(specfun::bessel_i_scaled(n, p.x()));
    std::sort(exact.begin(), exact.end(), std::greater<>());
    for (std::size_t i = 0; i < 9; ++i) CHECK(std::abs(spec.eigenvalues[i] - exact[i]) < 1e-9);
}

TEST_CASE("pure state without dissipation") {
    const auto spec = eigen_spectrum(build_window(ModelParams{15.0, 0.0}));
    CHECK(spec.eigenvalues.front() == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(std::abs(spec.eigenvalues[1]) < 1e-10);
    double total = 0.0;
    for (double v : spec.eigenvalues) total += v;
    CHECK(total == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(std::is_sorted(spec.eigenvalues.begin(), spec.eigenvalues.end(), std::greater<>()));
}

TEST_CASE("clamping rules") {
    DensityWindow w;
    w.half_width = 1;
    w.elements = Eigen::MatrixXcd::Zero(3, 3);
    w.elements(0, 0) = 1.0;
    w.elements(1, 1) = -5e-13;
    const auto spec = eigen_spectrum(w);
    CHECK(spec.clamped_count == 1);
    w.elements(1, 1) = -1e-6;
    CHECK_THROWS_AS(eigen_spectrum(w), NumericalFailure);
    CHECK_THROWS_AS(eigen_spectrum(w, -1.0), InvalidInput);
}

TEST_CASE("entropy: bounds, limits, purity consistency") {
    CHECK(entropy_of({1.0, 0.0, 0.0}) == 0.0);
    CHECK(entropy_of({0.5, 0.5}) == doctest::Approx(std::log(2.0)));
    CHECK(entropy(ModelParams{0.0, 3.0}) == 0.0);
    for (double t : {1.0, 10.0, 40.0}) CHECK(std::abs(entropy(ModelParams{t, 0.0})) < 1e-6);

    for (const ModelParams p : {ModelParams{2, 0.2}, ModelParams{10, 1}, ModelParams{5, 5}}) {
        const auto w = build_window(p);
        const auto spec = eigen_spectrum(w);
        const double s = entropy_of(spec.eigenvalues);
        CHECK(s > 0.0);
        CHECK(s <= std::log(static_cast<double>(w.dim())));
        double sq = 0.0;
        for (double v : spec.eigenvalues) sq += v * v;
        CHECK(std::abs(sq - purity(p)) < 1e-6);
    }
}

TEST_CASE("entropy grows with dissipation at fixed time") {
    double prev = -1.0;
    for (double r : {0.0, 0.01, 0.05, 0.1, 0.5, 1.0, 2.0}) {
        const double s = entropy(ModelParams{10.0, r});
        CHECK(s > prev);
        prev = s;
    }
}

TEST_CASE("two-level entropy formula") {
    CHECK(entropy_asymptotic(ModelParams{5.0, 0.0}) == 0.0);
    CHECK(entropy_asymptotic(ModelParams{100.0, 10.0}) == doctest::Approx(std::log(2.0)));
    CHECK(entropy_small_d(ModelParams{1.0, 0.0}).value == 0.0);
    CHECK(entropy_small_d(ModelParams{1.0, 0.01}).value == doctest::Approx(0.0460517018598809137).epsilon(1e-14));
    CHECK(entropy_small_d(ModelParams{2.0, 1.0}).outside_regime);

    // Expanding the two-level form gives x(1 - ln x) against -x ln x, so the
    // ratio is 1 + 1/|ln x| and approaches 1 only logarithmically.
    for (double x : {1e-3, 5e-3, 1e-2}) {
        const ModelParams p{1.0, x};
        const double ratio = entropy_asymptotic(p) / entropy_small_d(p).value;
        CHECK(ratio == doctest::Approx(1.0 + 1.0 / -std::log(x)).epsilon(2e-2));
    }
}

TEST_CASE("asymptotic eigenvalues") {
    const ModelParams closed{100.0, 0.0};
    const auto e0 = asymptotic_eigenvalues(50, closed);
    const double c = 2.0 / (std::numbers::pi * 100.0);
    CHECK(e0.plus == doctest::Approx(c * (50.0 - std::sin(200.0))));
    CHECK(e0.minus == 0.0);

    const ModelParams classical{100.0, 10.0};
    const auto ei = asymptotic_eigenvalues(50, classical);
    CHECK(ei.plus == doctest::Approx(c * (50.0 - std::sin(200.0) + 1.0)));
    CHECK(ei.minus == doctest::Approx(c * (50.0 - std::sin(200.0) - 1.0)));

    const ModelParams p{100.0, 0.005};
    const auto pair = asymptotic_eigenvalues(1000, p);
    const double sum = pair.plus + pair.minus;
    const double e = std::exp(-2.0 * p.x());
    CHECK(std::abs(pair.plus / sum - 0.5 * (1.0 + e)) < 1e-3);
    CHECK(std::abs(pair.minus / sum - 0.5 * (1.0 - e)) < 1e-3);

    CHECK_THROWS_AS(asymptotic_eigenvalues(10, ModelParams{0.0, 1.0}), InvalidInput);
    CHECK_THROWS_AS(asymptotic_eigenvalues(0, p), InvalidInput);
}

TEST_CASE("coherent structure pattern") {
    const ModelParams p{100.0, 0.005};
    const auto ab = asymptotic_structure(p);
    CHECK(structure_element(2, 4, p) == ComplexAmplitude{ab.a, 0});
    CHECK(structure_element(1, 3, p) == ComplexAmplitude{ab.a, 0});
    CHECK(structure_element(1, 2, p) == ComplexAmplitude{0, -ab.b});
    CHECK(structure_element(2, 1, p) == ComplexAmplitude{0, ab.b});
    CHECK(std::abs(structure_element(-1, 0, p) - std::conj(structure_element(0, -1, p))) == 0.0);

    const ModelParams decayed{100.0, 5.0};
    CHECK(asymptotic_structure(decayed).b == doctest::Approx(0.0).epsilon(1e-300));
    CHECK(asymptotic_structure(decayed).a == doctest::Approx(2.0 / (std::numbers::pi * 100.0)));
}

TEST_CASE("literal long-time element") {
    const ModelParams decayed{100.0, 5.0};
    const double c = 2.0 / (std::numbers::pi * 100.0);
    // Leading cosines add to 2 (-1)^{s1+s2} once the coherent terms decay.
    CHECK(diagnostic::asymptotic_density_element(3, 3, decayed).real() == doctest::Approx(2.0 * c));
    CHECK(std::abs(diagnostic::asymptotic_density_element(1, 2, decayed)) == doctest::Approx(2.0 * c));

    // Same 1/t' order as the time-averaged profile of the closed walk.
    const ModelParams closed{100.0, 0.0};
    const auto tr = truncation_for(closed);
    double avg = 0.0;
    for (int s = -40; s <= 40; ++s) avg += probability(s, closed, tr);
    avg /= 81.0;
    const double diag = diagnostic::asymptotic_density_element(0, 0, closed).real();
    CHECK(diag / avg > 0.1);
    CHECK(diag / avg < 10.0);
    CHECK_THROWS_AS(diagnostic::asymptotic_density_element(0, 0, ModelParams{0.0, 1.0}), InvalidInput);
}
