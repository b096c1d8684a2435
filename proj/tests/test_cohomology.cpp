#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "warped/cohomology.hpp"
#include "warped/errors.hpp"
#include "warped/rotation.hpp"

using namespace warped;

namespace {

const double kTau = 2.0 * std::numbers::pi;

// Independent quadrature oracle: plain DFT, no noise cleanup.
std::complex<double> raw_fourier_coeff(const PointFunction& f, double r, int k, int big_k) {
    int m_nodes = 4 * big_k + 1;
    std::complex<double> acc = 0.0;
    for (int m = 0; m < m_nodes; ++m) {
        double x = static_cast<double>(m) / m_nodes;
        acc += f(std::polar(r, kTau * x)) * std::polar(1.0, -kTau * k * x);
    }
    return acc / static_cast<double>(m_nodes);
}

CircleFunction random_circle(std::mt19937_64& rng, int big_k, double amplitude = 1.0) {
    std::uniform_real_distribution<double> u(-amplitude, amplitude);
    std::vector<std::complex<double>> c(2 * static_cast<std::size_t>(big_k) + 1);
    c[static_cast<std::size_t>(big_k)] = {u(rng), 0.0};
    for (int k = 1; k <= big_k; ++k) {
        std::complex<double> v{u(rng), u(rng)};
        c[static_cast<std::size_t>(big_k + k)] = v;
        c[static_cast<std::size_t>(big_k - k)] = std::conj(v);
    }
    return CircleFunction(big_k, std::move(c));
}

DiskFunction random_disk(std::mt19937_64& rng, int big_k, std::size_t intervals,
                         bool zero_means = false) {
    auto radii = DiskFunction::uniform_radii(intervals);
    std::vector<CircleFunction> slices;
    for (std::size_t j = 0; j < radii.size(); ++j) {
        auto g = random_circle(rng, big_k);
        auto coeffs = g.coeffs();
        if (zero_means) coeffs[static_cast<std::size_t>(big_k)] = 0.0;
        if (radii[j] == 0.0) {
            for (int k = 1; k <= big_k; ++k) {
                coeffs[static_cast<std::size_t>(big_k + k)] = 0.0;
                coeffs[static_cast<std::size_t>(big_k - k)] = 0.0;
            }
        }
        slices.emplace_back(big_k, std::move(coeffs));
    }
    return DiskFunction(radii, std::move(slices));
}

double sup_coeff_distance(const DiskFunction& a, const DiskFunction& b) {
    double sup = 0.0;
    for (std::size_t j = 0; j < a.slice_count(); ++j) {
        for (int k = -a.truncation(); k <= a.truncation(); ++k) {
            sup = std::max(sup, std::abs(a.slice(j).coeff(k) - b.slice(j).coeff(k)));
        }
    }
    return sup;
}

}  // namespace

TEST_CASE("circle functions are stored with exact conjugate symmetry") {
    std::vector<std::complex<double>> c(5);
    c[2] = {1.0, 1e-16};          // c_0 with a stray imaginary part
    c[3] = {0.25, -0.5};          // c_1
    c[1] = {0.25, 0.5 + 1e-12};   // c_{-1}, off by noise only
    c[4] = {0.0, 0.0};
    c[0] = {0.0, 0.0};
    CircleFunction g(2, c);
    CHECK(g.coeff(0).imag() == 0.0);
    CHECK(g.coeff(-1) == std::conj(g.coeff(1)));

    std::vector<std::complex<double>> bad(5);
    bad[3] = {0.25, -0.5};
    bad[1] = {0.7, 0.5};  // far from conj(c_1)
    CHECK_THROWS_AS(CircleFunction(2, bad), std::invalid_argument);
    CHECK_THROWS_AS(CircleFunction(2, std::vector<std::complex<double>>(4)),
                    std::invalid_argument);
    CHECK_THROWS_AS(g.coeff(3), std::out_of_range);
}

TEST_CASE("circle evaluation matches the direct Fourier sum") {
    std::mt19937_64 rng(7);
    auto g = random_circle(rng, 8);
    for (double x : {0.0, 0.125, 0.3, 0.77, 0.999}) {
        std::complex<double> direct = 0.0;
        for (int k = -8; k <= 8; ++k) {
            direct += g.coeff(k) * std::polar(1.0, kTau * k * x);
        }
        CHECK(std::fabs(direct.imag()) < 1e-14);
        CHECK(g.eval(x) == doctest::Approx(direct.real()).epsilon(1e-12));
    }
    CHECK(CircleFunction::constant(2.5, 4).eval(0.33) == doctest::Approx(2.5));
}

TEST_CASE("disk function validation") {
    CHECK_THROWS_AS(DiskFunction({}, {}), std::invalid_argument);
    CHECK_THROWS_AS(DiskFunction({0.0, 0.0}, {CircleFunction(2), CircleFunction(2)}),
                    std::invalid_argument);
    CHECK_THROWS_AS(DiskFunction({0.0, 0.5}, {CircleFunction(2), CircleFunction(3)}),
                    std::invalid_argument);
    CHECK_THROWS_AS(DiskFunction({0.0, 1.5}, {CircleFunction(2), CircleFunction(2)}),
                    std::invalid_argument);
    // A nonzero mode on the r = 0 slice is geometric nonsense.
    std::vector<std::complex<double>> c(5);
    c[3] = {0.1, 0.0};
    c[1] = {0.1, 0.0};
    CHECK_THROWS_AS(DiskFunction({0.0, 1.0}, {CircleFunction(2, c), CircleFunction(2)}),
                    std::invalid_argument);
    CHECK_NOTHROW(DiskFunction({1.0}, {CircleFunction::constant(1.0, 2)}));

    auto radii = DiskFunction::uniform_radii(32);
    REQUIRE(radii.size() == 33);
    CHECK(radii.front() == 0.0);
    CHECK(radii.back() == 1.0);
    CHECK(radii[8] == 0.25);
}

TEST_CASE("builtin sampling produces the closed-form coefficients") {
    auto radii = DiskFunction::uniform_radii(8);
    auto abs2 = sample_builtin("abs2", 6, radii);
    auto re = sample_builtin("re", 6, radii);
    auto im = sample_builtin("im", 6, radii);
    for (std::size_t j = 0; j < radii.size(); ++j) {
        double r = radii[j];
        CHECK(abs2.slice(j).coeff(0).real() == doctest::Approx(r * r).epsilon(1e-14));
        CHECK(std::abs(re.slice(j).coeff(1) - std::complex<double>(r / 2.0, 0.0)) < 1e-15);
        CHECK(re.slice(j).coeff(1).imag() == 0.0);  // dust snapped away
        CHECK(im.slice(j).coeff(1).imag() == doctest::Approx(-r / 2.0).epsilon(1e-14));
        for (int k = 1; k <= 6; ++k) {
            CHECK(abs2.slice(j).coeff(k) == std::complex<double>(0.0, 0.0));
            if (k > 1) {
                CHECK(re.slice(j).coeff(k) == std::complex<double>(0.0, 0.0));
            }
        }
    }
}

TEST_CASE("monomial sampling agrees with the raw quadrature oracle") {
    auto radii = std::vector<double>{0.5, 1.0};
    auto f = sample_builtin("monomial:3", 6, radii);
    PointFunction mono3 = [](std::complex<double> z) { return (z * z * z).real(); };
    for (std::size_t j = 0; j < radii.size(); ++j) {
        for (int k = -6; k <= 6; ++k) {
            auto oracle = raw_fourier_coeff(mono3, radii[j], k, 6);
            CHECK(std::abs(f.slice(j).coeff(k) - oracle) < 1e-13);
        }
    }
    CHECK(std::abs(f.slice(1).coeff(3) - std::complex<double>(0.5, 0.0)) < 1e-15);
    CHECK(std::abs(f.slice(1).coeff(-3) - std::complex<double>(0.5, 0.0)) < 1e-15);
}

TEST_CASE("builtin parsing rejects bad specs") {
    auto radii = DiskFunction::uniform_radii(4);
    CHECK_THROWS_AS(sample_builtin("gauss", 4, radii), UnknownBuiltin);
    CHECK_THROWS_AS(sample_builtin("monomial:x", 4, radii), UnknownBuiltin);
    CHECK_THROWS_AS(sample_builtin("const:abc", 4, radii), UnknownBuiltin);
    // Degree 0 and aliasing degrees are structural errors.
    CHECK_THROWS_AS(sample_builtin("monomial:0", 4, radii), std::invalid_argument);
    CHECK_THROWS_AS(sample_builtin("monomial:9", 4, radii), std::invalid_argument);
    CHECK_NOTHROW(sample_builtin("monomial:8", 4, radii));
    CHECK_NOTHROW(sample_builtin("const:2.5", 4, radii));
    CHECK_NOTHROW(sample_builtin("zero", 4, radii));
}

TEST_CASE("disk evaluation: closed forms, interpolation, range errors") {
    auto radii = DiskFunction::uniform_radii(32);
    auto abs2 = sample_builtin("abs2", 8, radii);
    CHECK(abs2.eval({0.5, 0.0}) == doctest::Approx(0.25).epsilon(1e-13));
    auto re = sample_builtin("re", 8, radii);
    CHECK(std::fabs(re.eval(std::polar(1.0, std::numbers::pi / 2.0))) < 1e-14);

    // Halfway between slices, linear interpolation of r^2 errs by h^2/4.
    double mid = (radii[10] + radii[11]) / 2.0;
    double h = radii[11] - radii[10];
    double expected = (radii[10] * radii[10] + radii[11] * radii[11]) / 2.0;
    CHECK(std::fabs(abs2.eval({mid, 0.0}) - expected) < 1e-13);
    CHECK(std::fabs(abs2.eval({mid, 0.0}) - mid * mid) <= h * h / 4.0 + 1e-13);

    CHECK_THROWS_AS(abs2.eval({1.01, 0.0}), RadiusOutOfRange);
    DiskFunction boundary({1.0}, {CircleFunction::constant(1.0, 2)});
    CHECK(boundary.eval(std::polar(1.0, 0.4)) == doctest::Approx(1.0));
    CHECK_THROWS_AS(boundary.eval({0.5, 0.0}), RadiusOutOfRange);
}

TEST_CASE("evaluation is exact for monomials at node radii") {
    auto radii = DiskFunction::uniform_radii(8);
    auto f = sample_builtin("monomial:4", 8, radii);
    for (double r : {0.25, 0.75, 1.0}) {
        for (double x : {0.1, 0.37, 0.9}) {
            std::complex<double> z = std::polar(r, kTau * x);
            std::complex<double> z4 = z * z * z * z;
            CHECK(f.eval(z) == doctest::Approx(z4.real()).epsilon(1e-12));
        }
    }
}

TEST_CASE("coboundary of rotation-invariant functions vanishes identically") {
    auto a = RotationNumber::golden();
    auto radii = DiskFunction::uniform_radii(8);
    for (const char* name : {"abs2", "const:3.7"}) {
        auto d = delta_alpha(a, sample_builtin(name, 6, radii));
        for (std::size_t j = 0; j < d.slice_count(); ++j) {
            for (int k = -6; k <= 6; ++k) {
                CHECK(d.slice(j).coeff(k) == std::complex<double>(0.0, 0.0));
            }
        }
    }
}

TEST_CASE("coboundary acts as the single-mode multiplier") {
    auto a = RotationNumber::golden();
    auto radii = std::vector<double>{1.0};
    auto f = sample_builtin("monomial:5", 8, radii);
    auto d = delta_alpha(a, f);
    std::complex<double> mult = std::polar(1.0, kTau * 5.0 * a.value()) - 1.0;
    CHECK(std::abs(d.slice(0).coeff(5) - mult * f.slice(0).coeff(5)) < 1e-14);
    CHECK(std::abs(d.slice(0).coeff(-5) - std::conj(mult) * f.slice(0).coeff(-5)) < 1e-14);
}

TEST_CASE("coboundary in coefficient space equals the pointwise difference") {
    auto a = RotationNumber::golden();
    std::mt19937_64 rng(11);
    auto f = random_disk(rng, 10, 4);
    auto d = delta_alpha(a, f);
    for (double r : f.radii()) {
        if (r == 0.0) continue;
        for (double x : {0.05, 0.3, 0.62}) {
            std::complex<double> z = std::polar(r, kTau * x);
            std::complex<double> zr = std::polar(r, kTau * (x + a.value()));
            CHECK(d.eval(z) == doctest::Approx(f.eval(zr) - f.eval(z)).epsilon(1e-11));
        }
    }
}

TEST_CASE("coboundary is linear and kills means exactly") {
    auto a = RotationNumber::golden();
    std::mt19937_64 rng(13);
    auto f = random_disk(rng, 12, 6);
    auto g = random_disk(rng, 12, 6);
    auto df = delta_alpha(a, f);
    auto dg = delta_alpha(a, g);
    for (std::size_t j = 0; j < f.slice_count(); ++j) {
        CHECK(df.slice(j).coeff(0) == std::complex<double>(0.0, 0.0));
        for (int k = -12; k <= 12; ++k) {
            // 2 f + (-3) g, combined coefficient-wise.
            std::vector<std::complex<double>> c;
            auto lhs = 2.0 * df.slice(j).coeff(k) - 3.0 * dg.slice(j).coeff(k);
            auto combo = 2.0 * f.slice(j).coeff(k) - 3.0 * g.slice(j).coeff(k);
            auto mult = k == 0 ? std::complex<double>(0.0, 0.0)
                               : std::polar(1.0, kTau * k * a.value()) - 1.0;
            CHECK(std::abs(lhs - mult * combo) < 1e-13);
        }
    }
}

TEST_CASE("orbit averages reproduce the closed forms") {
    auto radii = DiskFunction::uniform_radii(32);
    auto abs2_means = orbit_average(sample_builtin("abs2", 8, radii));
    auto re_means = orbit_average(sample_builtin("re", 8, radii));
    auto one_means = orbit_average(sample_builtin("const:1", 8, radii));
    for (std::size_t j = 0; j < radii.size(); ++j) {
        CHECK(std::fabs(abs2_means[j] - radii[j] * radii[j]) < 1e-12);
        CHECK(std::fabs(re_means[j]) < 1e-13);
        CHECK(one_means[j] == doctest::Approx(1.0).epsilon(1e-14));
    }
}

TEST_CASE("solving the coboundary equation round-trips a known solution") {
    auto a = RotationNumber::golden();
    auto radii = DiskFunction::uniform_radii(8);
    auto sigma = sample_builtin("re", 6, radii);
    auto f = delta_alpha(a, sigma);
    auto report = solve_coboundary(a, f);
    REQUIRE(report.status == CoboundaryStatus::solved);
    REQUIRE(report.sigma.has_value());
    CHECK(report.residual <= 1e-12);
    // re already has zero means, so the gauge-normalized solution is re itself.
    CHECK(sup_coeff_distance(*report.sigma, sigma) < 1e-12);
    CHECK(report.truncation == 6);
    CHECK(report.radial_intervals == 8);
}

TEST_CASE("functions with nonzero orbit averages are obstructed") {
    auto a = RotationNumber::golden();
    auto radii = DiskFunction::uniform_radii(32);
    auto report = solve_coboundary(a, sample_builtin("abs2", 8, radii));
    CHECK(report.status == CoboundaryStatus::obstructed);
    CHECK_FALSE(report.sigma.has_value());
    REQUIRE(report.obstruction_profile.size() == radii.size());
    for (std::size_t j = 0; j < radii.size(); ++j) {
        CHECK(std::fabs(report.obstruction_profile[j] - radii[j] * radii[j]) < 1e-12);
    }
}

TEST_CASE("the zero function solves trivially") {
    auto a = RotationNumber::golden();
    auto report = solve_coboundary(a, sample_builtin("zero", 4, DiskFunction::uniform_radii(4)));
    REQUIRE(report.status == CoboundaryStatus::solved);
    CHECK(report.residual == 0.0);
    CHECK(report.amplification.value == 0.0);
    CHECK(report.amplification.mode == 0);
}

TEST_CASE("random coboundaries round-trip to the mean-free part") {
    auto a = RotationNumber::golden();
    std::mt19937_64 rng(20260816);
    for (int trial = 0; trial < 10; ++trial) {
        int big_k = 16 + (trial % 4) * 16;  // 16..64
        auto sigma = random_disk(rng, big_k, 8);
        auto f = delta_alpha(a, sigma);
        auto report = solve_coboundary(a, f);
        REQUIRE(report.status == CoboundaryStatus::solved);
        // The solver normalizes c_0 to zero; compare against sigma minus means.
        double sup = 0.0;
        for (std::size_t j = 0; j < sigma.slice_count(); ++j) {
            for (int k = -big_k; k <= big_k; ++k) {
                auto expect = k == 0 ? std::complex<double>(0.0, 0.0)
                                     : sigma.slice(j).coeff(k);
                sup = std::max(sup, std::abs(report.sigma->slice(j).coeff(k) - expect));
            }
        }
        CHECK(sup <= 1e-10);
        CHECK(report.residual <= report.tolerances.solve_tol);
    }
}

TEST_CASE("solutions of mean-free equations reproduce the data") {
    auto a = RotationNumber::golden();
    std::mt19937_64 rng(5);
    auto f = random_disk(rng, 24, 8, /*zero_means=*/true);
    auto report = solve_coboundary(a, f);
    REQUIRE(report.status == CoboundaryStatus::solved);
    auto back = delta_alpha(a, *report.sigma);
    CHECK(sup_coeff_distance(back, f) <= report.tolerances.solve_tol);
}

TEST_CASE("amplification reports the worst small divisor among present modes") {
    auto gold = RotationNumber::golden();
    auto radii = DiskFunction::uniform_radii(8);
    auto f = sample_builtin("re", 32, radii);
    auto report = solve_coboundary(gold, f);
    REQUIRE(report.status == CoboundaryStatus::solved);
    // re carries only the k = +-1 pair, so the ratio must be 1/d_1.
    CHECK(report.amplification.mode == 1);
    CHECK(report.amplification.value ==
          doctest::Approx(1.0 / gold.small_divisor(1)).epsilon(1e-12));

    auto liou = RotationNumber::from_cf({10, 100, 10000, 100000000});
    auto report2 = solve_coboundary(liou, f);
    REQUIRE(report2.status == CoboundaryStatus::solved);
    CHECK(report2.amplification.value ==
          doctest::Approx(1.0 / liou.small_divisor(1)).epsilon(1e-12));
    // The qualitative contrast: the Liouville-like number amplifies more.
    CHECK(report2.amplification.value > report.amplification.value);
    double factor = report2.amplification.value / report.amplification.value;
    MESSAGE("liouville/golden amplification factor at K=32: ", factor);
}

TEST_CASE("near-resonant modes trip the overflow guard") {
    // alpha = [0; 1, 10^9] puts 1*alpha within 1e-9 of the circle's origin,
    // so d_1 ~ 6.3e-9; a mode of size 1e4 then amplifies past 1e12.
    auto a = RotationNumber::from_cf({1, 1000000000});
    std::vector<std::complex<double>> c(3);
    c[2] = {1.0e4, 0.0};
    c[0] = {1.0e4, 0.0};
    DiskFunction f({1.0}, {CircleFunction(1, c)});
    CHECK_THROWS_AS(solve_coboundary(a, f), SmallDivisorOverflow);

    SolveOptions loose;
    loose.overflow_guard = 1e20;
    auto report = solve_coboundary(a, f, loose);
    CHECK(report.status == CoboundaryStatus::solved);
    CHECK(report.amplification.value > 1e8);
}

TEST_CASE("triviality verdicts carry their certificates") {
    auto a = RotationNumber::golden();
    auto radii = DiskFunction::uniform_radii(16);
    auto bad = class_is_trivial(a, sample_builtin("abs2", 8, radii));
    CHECK_FALSE(bad.trivial);
    CHECK(bad.report.obstruction_profile.back() == doctest::Approx(1.0).epsilon(1e-12));

    std::mt19937_64 rng(99);
    auto good = class_is_trivial(a, delta_alpha(a, random_disk(rng, 16, 8)));
    CHECK(good.trivial);
    CHECK(good.report.sigma.has_value());
}

TEST_CASE("the boundary cocycle generator is non-trivial on the circle") {
    auto a = RotationNumber::golden();
    DiskFunction boundary({1.0}, {CircleFunction::constant(1.0, 8)});
    auto cert = class_is_trivial(a, boundary);
    CHECK_FALSE(cert.trivial);
    REQUIRE(cert.report.obstruction_profile.size() == 1);
    CHECK(cert.report.obstruction_profile[0] == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("gauge residual: closed forms and the value-space oracle") {
    auto a = RotationNumber::golden();
    CHECK(gauge_residual(a, CircleFunction::constant(4.2, 8), 0) == 0.0);
    CHECK(gauge_residual(a, CircleFunction::constant(4.2, 8), 1) == doctest::Approx(1.0));
    CHECK(gauge_residual(a, CircleFunction::constant(0.0, 4), 3) == doctest::Approx(3.0));

    // Independent route: evaluate g(x + n alpha) - g(x) - n on a fine grid
    // and take the discrete L2 norm.
    std::mt19937_64 rng(17);
    for (std::int64_t n : {1, -2, 5}) {
        auto g = random_circle(rng, 12);
        int m_nodes = 4 * 12 + 1;
        double acc = 0.0;
        for (int m = 0; m < m_nodes; ++m) {
            double x = static_cast<double>(m) / m_nodes;
            double diff = g.eval(x + static_cast<double>(n) * a.value()) - g.eval(x) -
                          static_cast<double>(n);
            acc += diff * diff;
        }
        double oracle = std::sqrt(acc / m_nodes);
        CHECK(gauge_residual(a, g, n) == doctest::Approx(oracle).epsilon(1e-11));
    }
}

TEST_CASE("gauge residual is bounded below by |n|") {
    auto a = RotationNumber::golden();
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 100; ++trial) {
        auto g = random_circle(rng, 16, 5.0);
        for (std::int64_t n : {1, -1, 2, 7}) {
            CHECK(gauge_residual(a, g, n) >= static_cast<double>(std::llabs(n)));
        }
    }
}

TEST_CASE("least squares certifies the obstruction at every truncation") {
    auto a = RotationNumber::golden();
    auto report = certify_obstruction(a, 1, {8, 16, 32});
    CHECK(report.all_match);
    REQUIRE(report.entries.size() == 3);
    for (const auto& entry : report.entries) {
        CHECK(entry.min_residual == doctest::Approx(1.0).epsilon(1e-10));
        CHECK(entry.deviation <= 1e-9);
    }

    auto report2 = certify_obstruction(a, 2, {8});
    CHECK(report2.entries[0].min_residual == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(report2.all_match);

    // The certificate does not depend on which irrational is used.
    auto liou = RotationNumber::from_cf({10, 100, 10000, 100000000});
    CHECK(certify_obstruction(liou, 1, {8, 16}).all_match);

    CHECK_THROWS_AS(certify_obstruction(a, 0, {8}), std::invalid_argument);
    CHECK_THROWS_AS(certify_obstruction(a, 1, {}), std::invalid_argument);
}
