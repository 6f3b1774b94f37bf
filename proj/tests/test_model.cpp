#include <doctest.h>

#include <cmath>
#include <random>

#include "mourre/linalg.hpp"
#include "mourre/model.hpp"

using namespace mourre;

namespace {

const double PI = std::acos(-1.0);

// U_{k-1}(cos x) = sin(kx) / sin(x), extended to |y| > 1 by the hyperbolic form
double U_trig(int k, double y)
{
    if (std::abs(y) < 1.0) {
        double x = std::acos(y);
        return std::sin(k * x) / std::sin(x);
    }
    if (std::abs(y) == 1.0) return (y > 0 || k % 2 == 1) ? k : -k;
    double x = std::acosh(std::abs(y));
    double v = std::sinh(k * x) / std::sinh(x);
    return (y < 0 && k % 2 == 0) ? -v : v;
}

double g_ref(double alpha, double A, double B, int k, double t)
{
    double lmin2 = alpha * alpha + (A - B) * (A - B), lmax2 = alpha * alpha + (A + B) * (A + B);
    double g0 = -(t * t - lmin2) * (t * t - lmax2) / (4 * std::abs(t));
    if (k == 0) return g0;
    return g0 * U_trig(k, (t * t - alpha * alpha - A * A - B * B) / (2 * A * B));
}

// eigenvector of the symbol for the upper band and the derivative of the symbol
double hellmann_feynman_slope(const ModelParams& p, double th)
{
    Mat2 h = symbol(p, th);
    CMatrix H(2, 2);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) H(i, j) = h(i, j);
    EigenPairs ep = hermitian_dense_eig(H, true);
    cplx v0 = ep.vectors(0, 1), v1 = ep.vectors(1, 1);
    cplx dz = p.b * cplx(0.0, 1.0) * std::polar(1.0, th);  // d/dtheta of a + b e^{i theta}
    // h' = [[0, conj(dz)], [dz, 0]]
    return (std::conj(v0) * std::conj(dz) * v1 + std::conj(v1) * dz * v0).real();
}

}  // namespace

TEST_CASE("symbol is Hermitian with eigenvalues plus/minus the band function")
{
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-2, 2);
    for (int r = 0; r < 50; ++r) {
        ModelParams p = make_params(u(rng), cplx(u(rng), u(rng)), cplx(u(rng), u(rng)));
        double th = u(rng) * PI;
        Mat2 h = symbol(p, th);
        CHECK((h - h.adjoint()).max_abs() < 1e-15);
        CHECK(std::abs(h.trace()) < 1e-14);
        double lam = band_function(p, th);
        double direct = std::sqrt(p.alpha * p.alpha + std::norm(p.a + p.b * std::polar(1.0, th)));
        CHECK(lam == doctest::Approx(direct).epsilon(1e-14));
        CHECK(std::abs(h.det() + lam * lam) < 1e-12);
    }
}

TEST_CASE("band structure closed forms")
{
    BandStructure d = spectral_bands(make_params(1, 1, -1));
    CHECK(d.lambda_min == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(d.lambda_max == doctest::Approx(std::sqrt(5.0)).epsilon(1e-15));
    CHECK(d.has_gap);
    CHECK(d.i_plus.lo == doctest::Approx(1.0));
    CHECK(d.i_minus.hi == doctest::Approx(-1.0));

    BandStructure g = spectral_bands(make_params(0, 1, 1));
    CHECK_FALSE(g.has_gap);
    CHECK(g.i_plus.lo == 0.0);
    CHECK(g.i_plus.hi == doctest::Approx(2.0));
    CHECK(make_params(0, 1, cplx(0, 1)).gapless());
    CHECK_FALSE(make_params(1e-9, 1, 1).gapless());
    CHECK_FALSE(make_params(0, 1, 1.5).gapless());
}

TEST_CASE("invalid couplings")
{
    CHECK_THROWS_AS(make_params(1, 0, 1), Error);
    try {
        make_params(1, 1, 0);
        FAIL("expected ZeroCoupling");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::ZeroCoupling);
    }
}

TEST_CASE("chebyshev U matches the trigonometric form")
{
    for (int k = 1; k <= 9; ++k)
        for (double y : {-1.7, -1.0, -0.93, -0.2, 0.0, 0.31, 0.999, 1.0, 1.4})
            CHECK(chebyshev_U(k - 1, y) == doctest::Approx(U_trig(k, y)).epsilon(1e-12));
}

TEST_CASE("g_k agrees with an independent evaluation and rejects t = 0")
{
    ModelParams p = make_params(0.3, cplx(0.7, 0.2), cplx(-1.1, 0.5));
    for (int k = 0; k <= 5; ++k) {
        if (k == 0) continue;  // k = 0 needs gapless parameters
        for (double t : {-2.1, -1.3, -0.9, 0.4, 1.05, 1.6, 2.2})
            CHECK(g_k_eval(p, k, t) == doctest::Approx(g_ref(p.alpha, p.abs_a, p.abs_b, k, t)).epsilon(1e-12));
    }
    CHECK_THROWS_AS(g_k_eval(p, 1, 0.0), Error);
    CHECK(g0_eval(make_params(0, 1, 1), 1.0) == doctest::Approx(g_ref(0, 1, 1, 0, 1.0)));
}

TEST_CASE("Mourre identity on the Fourier side")
{
    for (auto p : {make_params(1, 1, -1), make_params(0, 1, 2)})
        for (int k = 1; k <= 3; ++k) CHECK(mourre_identity_deviation(p, k, 4096) <= 1e-12);
}

TEST_CASE("commutator density equals minus |a||b| sin(k(theta+phi)) times the Hellmann-Feynman slope")
{
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-2, 2);
    for (int r = 0; r < 30; ++r) {
        ModelParams p = make_params(u(rng), cplx(u(rng), u(rng)), cplx(u(rng), u(rng)));
        int k = 1 + r % 4;
        double th = u(rng) * PI / 2;
        if (band_function(p, th) < 1e-3) continue;
        double ref = -p.abs_a * p.abs_b * std::sin(k * (th + p.phi)) * hellmann_feynman_slope(p, th);
        CHECK(fourier_commutator_density(p, k, th) == doctest::Approx(ref).epsilon(1e-10).scale(1.0));
    }
}

TEST_CASE("critical sets")
{
    CriticalSet d = kappa_k(make_params(1, 1, -1), 1);
    REQUIRE(d.points.size() == 4);
    const double r5 = std::sqrt(5.0);
    double want[4] = {-r5, -1, 1, r5};
    for (int i = 0; i < 4; ++i) CHECK(std::abs(d.points[i] - want[i]) <= 1e-12);

    CriticalSet g = kappa_k(make_params(0, 1, 1), 0);
    REQUIRE(g.points.size() == 2);
    CHECK(std::abs(g.points[0] + 2) <= 1e-12);
    CHECK(std::abs(g.points[1] - 2) <= 1e-12);
    CHECK_THROWS_AS(kappa_k(make_params(1, 1, -1), 0), Error);
}

TEST_CASE("critical sets are the zero sets of g_k on the bands (bisection oracle)")
{
    for (auto p : {make_params(1, 1, -1), make_params(0, 1, 2), make_params(0.4, cplx(0.3, 0.8), cplx(-1.2, 0.1))}) {
        BandStructure bs = spectral_bands(p);
        for (int k = 1; k <= 8; ++k) {
            std::vector<double> zeros{bs.i_minus.lo, bs.i_minus.hi, bs.i_plus.lo, bs.i_plus.hi};
            for (Interval I : {bs.i_plus, bs.i_minus}) {
                const int M = 20000;
                auto f = [&](double t) { return g_ref(p.alpha, p.abs_a, p.abs_b, k, t); };
                double h = (I.hi - I.lo) / M;
                for (int i = 0; i < M; ++i) {
                    double x0 = I.lo + i * h, x1 = x0 + h;
                    if (i == 0) x0 += 1e-12;
                    if (i == M - 1) x1 -= 1e-12;
                    double f0 = f(x0), f1 = f(x1);
                    if (f0 == 0.0) zeros.push_back(x0);
                    if (f0 * f1 < 0) {
                        for (int it = 0; it < 200 && x1 - x0 > 1e-15; ++it) {
                            double m = 0.5 * (x0 + x1);
                            if ((f(m) < 0) == (f0 < 0)) x0 = m;
                            else x1 = m;
                        }
                        zeros.push_back(0.5 * (x0 + x1));
                    }
                }
            }
            std::sort(zeros.begin(), zeros.end());
            std::vector<double> uniq;
            for (double z : zeros)
                if (uniq.empty() || z - uniq.back() > 1e-8) uniq.push_back(z);
            CriticalSet cs = kappa_k(p, k);
            REQUIRE(cs.points.size() == uniq.size());
            for (std::size_t i = 0; i < uniq.size(); ++i) CHECK(std::abs(cs.points[i] - uniq[i]) <= 1e-9);
        }
    }
}

TEST_CASE("g_k is even and nonvanishing on the Mourre sets")
{
    ModelParams p = make_params(1, 1, -1);
    for (int k = 1; k <= 4; ++k) {
        MourreSets ms = mu_sets(p, k);
        for (const Interval& I : ms.mu_all) {
            double mid = 0.5 * (I.lo + I.hi);
            CHECK(std::abs(g_k_eval(p, k, mid)) > 0.0);
            for (double t : kappa_k(p, k).points) CHECK_FALSE(I.contains(t));
            CHECK(g_k_eval(p, k, mid) == doctest::Approx(g_k_eval(p, k, -mid)));
        }
    }
}

TEST_CASE("infimum of g_1 on [1.2, 2] by dense sampling")
{
    double v = inf_g_k(make_params(1, 1, -1), 1, 1.2, 2.0);
    // finer independent scan
    double m = INFINITY;
    for (int i = 0; i <= 2000000; ++i) m = std::min(m, g_ref(1, 1, 1, 1, 1.2 + 0.8 * i / 2000000.0));
    CHECK(v == doctest::Approx(m).epsilon(1e-8));
    CHECK(v == doctest::Approx(0.3263).epsilon(1e-3));
}
