#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "mourre/lattice.hpp"
#include "mourre/linalg.hpp"
#include "oracle.hpp"

using namespace mourre;

namespace {

const cplx I1(0.0, 1.0);

// gapless draw with |a| == |b| exactly in floating point
ModelParams gapless_draw(std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> u(-1, 1), r(0.5, 1.5);
    cplx a = std::polar(r(rng), 3.14159 * u(rng));
    int m = static_cast<int>(rng() % 4);
    cplx rot[4] = {1.0, I1, -1.0, -I1};
    cplx b = rot[m] * ((rng() % 2) ? std::conj(a) : a);
    return make_params(0.0, a, b);
}

MatrixSequence random_sequence(std::mt19937_64& rng, bool hermitian)
{
    std::uniform_real_distribution<double> u(-1, 1);
    cplx c[4] = {cplx(u(rng), u(rng)), cplx(u(rng), u(rng)), cplx(u(rng), u(rng)), cplx(u(rng), u(rng))};
    double f1 = 0.3 + std::abs(u(rng)), f2 = 0.5 + std::abs(u(rng));
    return {[=](long n) {
                double x = static_cast<double>(n);
                Mat2 m(c[0] * std::cos(f1 * x), c[1] / (1.0 + x * x), c[2] * std::sin(f2 * x), c[3] / (2.0 + std::abs(x)));
                return hermitian ? (m + m.adjoint()) * cplx(0.5) : m;
            },
            std::nullopt, "random"};
}

// literal orientation of the gapless conjugate operator, assembled from shift and position operators
CMatrix literal_A0(const ModelParams& p, const LatticeWindow& w)
{
    CMatrix S = oracle::shift(w), X = oracle::position(w), Id = oracle::identity(w.dim());
    CMatrix Z(w.dim(), w.dim());
    cplx e1 = std::polar(1.0, p.phi1), ephi = std::polar(1.0, p.phi);
    CMatrix Q = oracle::scaled(Id - oracle::scaled(S, ephi), I1 * e1);
    CMatrix R = oracle::scaled(Id - oracle::scaled(S.adjoint(), std::conj(ephi)), -I1 * std::conj(e1));
    CMatrix M = oracle::scaled(oracle::spin_blocks(w, Z, Q, R, Z) * X, -p.abs_a);
    return M + M.adjoint();
}

CMatrix swap_spin(const CMatrix& A, const LatticeWindow& w)
{
    CMatrix B(A.rows(), A.cols());
    for (long n = w.n_lo; n <= w.n_hi; ++n)
        for (long m = w.n_lo; m <= w.n_hi; ++m)
            for (int s = 0; s < 2; ++s)
                for (int t = 0; t < 2; ++t) B(w.index(n, s), w.index(m, t)) = A(w.index(n, 1 - s), w.index(m, 1 - t));
    return B;
}

double interior_dev(const CMatrix& A, const CMatrix& B, const LatticeWindow& w, long margin)
{
    return (interior_restrict(A, w, margin) - interior_restrict(B, w, margin)).max_abs();
}

}  // namespace

TEST_CASE("H0 acts on plane waves through the symbol")
{
    ModelParams p = make_params(0.7, cplx(0.4, -0.9), cplx(1.3, 0.2));
    LatticeWindow w = LatticeWindow::bilateral(20);
    BandedHermitian H = build_H0(p, w);
    double th = 0.83;
    Mat2 h = symbol(p, -th);
    cplx u0(0.3, 0.1), u1(-0.7, 0.4);
    std::vector<cplx> psi(w.dim()), out(w.dim());
    for (long n = w.n_lo; n <= w.n_hi; ++n) {
        cplx e = std::polar(1.0, th * n);
        psi[w.index(n, 0)] = e * u0;
        psi[w.index(n, 1)] = e * u1;
    }
    H.matvec(psi.data(), out.data());
    for (long n = w.n_lo + 1; n < w.n_hi; ++n) {
        cplx e = std::polar(1.0, th * n);
        CHECK(std::abs(out[w.index(n, 0)] - e * (h(0, 0) * u0 + h(0, 1) * u1)) < 1e-14);
        CHECK(std::abs(out[w.index(n, 1)] - e * (h(1, 0) * u0 + h(1, 1) * u1)) < 1e-14);
    }
}

TEST_CASE("H0 entries and Hermitian storage")
{
    ModelParams p = make_params(1, cplx(0, 2), -1);
    LatticeWindow w = LatticeWindow::bilateral(3);
    BandedHermitian H = build_H0(p, w);
    CHECK(H.half_bandwidth() == 3);
    CHECK(H.get(w.index(0, 0), w.index(0, 0)) == cplx(1));
    CHECK(H.get(w.index(0, 1), w.index(0, 1)) == cplx(-1));
    CHECK(H.get(w.index(0, 0), w.index(0, 1)) == cplx(0, -2));
    CHECK(H.get(w.index(0, 1), w.index(0, 0)) == cplx(0, 2));
    CHECK(H.get(w.index(0, 0), w.index(1, 1)) == cplx(-1));
    CMatrix D = H.dense();
    CHECK((D - D.adjoint()).max_abs() == 0.0);
}

TEST_CASE("single-site Dirac block")
{
    BandedHermitian H = build_H0(make_params(1, 1, -1), LatticeWindow::bilateral(0));
    auto ev = hermitian_dense_eig(H.dense(), false).values;
    CHECK(ev[0] == doctest::Approx(-std::sqrt(2.0)));
    CHECK(ev[1] == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("A_k matches the shift/position assembly")
{
    ModelParams p = make_params(0.2, cplx(0.6, 0.3), cplx(-0.4, 1.1));
    LatticeWindow w = LatticeWindow::bilateral(12);
    CMatrix S = oracle::shift(w), X = oracle::position(w), Id = oracle::identity(w.dim());
    for (int k = 1; k <= 3; ++k) {
        CMatrix Sk = Id;
        for (int i = 0; i < k; ++i) Sk = Sk * S;
        CMatrix M = oracle::scaled(Sk * (oracle::scaled(X, 2.0) + oracle::scaled(Id, double(k))),
                                   I1 * (p.abs_a * p.abs_b / 4.0) * std::polar(1.0, k * p.phi));
        CMatrix A = M + M.adjoint();
        CHECK((build_Ak(p, k, w).dense() - A).max_abs() < 1e-14);
    }
}

TEST_CASE("A_0 is the spin-swapped shift/position assembly")
{
    std::mt19937_64 rng(21);
    for (int r = 0; r < 5; ++r) {
        ModelParams p = gapless_draw(rng);
        LatticeWindow w = LatticeWindow::bilateral(10);
        CMatrix lit = literal_A0(p, w);
        CHECK(interior_dev(build_A0(p, w).dense(), swap_spin(lit, w), w, 1) < 1e-13);
    }
}

TEST_CASE("A_0 identity [iA_0, H_0] = 4|a|^2 - H_0^2 against dense products")
{
    std::mt19937_64 rng(kDefaultSeed);
    for (int r = 0; r < 10; ++r) {
        ModelParams p = gapless_draw(rng);
        LatticeWindow w = LatticeWindow::bilateral(200);
        CHECK(check_A0_identity(p, w, 4) <= 1e-12);
    }
    // dense oracle on a small window
    ModelParams p = make_params(0, cplx(0.8, 0.6), cplx(-0.6, 0.8));
    LatticeWindow w = LatticeWindow::bilateral(15);
    CMatrix H = build_H0(p, w).dense(), A = build_A0(p, w).dense();
    CMatrix rhs = oracle::scaled(oracle::identity(w.dim()), 4 * p.abs_a * p.abs_a) - H * H;
    CHECK(interior_dev(oracle::commutator_i(A, H), rhs, w, 2) < 1e-13);
    // the unswapped orientation does not satisfy it
    CMatrix lit = literal_A0(p, w);
    CHECK(interior_dev(oracle::commutator_i(lit, H), rhs, w, 2) > 1e-2);
}

TEST_CASE("A_0 requires gapless parameters")
{
    CHECK_THROWS_AS(build_A0(make_params(1, 1, -1), LatticeWindow::bilateral(10)), Error);
    CHECK_THROWS_AS(check_A0_identity(make_params(0, 1, 2), LatticeWindow::bilateral(10), 2), Error);
}

TEST_CASE("commutator_i agrees with dense products")
{
    std::mt19937_64 rng(2);
    ModelParams p = make_params(0.3, cplx(1, 0.5), cplx(-0.2, 0.9));
    LatticeWindow w = LatticeWindow::bilateral(25);
    BandedHermitian A = build_Ak(p, 2, w), H = build_H0(p, w) + build_diag_sequence(random_sequence(rng, true), w);
    CMatrix C = commutator_i(A, H).dense();
    CHECK((C - oracle::commutator_i(A.dense(), H.dense())).max_abs() < 1e-13);
    CHECK((C - C.adjoint()).max_abs() == 0.0);
}

TEST_CASE("first commutator closed forms with potentials")
{
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> u(-1.5, 1.5);
    for (int r = 0; r < 20; ++r) {
        LatticeWindow w = LatticeWindow::bilateral(300);
        MatrixSequence W = random_sequence(rng, true);
        ModelParams p = make_params(u(rng), cplx(u(rng), u(rng)), cplx(u(rng), u(rng)));
        int k = 1 + r % 3;
        CHECK(check_Ak_first_commutator(p, k, W, w, k) <= 1e-12);
        CHECK(check_A0_commutator(gapless_draw(rng), W, w, 2) <= 1e-12);
    }
    // unbounded W on a finite window
    MatrixSequence lin{[](long n) { return Mat2::identity(double(n)); }, std::nullopt, "linear"};
    ModelParams p = make_params(1, 1, -1);
    CHECK(check_Ak_first_commutator(p, 1, lin, LatticeWindow::bilateral(300), 1) <= 1e-12);
    MatrixSequence kop{[](long n) { return Mat2::identity(1.0 / std::log(1.0 + std::sqrt(1.0 + double(n) * n))); },
                       std::nullopt, "kop"};
    CHECK(check_Ak_first_commutator(p, 1, kop, LatticeWindow::bilateral(300), 1) <= 1e-12);
    CHECK(check_Ak_first_commutator(p, 2, constant_sequence(Mat2(1, cplx(2, 1), cplx(2, -1), 4)), LatticeWindow::bilateral(50), 2) <= 1e-14);
    // the diagonal potential must be self-adjoint
    CHECK_THROWS_AS(check_Ak_first_commutator(p, 1, random_sequence(rng, false), LatticeWindow::bilateral(50), 1), Error);
}

TEST_CASE("closed-form checks validate the margin")
{
    ModelParams p = make_params(1, 1, -1);
    CHECK_THROWS(check_Ak_first_commutator(p, 3, constant_sequence(Mat2::identity()), LatticeWindow::bilateral(50), 2));
    CHECK_THROWS(check_A0_identity(make_params(0, 1, 1), LatticeWindow::bilateral(5), 6));
}

TEST_CASE("compressed commutator equals the restriction of a commutator on a larger window")
{
    std::mt19937_64 rng(4);
    ModelParams p = make_params(1, cplx(0.5, 1), -1);
    PotentialSpec V;
    V.v0 = random_sequence(rng, true);
    for (int k : {1, 2, 3}) {
        LatticeWindow w = LatticeWindow::bilateral(12);
        BandedHermitian C = compressed_commutator(p, k, w, &V);
        LatticeWindow big = LatticeWindow::bilateral(12 + 10);
        CMatrix full = oracle::commutator_i(build_Ak(p, k, big).dense(), (build_H0(p, big) + build_potential(V, big)).dense());
        CMatrix Cd = C.dense();
        std::size_t off = big.index(-12, 0);
        double dev = 0;
        for (std::size_t i = 0; i < w.dim(); ++i)
            for (std::size_t j = 0; j < w.dim(); ++j) dev = std::max(dev, std::abs(Cd(i, j) - full(off + i, off + j)));
        CHECK(dev < 1e-13);
    }
    // unilateral: only the right edge is padded
    LatticeWindow u = LatticeWindow::unilateral(12);
    BandedHermitian Cu = compressed_commutator(p, 1, u);
    LatticeWindow ub = LatticeWindow::unilateral(20);
    CMatrix fu = oracle::commutator_i(build_Ak(p, 1, ub).dense(), build_H0(p, ub).dense());
    double dev = 0;
    CMatrix Cd = Cu.dense();
    for (std::size_t i = 0; i < u.dim(); ++i)
        for (std::size_t j = 0; j < u.dim(); ++j) dev = std::max(dev, std::abs(Cd(i, j) - fu(i, j)));
    CHECK(dev < 1e-13);
}

TEST_CASE("potential assembly")
{
    LatticeWindow w = LatticeWindow::bilateral(5);
    PotentialSpec V;
    V.v0 = constant_sequence(Mat2(1, cplx(0, 2), cplx(0, -2), 3));
    V.shifted.push_back({2, constant_sequence(Mat2(cplx(1, 1), 0, 0, 5))});
    BandedHermitian M = build_potential(V, w);
    CHECK(M.get(w.index(0, 0), w.index(0, 1)) == cplx(0, 2));
    // S^2 V_2: block (m + 2, m) plus its adjoint
    CHECK(M.get(w.index(2, 0), w.index(0, 0)) == cplx(1, 1));
    CHECK(M.get(w.index(0, 0), w.index(2, 0)) == cplx(1, -1));
    CHECK(M.get(w.index(2, 1), w.index(0, 1)) == cplx(5));

    PotentialSpec bad;
    bad.v0 = constant_sequence(Mat2(1, 1, 0, 1));
    try {
        build_potential(bad, w);
        FAIL("expected NotHermitian");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NotHermitian);
    }
}

TEST_CASE("truncated Mourre positivity on [1.2, 2]")
{
    ModelParams p = make_params(1, 1, -1);
    LatticeWindow w = LatticeWindow::bilateral(300);
    ProjectedMin r = projected_commutator_min_eig(build_H0(p, w), compressed_commutator(p, 1, w), 1.2, 2.0);
    CHECK(r.min_eig >= 0.27);
    CHECK(r.min_eig <= 0.3263 + 0.05);
    CHECK(r.rank > 0);
    try {
        projected_commutator_min_eig(build_H0(p, w), compressed_commutator(p, 1, w), -0.5, 0.5);
        FAIL("expected EmptyProjector");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::EmptyProjector);
    }
}

TEST_CASE("period-two unfolding into a scalar Jacobi matrix")
{
    for (auto p : {make_params(0.5, 1, 2), make_params(1, cplx(0.3, 0.4), cplx(-1, 0.2))}) {
        SshUnfold u = ssh_unfold(p, LatticeWindow::bilateral(50));
        CHECK(u.residual <= 1e-14);
        CHECK(u.offdiag.size() + 1 == u.diag.size());
    }
}

TEST_CASE("matrix dump format")
{
    BandedHermitian H = build_H0(make_params(1, 1, -1), LatticeWindow::bilateral(1));
    std::ostringstream os;
    dump_matrix(H, os);
    std::istringstream is(os.str());
    std::size_t dim, bw;
    is >> dim >> bw;
    CHECK(dim == 6);
    CHECK(bw == 3);
    std::size_t r, c;
    double re, im;
    int rows = 0;
    while (is >> r >> c >> re >> im) {
        CHECK(H.get(r, c) == cplx(re, im));
        ++rows;
    }
    CHECK(rows > 0);
}
