#pragma once
// independent reference computations shared by the tests (dense, straightforward, slow)

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "mourre/lattice.hpp"
#include "mourre/types.hpp"

namespace oracle {

using mourre::cplx;
using mourre::CMatrix;

inline CMatrix zeros(std::size_t n) { return CMatrix(n, n); }

// right shift on sites, tensored with the 2x2 identity
inline CMatrix shift(const mourre::LatticeWindow& w)
{
    CMatrix S = zeros(w.dim());
    for (long n = w.n_lo; n < w.n_hi; ++n)
        for (int s = 0; s < 2; ++s) S(w.index(n + 1, s), w.index(n, s)) = 1.0;
    return S;
}

inline CMatrix position(const mourre::LatticeWindow& w)
{
    CMatrix X = zeros(w.dim());
    for (long n = w.n_lo; n <= w.n_hi; ++n)
        for (int s = 0; s < 2; ++s) X(w.index(n, s), w.index(n, s)) = static_cast<double>(n);
    return X;
}

// block operator [[P, Q], [R, T]] acting on the spin components, each block a site operator
// given as a dim x dim matrix that already carries the identity on spin
inline CMatrix spin_blocks(const mourre::LatticeWindow& w, const CMatrix& P, const CMatrix& Q, const CMatrix& R,
                           const CMatrix& T)
{
    CMatrix M = zeros(w.dim());
    for (long n = w.n_lo; n <= w.n_hi; ++n)
        for (long m = w.n_lo; m <= w.n_hi; ++m) {
            std::size_t i = w.index(n, 0), j = w.index(m, 0);
            M(w.index(n, 0), w.index(m, 0)) = P(i, j);
            M(w.index(n, 0), w.index(m, 1)) = Q(i, j);
            M(w.index(n, 1), w.index(m, 0)) = R(i, j);
            M(w.index(n, 1), w.index(m, 1)) = T(i, j);
        }
    return M;
}

inline CMatrix scaled(const CMatrix& A, cplx s)
{
    CMatrix B = A;
    for (std::size_t i = 0; i < A.rows(); ++i)
        for (std::size_t j = 0; j < A.cols(); ++j) B(i, j) *= s;
    return B;
}

inline CMatrix commutator_i(const CMatrix& A, const CMatrix& B) { return scaled(A * B - B * A, cplx(0.0, 1.0)); }

inline double max_abs_diff(const CMatrix& A, const CMatrix& B) { return (A - B).max_abs(); }

inline CMatrix identity(std::size_t n) { return CMatrix::identity(n); }

// random Hermitian banded matrix
inline mourre::BandedHermitian random_banded(std::size_t n, std::size_t w, std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    mourre::BandedHermitian M(n, w);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j <= std::min(n - 1, i + w); ++j) M.set(i, j, i == j ? cplx(u(rng)) : cplx(u(rng), u(rng)));
    return M;
}

}  // namespace oracle
