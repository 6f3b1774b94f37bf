#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "mourre/types.hpp"

namespace mourre {

class BandedHermitian;

struct EigenPairs {
    std::vector<double> values;  // ascending
    CMatrix vectors;             // columns, empty when not requested
};

constexpr std::size_t kDenseThreshold = 4096;
constexpr std::uint64_t kDefaultSeed = 0xC0FFEE;

// Householder tridiagonalization followed by implicit QL
EigenPairs hermitian_dense_eig(const CMatrix& M, bool want_vectors);

// implicit QL on a real symmetric tridiagonal matrix; d receives the eigenvalues (unsorted).
// When z is non-null it holds n columns of length `rows` (column-major) that are rotated along.
void tridiagonal_ql(std::vector<double>& d, std::vector<double>& e, cplx* z = nullptr, std::size_t rows = 0);

// Givens band-to-tridiagonal reduction; returns the diagonal and the moduli of the off-diagonal
void band_to_tridiagonal(const BandedHermitian& M, std::vector<double>& d, std::vector<double>& e);

std::vector<double> banded_eigvals(const BandedHermitian& M);

// eigenpairs with eigenvalue in [lo, hi]; vectors by inverse iteration on the band
EigenPairs banded_eig_selected(const BandedHermitian& M, double lo, double hi);

// LU factorization of (M - zI) with partial pivoting, fill band 2w
class BandedLU {
public:
    // zero pivots are replaced by a tiny multiple of the norm when `regularize` is set (inverse iteration)
    BandedLU(const BandedHermitian& M, cplx z, bool regularize = false);

    std::size_t dim() const { return n_; }
    std::size_t bandwidth() const { return w_; }
    void solve(cplx* b) const;
    std::vector<cplx> solve(const std::vector<cplx>& b) const;
    // (M - zI) x, for residual checks
    std::vector<cplx> apply(const std::vector<cplx>& x) const;

private:
    std::size_t n_ = 0, w_ = 0, width_ = 0;
    cplx z_;
    std::vector<cplx> u_;      // row i holds columns [i - w, i + 2w]
    std::vector<cplx> mult_;   // step i multipliers for rows i+1 .. i+w
    std::vector<std::size_t> piv_;
    std::vector<cplx> orig_;   // rows of M - zI over columns [i - w, i + w]

    cplx& at(std::size_t row, std::size_t col) { return u_[row * width_ + (col + w_ - row)]; }
    cplx at(std::size_t row, std::size_t col) const { return u_[row * width_ + (col + w_ - row)]; }
};

struct PowerResult {
    double sigma_max = 0.0;
    int iters = 0;
    bool converged = false;
};

using LinearMap = std::function<void(const cplx* in, cplx* out)>;

// sqrt of the top eigenvalue of a positive semidefinite map (the Gram map T*T)
PowerResult power_iteration_norm(const LinearMap& gram, std::size_t dim, double tol = 1e-6, int cap = 500,
                                 std::uint64_t seed = kDefaultSeed);

}  // namespace mourre
