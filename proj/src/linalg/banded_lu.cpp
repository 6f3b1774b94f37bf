#include <algorithm>
#include <cmath>
#include <limits>

#include "mourre/lattice.hpp"
#include "mourre/linalg.hpp"

namespace mourre {

BandedLU::BandedLU(const BandedHermitian& M, cplx z, bool regularize)
    : n_(M.dim()), w_(M.half_bandwidth()), width_(3 * M.half_bandwidth() + 1), z_(z)
{
    u_.assign(n_ * width_, 0.0);
    orig_.assign(n_ * (2 * w_ + 1), 0.0);
    mult_.assign(n_ * std::max<std::size_t>(w_, 1), 0.0);
    piv_.resize(n_);
    for (std::size_t i = 0; i < n_; ++i) {
        std::size_t jlo = i >= w_ ? i - w_ : 0, jhi = std::min(n_ - 1, i + w_);
        for (std::size_t j = jlo; j <= jhi; ++j) {
            cplx v = M.get(i, j) - (i == j ? z : cplx(0.0));
            at(i, j) = v;
            orig_[i * (2 * w_ + 1) + (j + w_ - i)] = v;
        }
    }
    const double tiny = std::numeric_limits<double>::epsilon() * std::max(M.norm_bound() + std::abs(z), 1e-300);

    for (std::size_t i = 0; i < n_; ++i) {
        std::size_t last = std::min(n_ - 1, i + w_);
        std::size_t cmax = std::min(n_ - 1, i + 2 * w_);
        std::size_t p = i;
        double best = std::abs(at(i, i));
        for (std::size_t r = i + 1; r <= last; ++r)
            if (std::abs(at(r, i)) > best) {
                best = std::abs(at(r, i));
                p = r;
            }
        if (best == 0.0) {
            if (!regularize) throw Error(ErrorCode::Singular, "zero pivot in banded LU");
            at(i, i) = tiny;
        }
        piv_[i] = p;
        if (p != i)
            for (std::size_t c = i; c <= cmax; ++c) std::swap(at(i, c), at(p, c));
        cplx piv = at(i, i);
        for (std::size_t r = i + 1; r <= last; ++r) {
            cplx m = at(r, i) / piv;
            mult_[i * w_ + (r - i - 1)] = m;
            at(r, i) = 0.0;
            if (m == cplx(0.0)) continue;
            for (std::size_t c = i + 1; c <= cmax; ++c) at(r, c) -= m * at(i, c);
        }
    }
}

void BandedLU::solve(cplx* b) const
{
    for (std::size_t i = 0; i < n_; ++i) {
        if (piv_[i] != i) std::swap(b[i], b[piv_[i]]);
        std::size_t last = std::min(n_ - 1, i + w_);
        cplx bi = b[i];
        for (std::size_t r = i + 1; r <= last; ++r) b[r] -= mult_[i * w_ + (r - i - 1)] * bi;
    }
    for (std::size_t i = n_; i-- > 0;) {
        std::size_t cmax = std::min(n_ - 1, i + 2 * w_);
        cplx s = b[i];
        for (std::size_t c = i + 1; c <= cmax; ++c) s -= at(i, c) * b[c];
        b[i] = s / at(i, i);
    }
}

std::vector<cplx> BandedLU::solve(const std::vector<cplx>& b) const
{
    if (b.size() != n_) throw Error(ErrorCode::InvalidArgument, "right-hand side has the wrong length");
    std::vector<cplx> x = b;
    solve(x.data());
    return x;
}

std::vector<cplx> BandedLU::apply(const std::vector<cplx>& x) const
{
    if (x.size() != n_) throw Error(ErrorCode::InvalidArgument, "vector has the wrong length");
    std::vector<cplx> y(n_, 0.0);
    for (std::size_t i = 0; i < n_; ++i) {
        std::size_t jlo = i >= w_ ? i - w_ : 0, jhi = std::min(n_ - 1, i + w_);
        cplx s = 0.0;
        for (std::size_t j = jlo; j <= jhi; ++j) s += orig_[i * (2 * w_ + 1) + (j + w_ - i)] * x[j];
        y[i] = s;
    }
    return y;
}

}  // namespace mourre
