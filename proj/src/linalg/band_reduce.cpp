#include <algorithm>
#include <cmath>
#include <random>

#include "mourre/lattice.hpp"
#include "mourre/linalg.hpp"

namespace mourre {

namespace {

// lower band storage with one extra diagonal for the bulge
class LowerBand {
public:
    LowerBand(const BandedHermitian& M) : n_(M.dim()), b_(M.half_bandwidth()), s_(b_ + 2), a_(n_ * s_, 0.0)
    {
        for (std::size_t d = 0; d <= b_; ++d)
            for (std::size_t j = 0; j + d < n_; ++j) at(j + d, j) = std::conj(M.diagonal(d)[j]);
    }

    std::size_t n() const { return n_; }
    std::size_t b() const { return b_; }
    cplx& at(std::size_t i, std::size_t j) { return a_[j * s_ + (i - j)]; }

    // M <- G M G* with G acting on planes (p, p+1)
    void rotate(std::size_t p, double g, cplx s)
    {
        std::size_t q = p + 1;
        std::size_t kmin = q > b_ + 1 ? q - b_ - 1 : 0;
        for (std::size_t k = kmin; k < p; ++k) {
            cplx mp = at(p, k), mq = at(q, k);
            at(p, k) = g * mp + s * mq;
            at(q, k) = -std::conj(s) * mp + g * mq;
        }
        cplx app = at(p, p), aqq = at(q, q), aqp = at(q, p);
        cplx apq = std::conj(aqp);
        // rows
        cplx r_pp = g * app + s * aqp, r_pq = g * apq + s * aqq;
        cplx r_qp = -std::conj(s) * app + g * aqp, r_qq = -std::conj(s) * apq + g * aqq;
        // columns
        at(p, p) = (r_pp * g + r_pq * std::conj(s)).real();
        at(q, p) = r_qp * g + r_qq * std::conj(s);
        at(q, q) = (-r_qp * s + r_qq * g).real();
        std::size_t kmax = std::min(n_ - 1, p + b_ + 1);
        for (std::size_t k = q + 1; k <= kmax; ++k) {
            cplx lp = at(k, p), lq = at(k, q);
            at(k, p) = g * lp + std::conj(s) * lq;
            at(k, q) = -s * lp + g * lq;
        }
    }

    // rotation on (r-1, r) that annihilates (r, c)
    void annihilate(std::size_t r, std::size_t c)
    {
        cplx y = at(r, c);
        if (y == cplx(0.0)) return;
        cplx x = at(r - 1, c);
        double rho = std::hypot(std::abs(x), std::abs(y));
        double g;
        cplx s;
        if (std::abs(x) == 0.0) {
            g = 0.0;
            s = 1.0;
        } else {
            g = std::abs(x) / rho;
            s = (x / std::abs(x)) * std::conj(y) / rho;
        }
        rotate(r - 1, g, s);
        at(r, c) = 0.0;
    }

private:
    std::size_t n_, b_, s_;
    std::vector<cplx> a_;
};

}  // namespace

void band_to_tridiagonal(const BandedHermitian& M, std::vector<double>& d, std::vector<double>& e)
{
    const std::size_t n = M.dim();
    d.assign(n, 0.0);
    e.assign(n, 0.0);
    if (n == 0) return;
    LowerBand L(M);
    const std::size_t b = L.b();
    if (b > 1) {
        for (std::size_t j = 0; j + 2 < n; ++j) {
            std::size_t rtop = std::min(j + b, n - 1);
            for (std::size_t r = rtop; r >= j + 2; --r) {
                L.annihilate(r, j);
                // chase the bulge created at (r + b, r - 1)
                std::size_t row = r + b, col = r - 1;
                while (row < n) {
                    L.annihilate(row, col);
                    col = row - 1;
                    row += b;
                }
            }
        }
    }
    for (std::size_t i = 0; i < n; ++i) d[i] = L.at(i, i).real();
    for (std::size_t i = 0; i + 1 < n; ++i) e[i] = std::abs(L.at(i + 1, i));
}

std::vector<double> banded_eigvals(const BandedHermitian& M)
{
    std::vector<double> d, e;
    band_to_tridiagonal(M, d, e);
    tridiagonal_ql(d, e);
    std::sort(d.begin(), d.end());
    return d;
}

EigenPairs banded_eig_selected(const BandedHermitian& M, double lo, double hi)
{
    EigenPairs out;
    std::vector<double> all = banded_eigvals(M);
    for (double v : all)
        if (v >= lo && v <= hi) out.values.push_back(v);
    const std::size_t n = M.dim(), m = out.values.size();
    out.vectors = CMatrix(n, m);
    if (m == 0) return out;

    double mnorm = std::max(M.norm_bound(), 1e-300);
    const double cluster_gap = 1e-6 * mnorm;
    std::mt19937_64 rng(kDefaultSeed);
    std::normal_distribution<double> nd;
    std::vector<cplx> x(n), y(n);
    std::size_t cluster_start = 0;

    for (std::size_t c = 0; c < m; ++c) {
        double lam = out.values[c];
        if (c > 0 && lam - out.values[c - 1] > cluster_gap) cluster_start = c;
        // nudge the shift off the eigenvalue so the factorization stays finite
        double shift = lam + 4.0 * std::numeric_limits<double>::epsilon() * mnorm;
        BandedLU lu(M, shift);
        for (auto& v : x) v = cplx(nd(rng), nd(rng));
        bool ok = false;
        for (int it = 0; it < 6 && !ok; ++it) {
            lu.solve(x.data());
            // orthogonalize against earlier members of the cluster (twice)
            for (int pass = 0; pass < 2; ++pass)
                for (std::size_t q = cluster_start; q < c; ++q) {
                    cplx s = 0.0;
                    for (std::size_t i = 0; i < n; ++i) s += std::conj(out.vectors(i, q)) * x[i];
                    for (std::size_t i = 0; i < n; ++i) x[i] -= s * out.vectors(i, q);
                }
            double nrm = 0.0;
            for (const auto& v : x) nrm += std::norm(v);
            nrm = std::sqrt(nrm);
            if (!(nrm > 0.0) || !std::isfinite(nrm)) {
                for (auto& v : x) v = cplx(nd(rng), nd(rng));
                continue;
            }
            for (auto& v : x) v /= nrm;
            M.matvec(x.data(), y.data());
            double res = 0.0;
            for (std::size_t i = 0; i < n; ++i) res += std::norm(y[i] - lam * x[i]);
            ok = it >= 1 && std::sqrt(res) <= 1e-11 * mnorm;
        }
        if (!ok) throw Error(ErrorCode::NoConvergence, "inverse iteration did not reach the residual target");
        for (std::size_t i = 0; i < n; ++i) out.vectors(i, c) = x[i];
    }
    return out;
}

}  // namespace mourre
