#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "mourre/linalg.hpp"

namespace mourre {

void tridiagonal_ql(std::vector<double>& d, std::vector<double>& e, cplx* z, std::size_t rows)
{
    const std::size_t n = d.size();
    if (n == 0) return;
    e.resize(n);
    e[n - 1] = 0.0;
    const double eps = std::numeric_limits<double>::epsilon();
    for (std::size_t l = 0; l < n; ++l) {
        int iter = 0;
        std::size_t m;
        do {
            for (m = l; m + 1 < n; ++m) {
                double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= eps * dd) break;
            }
            if (m != l) {
                if (iter++ == 60) throw Error(ErrorCode::NoConvergence, "tridiagonal QL did not converge");
                double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                double r = std::hypot(g, 1.0);
                g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
                double s = 1.0, c = 1.0, p = 0.0;
                std::ptrdiff_t i;
                for (i = static_cast<std::ptrdiff_t>(m) - 1; i >= static_cast<std::ptrdiff_t>(l); --i) {
                    double f = s * e[i], b = c * e[i];
                    e[i + 1] = (r = std::hypot(f, g));
                    if (r == 0.0) {
                        d[i + 1] -= p;
                        e[m] = 0.0;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + 2.0 * c * b;
                    d[i + 1] = g + (p = s * r);
                    g = c * r - b;
                    if (z) {
                        cplx* zi = z + static_cast<std::size_t>(i) * rows;
                        cplx* zi1 = zi + rows;
                        for (std::size_t k = 0; k < rows; ++k) {
                            cplx fz = zi1[k];
                            zi1[k] = s * zi[k] + c * fz;
                            zi[k] = c * zi[k] - s * fz;
                        }
                    }
                }
                if (r == 0.0 && i >= static_cast<std::ptrdiff_t>(l)) continue;
                d[l] -= p;
                e[l] = g;
                e[m] = 0.0;
            }
        } while (m != l);
    }
}

EigenPairs hermitian_dense_eig(const CMatrix& M, bool want_vectors)
{
    const std::size_t n = M.rows();
    if (M.cols() != n) throw Error(ErrorCode::InvalidArgument, "matrix must be square");
    EigenPairs out;
    if (n == 0) return out;
    CMatrix A = M;
    std::vector<std::vector<cplx>> refl(n);

    for (std::size_t k = 0; k + 2 < n; ++k) {
        std::size_t m = n - k - 1;
        std::vector<cplx> v(m);
        double xnorm = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            v[i] = A(k + 1 + i, k);
            xnorm += std::norm(v[i]);
        }
        xnorm = std::sqrt(xnorm);
        double tail = xnorm * xnorm - std::norm(v[0]);
        if (xnorm == 0.0 || tail <= 0.0) continue;
        cplx ph = std::abs(v[0]) > 0.0 ? v[0] / std::abs(v[0]) : cplx(1.0);
        cplx alpha = -ph * xnorm;
        v[0] -= alpha;
        double vn = 0.0;
        for (const auto& x : v) vn += std::norm(x);
        vn = std::sqrt(vn);
        for (auto& x : v) x /= vn;

        // A22 <- H A22 H with H = I - 2 v v*
        std::vector<cplx> p(m, 0.0);
        for (std::size_t i = 0; i < m; ++i) {
            const cplx* row = A.data() + (k + 1 + i) * n + (k + 1);
            cplx s = 0.0;
            for (std::size_t j = 0; j < m; ++j) s += row[j] * v[j];
            p[i] = s;
        }
        double kappa = 0.0;
        for (std::size_t i = 0; i < m; ++i) kappa += (std::conj(v[i]) * p[i]).real();
        for (std::size_t i = 0; i < m; ++i) p[i] -= kappa * v[i];
        for (std::size_t i = 0; i < m; ++i) {
            cplx* row = A.data() + (k + 1 + i) * n + (k + 1);
            cplx vi = 2.0 * v[i], wi = 2.0 * p[i];
            for (std::size_t j = 0; j < m; ++j) row[j] -= vi * std::conj(p[j]) + wi * std::conj(v[j]);
        }
        A(k + 1, k) = alpha;
        A(k, k + 1) = std::conj(alpha);
        for (std::size_t i = 1; i < m; ++i) A(k + 1 + i, k) = A(k, k + 1 + i) = 0.0;
        refl[k] = std::move(v);
    }

    std::vector<double> d(n), e(n, 0.0);
    std::vector<cplx> phase(n, 1.0);
    for (std::size_t i = 0; i < n; ++i) d[i] = A(i, i).real();
    for (std::size_t i = 0; i + 1 < n; ++i) {
        cplx s = A(i + 1, i);
        e[i] = std::abs(s);
        phase[i + 1] = e[i] > 0.0 ? phase[i] * s / e[i] : phase[i];
    }

    if (!want_vectors) {
        tridiagonal_ql(d, e);
        std::sort(d.begin(), d.end());
        out.values = std::move(d);
        return out;
    }

    // Q = H_0 H_1 ... ; z holds columns of Q D, column-major
    std::vector<cplx> z(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) z[i * n + i] = 1.0;
    for (std::size_t kk = n; kk-- > 0;) {
        const auto& v = refl[kk];
        if (v.empty()) continue;
        std::size_t off = kk + 1, m = v.size();
        for (std::size_t c = 0; c < n; ++c) {
            cplx* col = z.data() + c * n + off;
            cplx s = 0.0;
            for (std::size_t i = 0; i < m; ++i) s += std::conj(v[i]) * col[i];
            if (s == cplx(0.0)) continue;
            s *= 2.0;
            for (std::size_t i = 0; i < m; ++i) col[i] -= v[i] * s;
        }
    }
    for (std::size_t c = 0; c < n; ++c)
        for (std::size_t r = 0; r < n; ++r) z[c * n + r] *= phase[c];

    tridiagonal_ql(d, e, z.data(), n);

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return d[a] < d[b]; });
    out.values.resize(n);
    out.vectors = CMatrix(n, n);
    for (std::size_t c = 0; c < n; ++c) {
        out.values[c] = d[order[c]];
        const cplx* src = z.data() + order[c] * n;
        for (std::size_t r = 0; r < n; ++r) out.vectors(r, c) = src[r];
    }
    return out;
}

}  // namespace mourre
