#include "mourre/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>

#include "mourre/linalg.hpp"

namespace mourre {

namespace {

constexpr cplx I1{0.0, 1.0};

// compensated accumulation of real products (TwoSum / FMA-based TwoProduct)
struct Dot2 {
    double s = 0.0, c = 0.0;
    void add(double x, double y)
    {
        double p = x * y;
        double ep = std::fma(x, y, -p);
        double t = s + p;
        double z = t - s;
        double es = (s - (t - z)) + (p - z);
        s = t;
        c += es + ep;
    }
    double value() const { return s + c; }
};

struct CDot2 {
    Dot2 re, im;
    void add(cplx x, cplx y)
    {
        re.add(x.real(), y.real());
        re.add(-x.imag(), y.imag());
        im.add(x.real(), y.imag());
        im.add(x.imag(), y.real());
    }
    cplx value() const { return {re.value(), im.value()}; }
};

void require_same_window(const BandedHermitian& A, const BandedHermitian& B)
{
    if (A.dim() != B.dim() || !(A.window() == B.window()))
        throw Error(ErrorCode::WindowMismatch, "operands live on different lattice windows");
}

void set_block(BandedHermitian& M, const LatticeWindow& w, long n, long m, const Mat2& blk)
{
    // block (n, m) with n >= m; the mirrored block is implied
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) {
            std::size_t i = w.index(n, r), j = w.index(m, c);
            if (n == m && j < i) continue;
            M.set(i, j, blk(r, c));
        }
}

Mat2 swap_components(const Mat2& m) { return {m(1, 1), m(1, 0), m(0, 1), m(0, 0)}; }

// sites of the principal interior block
std::pair<long, long> interior_sites(const LatticeWindow& w, long margin)
{
    if (margin < 0 || 2 * margin >= w.sites())
        throw Error(ErrorCode::MarginTooLarge, "margin must be below half the site count");
    return {w.n_lo + margin, w.n_hi - margin};
}

// max |C - R| over the interior principal block; R given entrywise
template <class F>
double interior_deviation(const BandedHermitian& C, long margin, std::size_t band, F&& rhs)
{
    auto [s0, s1] = interior_sites(C.window(), margin);
    std::size_t i0 = C.window().index(s0, 0), i1 = C.window().index(s1, 1);
    double dev = 0.0;
    for (std::size_t i = i0; i <= i1; ++i) {
        std::size_t jlo = i >= i0 + band ? i - band : i0;
        std::size_t jhi = std::min(i1, i + band);
        for (std::size_t j = jlo; j <= jhi; ++j) dev = std::max(dev, std::abs(C.get(i, j) - rhs(i, j)));
    }
    return dev;
}

// product of two Hermitian banded operators known to be Hermitian (e.g. H*H)
BandedHermitian hermitian_product(const BandedHermitian& A, const BandedHermitian& B)
{
    require_same_window(A, B);
    std::size_t wa = A.half_bandwidth(), wb = B.half_bandwidth(), w = wa + wb, n = A.dim();
    BandedHermitian P(A.window(), w);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j <= std::min(n - 1, i + w); ++j) {
            std::size_t klo = std::max(i >= wa ? i - wa : 0, j >= wb ? j - wb : 0);
            std::size_t khi = std::min({n - 1, i + wa, j + wb});
            CDot2 s;
            for (std::size_t k = klo; k <= khi; ++k) s.add(A.get(i, k), B.get(k, j));
            P.set(i, j, s.value());
        }
    return P;
}

}  // namespace

LatticeWindow LatticeWindow::bilateral(long N)
{
    if (N < 0) throw Error(ErrorCode::InvalidArgument, "window size must be nonnegative");
    return {LatticeKind::Bilateral, -N, N};
}

LatticeWindow LatticeWindow::unilateral(long N)
{
    if (N < 0) throw Error(ErrorCode::InvalidArgument, "window size must be nonnegative");
    return {LatticeKind::Unilateral, 0, N};
}

void LatticeWindow::validate() const
{
    if (n_lo > 0 || n_hi < 0 || n_lo > n_hi) throw Error(ErrorCode::InvalidArgument, "window must contain site 0");
    if (kind == LatticeKind::Unilateral && n_lo != 0)
        throw Error(ErrorCode::InvalidArgument, "unilateral windows start at site 0");
}

BandedHermitian::BandedHermitian(LatticeWindow win, std::size_t half_bandwidth)
    : BandedHermitian(win.dim(), half_bandwidth)
{
    win_ = win;
}

BandedHermitian::BandedHermitian(std::size_t dim, std::size_t half_bandwidth) : dim_(dim)
{
    w_ = dim == 0 ? 0 : std::min(half_bandwidth, dim - 1);
    win_ = {LatticeKind::Bilateral, 0, static_cast<long>(dim / 2) - 1};
    diags_.resize(w_ + 1);
    for (std::size_t d = 0; d <= w_; ++d) diags_[d].assign(dim - d, cplx(0.0));
}

cplx BandedHermitian::get(std::size_t i, std::size_t j) const
{
    if (j >= i) {
        std::size_t d = j - i;
        return d <= w_ ? diags_[d][i] : cplx(0.0);
    }
    std::size_t d = i - j;
    return d <= w_ ? std::conj(diags_[d][j]) : cplx(0.0);
}

void BandedHermitian::set(std::size_t i, std::size_t j, cplx v)
{
    if (i == j) {
        diags_[0][i] = v.real();
        return;
    }
    if (j < i) {
        std::swap(i, j);
        v = std::conj(v);
    }
    std::size_t d = j - i;
    if (d > w_) throw Error(ErrorCode::InvalidArgument, "entry outside the declared band");
    diags_[d][i] = v;
}

void BandedHermitian::add(std::size_t i, std::size_t j, cplx v) { set(i, j, get(i, j) + v); }

CMatrix BandedHermitian::dense() const
{
    CMatrix M(dim_, dim_);
    for (std::size_t d = 0; d <= w_; ++d)
        for (std::size_t i = 0; i + d < dim_; ++i) {
            M(i, i + d) = diags_[d][i];
            M(i + d, i) = std::conj(diags_[d][i]);
        }
    return M;
}

void BandedHermitian::matvec(const cplx* x, cplx* y) const
{
    for (std::size_t i = 0; i < dim_; ++i) y[i] = diags_[0][i] * x[i];
    for (std::size_t d = 1; d <= w_; ++d) {
        const auto& dg = diags_[d];
        for (std::size_t i = 0; i + d < dim_; ++i) {
            y[i] += dg[i] * x[i + d];
            y[i + d] += std::conj(dg[i]) * x[i];
        }
    }
}

double BandedHermitian::max_abs() const
{
    double m = 0.0;
    for (const auto& dg : diags_)
        for (const auto& v : dg) m = std::max(m, std::abs(v));
    return m;
}

double BandedHermitian::norm_bound() const
{
    std::vector<double> row(dim_, 0.0);
    for (std::size_t i = 0; i < dim_; ++i) row[i] = std::abs(diags_[0][i]);
    for (std::size_t d = 1; d <= w_; ++d)
        for (std::size_t i = 0; i + d < dim_; ++i) {
            double v = std::abs(diags_[d][i]);
            row[i] += v;
            row[i + d] += v;
        }
    return dim_ ? *std::max_element(row.begin(), row.end()) : 0.0;
}

BandedHermitian BandedHermitian::with_bandwidth(std::size_t w) const
{
    BandedHermitian r(dim_, std::max(w, w_));
    r.win_ = win_;
    for (std::size_t d = 0; d <= w_; ++d) r.diags_[d] = diags_[d];
    return r;
}

BandedHermitian operator+(const BandedHermitian& a, const BandedHermitian& b)
{
    require_same_window(a, b);
    BandedHermitian r = a.with_bandwidth(b.half_bandwidth());
    for (std::size_t d = 0; d <= b.half_bandwidth(); ++d) {
        auto& rd = r.diagonal(d);
        const auto& bd = b.diagonal(d);
        for (std::size_t i = 0; i < bd.size(); ++i) rd[i] += bd[i];
    }
    return r;
}

BandedHermitian scaled(const BandedHermitian& a, double s)
{
    BandedHermitian r = a;
    for (std::size_t d = 0; d <= r.half_bandwidth(); ++d)
        for (auto& v : r.diagonal(d)) v *= s;
    return r;
}

BandedHermitian shifted_identity(const BandedHermitian& a, double s)
{
    BandedHermitian r = a;
    for (auto& v : r.diagonal(0)) v += s;
    return r;
}

MatrixSequence constant_sequence(const Mat2& c, std::string label)
{
    return {[c](long) { return c; }, std::nullopt, std::move(label)};
}

MatrixSequence scaled_sequence(const MatrixSequence& w, cplx c)
{
    auto f = w.eval;
    return {[f, c](long n) { return f(n) * c; }, w.support_hint, w.label};
}

BandedHermitian build_H0(const ModelParams& p, const LatticeWindow& win)
{
    win.validate();
    BandedHermitian H(win, 3);
    for (long n = win.n_lo; n <= win.n_hi; ++n) {
        std::size_t up = win.index(n, 0), lo = win.index(n, 1);
        H.set(up, up, p.alpha);
        H.set(lo, lo, -p.alpha);
        H.set(up, lo, std::conj(p.a));
        if (n + 1 <= win.n_hi) H.set(up, win.index(n + 1, 1), std::conj(p.b));
    }
    return H;
}

BandedHermitian build_potential(const PotentialSpec& spec, const LatticeWindow& win)
{
    win.validate();
    int jmax = 0;
    for (const auto& [j, vj] : spec.shifted) {
        if (j < 1) throw Error(ErrorCode::InvalidArgument, "shift orders must be positive");
        jmax = std::max(jmax, j);
    }
    BandedHermitian V(win, jmax > 0 ? 2 * jmax + 1 : 1);
    if (spec.v0) {
        for (long n = win.n_lo; n <= win.n_hi; ++n) {
            Mat2 v = spec.v0->eval(n);
            if ((v - v.adjoint()).max_abs() > 1e-12)
                throw Error(ErrorCode::NotHermitian, "v0(" + std::to_string(n) + ") is not Hermitian");
            set_block(V, win, n, n, v);
        }
    }
    for (const auto& [j, vj] : spec.shifted) {
        // S^j V_j puts V_j(m) at block (m + j, m)
        for (long m = win.n_lo; m + j <= win.n_hi; ++m) {
            Mat2 v = vj.eval(m);
            for (int r = 0; r < 2; ++r)
                for (int c = 0; c < 2; ++c) V.add(win.index(m + j, r), win.index(m, c), v(r, c));
        }
    }
    return V;
}

BandedHermitian build_Ak(const ModelParams& p, int k, const LatticeWindow& win)
{
    win.validate();
    if (k < 1) throw Error(ErrorCode::InvalidArgument, "A_k requires k >= 1");
    if (2 * k + 1 >= win.sites()) throw Error(ErrorCode::WindowTooSmall, "window too small for A_k");
    BandedHermitian A(win, 2 * static_cast<std::size_t>(k));
    cplx c0 = I1 * (p.abs_a * p.abs_b / 4.0) * std::polar(1.0, k * p.phi);
    for (long n = win.n_lo; n + k <= win.n_hi; ++n) {
        cplx c = c0 * static_cast<double>(2 * n + k);
        for (int s = 0; s < 2; ++s) A.set(win.index(n + k, s), win.index(n, s), c);
    }
    return A;
}

BandedHermitian build_A0(const ModelParams& p, const LatticeWindow& win)
{
    win.validate();
    if (!p.gapless()) throw Error(ErrorCode::NotGapless, "A_0 is defined for gapless parameters only");
    if (win.sites() < 3) throw Error(ErrorCode::WindowTooSmall, "A_0 needs at least three sites");
    BandedHermitian A(win, 3);
    // |a| e^{-i phi1} = conj(a) and |a| e^{-i phi2} = (|a|/|b|) conj(b), taken from a, b directly
    cplx ca = std::conj(p.a), cb = (p.abs_a / p.abs_b) * std::conj(p.b);
    for (long n = win.n_lo; n <= win.n_hi; ++n) {
        A.set(win.index(n, 0), win.index(n, 1), 2.0 * I1 * ca * static_cast<double>(n));
        if (n - 1 >= win.n_lo)
            A.set(win.index(n - 1, 0), win.index(n, 1), -I1 * cb * static_cast<double>(2 * n - 1));
    }
    return A;
}

BandedHermitian build_diag_sequence(const MatrixSequence& w, const LatticeWindow& win)
{
    PotentialSpec s;
    s.v0 = w;
    return build_potential(s, win);
}

BandedHermitian commutator_i(const BandedHermitian& A, const BandedHermitian& B)
{
    require_same_window(A, B);
    std::size_t wa = A.half_bandwidth(), wb = B.half_bandwidth(), w = wa + wb, n = A.dim();
    BandedHermitian C(A.window(), w);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j <= std::min(n - 1, i + w); ++j) {
            // i (AB - BA) with BA = (AB)^*, accumulated in one compensated sum
            CDot2 s;
            std::size_t klo = std::max(i >= wa ? i - wa : 0, j >= wb ? j - wb : 0);
            std::size_t khi = std::min({n - 1, i + wa, j + wb});
            for (std::size_t k = klo; k <= khi; ++k) s.add(A.get(i, k), B.get(k, j));
            klo = std::max(j >= wa ? j - wa : 0, i >= wb ? i - wb : 0);
            khi = std::min({n - 1, j + wa, i + wb});
            for (std::size_t k = klo; k <= khi; ++k) s.add(-std::conj(A.get(j, k)), std::conj(B.get(k, i)));
            C.set(i, j, I1 * s.value());
        }
    return C;
}

CMatrix interior_restrict(const CMatrix& dense, const LatticeWindow& win, long margin)
{
    auto [s0, s1] = interior_sites(win, margin);
    std::size_t i0 = win.index(s0, 0), m = static_cast<std::size_t>(2 * (s1 - s0 + 1));
    CMatrix R(m, m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) R(i, j) = dense(i0 + i, i0 + j);
    return R;
}

CMatrix interior_restrict(const BandedHermitian& M, long margin)
{
    auto [s0, s1] = interior_sites(M.window(), margin);
    std::size_t i0 = M.window().index(s0, 0), m = static_cast<std::size_t>(2 * (s1 - s0 + 1));
    CMatrix R(m, m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) R(i, j) = M.get(i0 + i, i0 + j);
    return R;
}

BandedHermitian compressed_commutator(const ModelParams& p, int k, const LatticeWindow& win, const PotentialSpec* V)
{
    win.validate();
    long reach_a = k >= 1 ? k : 1;
    long reach_h = 1;
    if (V)
        for (const auto& [j, vj] : V->shifted) reach_h = std::max<long>(reach_h, j);
    long pad = reach_a + reach_h;
    LatticeWindow big = win;
    big.n_hi += pad;
    if (win.kind == LatticeKind::Bilateral) big.n_lo -= pad;

    BandedHermitian H = build_H0(p, big);
    if (V) H = H + build_potential(*V, big);
    BandedHermitian A = k >= 1 ? build_Ak(p, k, big) : build_A0(p, big);
    BandedHermitian Cb = commutator_i(A, H);

    BandedHermitian C(win, Cb.half_bandwidth());
    std::size_t off = big.index(win.n_lo, 0);
    for (std::size_t d = 0; d <= C.half_bandwidth(); ++d) {
        auto& dst = C.diagonal(d);
        const auto& src = Cb.diagonal(d);
        for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = src[off + i];
    }
    return C;
}

double check_A0_identity(const ModelParams& p, const LatticeWindow& win, long margin)
{
    if (!p.gapless()) throw Error(ErrorCode::NotGapless, "A_0 identity requires gapless parameters");
    BandedHermitian H = build_H0(p, win);
    BandedHermitian A = build_A0(p, win);
    BandedHermitian C = commutator_i(A, H);
    BandedHermitian H2 = hermitian_product(H, H);
    double c = 4.0 * p.abs_a * p.abs_a;
    return interior_deviation(C, margin, C.half_bandwidth(), [&](std::size_t i, std::size_t j) {
        return (i == j ? cplx(c) : cplx(0.0)) - H2.get(i, j);
    });
}

double check_Ak_first_commutator(const ModelParams& p, int k, const MatrixSequence& W, const LatticeWindow& win,
                                 long margin)
{
    if (margin < k) throw Error(ErrorCode::InvalidArgument, "margin must be at least k");
    BandedHermitian A = build_Ak(p, k, win);
    BandedHermitian C = commutator_i(A, build_diag_sequence(W, win));

    // (|a||b|/4) [e^{ik phi} S^k D + D e^{-ik phi} S^{*k}],  D(m) = (2m+k)(W(m+k) - W(m))
    double pref = p.abs_a * p.abs_b / 4.0;
    cplx ph = std::polar(1.0, k * p.phi);
    auto D = [&](long m) { return (W.eval(m + k) - W.eval(m)) * cplx(static_cast<double>(2 * m + k)); };
    auto block = [&](long n, long m) -> Mat2 {
        if (n == m + k) return D(m) * (pref * ph);
        if (m == n + k) return D(n) * (pref * std::conj(ph));
        return Mat2{};
    };
    auto [s0, s1] = interior_sites(win, margin);
    double dev = 0.0;
    for (long n = s0; n <= s1; ++n)
        for (long m = std::max(s0, n - k); m <= std::min(s1, n + k); ++m) {
            Mat2 R = block(n, m);
            for (int r = 0; r < 2; ++r)
                for (int c = 0; c < 2; ++c)
                    dev = std::max(dev, std::abs(C.get(win.index(n, r), win.index(m, c)) - R(r, c)));
        }
    return dev;
}

double check_A0_commutator(const ModelParams& p, const MatrixSequence& W, const LatticeWindow& win, long margin)
{
    if (!p.gapless()) throw Error(ErrorCode::NotGapless, "A_0 commutator requires gapless parameters");
    if (margin < 2) throw Error(ErrorCode::InvalidArgument, "margin must be at least 2");
    BandedHermitian A = build_A0(p, win);
    BandedHermitian Wm = build_diag_sequence(W, win);
    BandedHermitian C = commutator_i(A, Wm);

    // B-blocks evaluated on the component-swapped sequence, result swapped back
    auto Ws = [&](long n) { return swap_components(W.eval(n)); };
    cplx e1 = std::polar(1.0, p.phi1);
    auto B1 = [&](long m) {
        Mat2 w = Ws(m), w1 = Ws(m + 1);
        return Mat2(w(1, 0), w(1, 1) - w1(0, 0), 0.0, -w1(1, 0));
    };
    auto B0 = [&](long m) {
        Mat2 w = Ws(m);
        cplx d = e1 * w(1, 0) + std::conj(e1) * w(0, 1);
        cplx o = w(1, 1) - w(0, 0);
        return Mat2(d, e1 * o, std::conj(e1) * o, -d);
    };
    auto Bm1 = [&](long m) {
        Mat2 w = Ws(m), w1 = Ws(m + 1);
        return Mat2(w(0, 1), 0.0, w(1, 1) - w1(0, 0), -w1(0, 1));
    };
    double aa = p.abs_a;
    cplx e2 = std::polar(1.0, p.phi2);
    auto block = [&](long n, long m) -> Mat2 {
        // -|a| ( e^{i phi2} S (2X+1) B_1 - 2X B_0 + e^{-i phi2} (2X+1) B_{-1} S^* )
        Mat2 r;
        if (n == m + 1) r = B1(m) * (e2 * static_cast<double>(2 * m + 1));
        else if (n == m) r = B0(m) * cplx(-2.0 * static_cast<double>(m));
        else if (m == n + 1) r = Bm1(n) * (std::conj(e2) * static_cast<double>(2 * n + 1));
        return swap_components(r * cplx(-aa));
    };
    auto [s0, s1] = interior_sites(win, margin);
    double dev = 0.0;
    for (long n = s0; n <= s1; ++n)
        for (long m = std::max(s0, n - 2); m <= std::min(s1, n + 2); ++m) {
            Mat2 R = block(n, m);
            for (int r = 0; r < 2; ++r)
                for (int c = 0; c < 2; ++c)
                    dev = std::max(dev, std::abs(C.get(win.index(n, r), win.index(m, c)) - R(r, c)));
        }
    return dev;
}

ProjectedMin projected_commutator_min_eig(const BandedHermitian& H, const BandedHermitian& C, double lo, double hi)
{
    require_same_window(H, C);
    if (!(hi > lo)) throw Error(ErrorCode::InvalidArgument, "empty spectral window");
    EigenPairs ep = banded_eig_selected(H, lo, hi);
    std::size_t r = ep.values.size();
    if (r == 0) throw Error(ErrorCode::EmptyProjector, "no eigenvalues of the truncation in the window");
    std::size_t n = H.dim();
    std::vector<std::vector<cplx>> E(r, std::vector<cplx>(n)), CE(r, std::vector<cplx>(n));
    for (std::size_t c = 0; c < r; ++c) {
        for (std::size_t i = 0; i < n; ++i) E[c][i] = ep.vectors(i, c);
        C.matvec(E[c].data(), CE[c].data());
    }
    CMatrix M(r, r);
    for (std::size_t a = 0; a < r; ++a)
        for (std::size_t b = a; b < r; ++b) {
            const cplx* ea = E[a].data();
            const cplx* cb = CE[b].data();
            double sr = 0.0, si = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                sr += ea[i].real() * cb[i].real() + ea[i].imag() * cb[i].imag();
                si += ea[i].real() * cb[i].imag() - ea[i].imag() * cb[i].real();
            }
            M(a, b) = cplx(sr, si);
            M(b, a) = cplx(sr, -si);
        }
    for (std::size_t a = 0; a < r; ++a) M(a, a) = M(a, a).real();
    EigenPairs inner = hermitian_dense_eig(M, false);
    return {inner.values.front(), inner.values.back(), r};
}

SshUnfold ssh_unfold(const ModelParams& p, const LatticeWindow& win)
{
    win.validate();
    BandedHermitian H = build_H0(p, win);
    std::size_t n = H.dim();
    SshUnfold out;
    out.diag.resize(n);
    out.offdiag.resize(n > 0 ? n - 1 : 0);
    for (std::size_t m = 0; m < n; ++m) out.diag[m] = (m % 2 == 0) ? -p.alpha : p.alpha;
    for (std::size_t m = 0; m + 1 < n; ++m) out.offdiag[m] = (m % 2 == 0) ? p.a : std::conj(p.b);

    // U maps psi(2n) to the lower and psi(2n+1) to the upper component of site n
    auto perm = [&](std::size_t m) { return (m % 2 == 0) ? m + 1 : m - 1; };
    double res = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = (i >= 4 ? i - 4 : 0); j < std::min(n, i + 5); ++j) {
            cplx J = 0.0;
            if (i == j) J = out.diag[i];
            else if (j == i + 1) J = out.offdiag[i];
            else if (i == j + 1) J = std::conj(out.offdiag[j]);
            res = std::max(res, std::abs(H.get(perm(i), perm(j)) - J));
        }
    out.residual = res;
    return out;
}

void dump_matrix(const BandedHermitian& M, std::ostream& os)
{
    os << M.dim() << ' ' << M.half_bandwidth() << '\n';
    os << std::setprecision(17);
    for (std::size_t d = 0; d <= M.half_bandwidth(); ++d)
        for (std::size_t i = 0; i + d < M.dim(); ++i) {
            cplx v = M.diagonal(d)[i];
            os << i << ' ' << i + d << ' ' << v.real() << ' ' << v.imag() << '\n';
        }
}

}  // namespace mourre
