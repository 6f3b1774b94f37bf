#include "mourre/probe.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <thread>

namespace mourre {

const char* side_name(Side s)
{
    switch (s) {
    case Side::Left: return "left";
    case Side::Center: return "center";
    case Side::Right: return "right";
    case Side::Extended: return "extended";
    }
    return "extended";
}

int resolve_threads(int threads)
{
    if (threads > 0) return threads;
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

namespace {

// run f(i) for i in [0, n) on up to `threads` workers
template <class F>
void parallel_for(std::size_t n, int threads, F&& f)
{
    int t = std::min<int>(resolve_threads(threads), static_cast<int>(std::max<std::size_t>(n, 1)));
    if (t <= 1) {
        for (std::size_t i = 0; i < n; ++i) f(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr err;
    std::mutex mu;
    std::vector<std::thread> pool;
    for (int w = 0; w < t; ++w)
        pool.emplace_back([&] {
            for (;;) {
                std::size_t i = next++;
                if (i >= n) return;
                try {
                    f(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(mu);
                    if (!err) err = std::current_exception();
                }
            }
        });
    for (auto& th : pool) th.join();
    if (err) std::rethrow_exception(err);
}

std::vector<cplx> column(const CMatrix& V, std::size_t c)
{
    std::vector<cplx> v(V.rows());
    for (std::size_t i = 0; i < V.rows(); ++i) v[i] = V(i, c);
    return v;
}

// Nearly degenerate eigenvalues (e.g. one state at each end of the window) come out of the
// solver as arbitrary mixtures; rotate each cluster to diagonalize the position operator.
void separate_clusters(EigenPairs& ep, const LatticeWindow& win)
{
    const std::size_t n = ep.vectors.rows(), m = ep.values.size();
    for (std::size_t c0 = 0; c0 < m;) {
        std::size_t c1 = c0 + 1;
        while (c1 < m && ep.values[c1] - ep.values[c1 - 1] <= 1e-9 * std::max(1.0, std::abs(ep.values[c1]))) ++c1;
        const std::size_t g = c1 - c0;
        if (g > 1) {
            CMatrix X(g, g);
            for (std::size_t a = 0; a < g; ++a)
                for (std::size_t b = 0; b < g; ++b) {
                    cplx s = 0;
                    for (std::size_t r = 0; r < n; ++r)
                        s += std::conj(ep.vectors(r, c0 + a)) * static_cast<double>(win.site_of(r)) * ep.vectors(r, c0 + b);
                    X(a, b) = s;
                }
            EigenPairs rot = hermitian_dense_eig(X, true);
            CMatrix old(n, g);
            for (std::size_t r = 0; r < n; ++r)
                for (std::size_t a = 0; a < g; ++a) old(r, a) = ep.vectors(r, c0 + a);
            for (std::size_t r = 0; r < n; ++r)
                for (std::size_t b = 0; b < g; ++b) {
                    cplx s = 0;
                    for (std::size_t a = 0; a < g; ++a) s += old(r, a) * rot.vectors(a, b);
                    ep.vectors(r, c0 + b) = s;
                }
        }
        c0 = c1;
    }
}

}  // namespace

EigenPairs hermitian_eigs(const BandedHermitian& M, bool want_vectors)
{
    if (M.dim() <= kDenseThreshold) return hermitian_dense_eig(M.dense(), want_vectors);
    if (!want_vectors) return {banded_eigvals(M), CMatrix()};
    return banded_eig_selected(M, -INFINITY, INFINITY);
}

Side localization_side(const std::vector<cplx>& v, const LatticeWindow& win, double* decay_ratio)
{
    const long sites = win.sites();
    std::vector<double> mag(static_cast<std::size_t>(sites));
    double total = 0.0;
    for (long m = 0; m < sites; ++m) {
        double s = std::norm(v[2 * m]) + std::norm(v[2 * m + 1]);
        mag[m] = std::sqrt(s);
        total += s;
    }
    double thirds[3] = {0, 0, 0};
    for (long m = 0; m < sites; ++m) thirds[std::min<long>(3 * m / sites, 2)] += mag[m] * mag[m];
    Side side = Side::Extended;
    for (int t = 0; t < 3; ++t)
        if (total > 0.0 && thirds[t] >= kLocalizedMass * total) side = static_cast<Side>(t);

    if (decay_ratio) {
        // geometric mean of successive site ratios from the peak to where the tail hits the noise floor
        long peak = static_cast<long>(std::max_element(mag.begin(), mag.end()) - mag.begin());
        int dir = (peak < sites - 1 - peak) ? 1 : -1;
        double floor_ = 1e-10 * mag[peak];
        long m = peak;
        while (m + dir >= 0 && m + dir < sites && mag[m + dir] > floor_) m += dir;
        long steps = std::abs(m - peak);
        *decay_ratio = (steps == 0 || mag[peak] == 0.0) ? 1.0 : std::pow(mag[m] / mag[peak], 1.0 / steps);
    }
    return side;
}

EigReport truncation_stable_eigs(const OperatorBuilder& builder, double lo, double hi, const std::vector<long>& N_list,
                                 int threads)
{
    if (N_list.size() < 2) throw Error(ErrorCode::InvalidArgument, "need at least two truncation sizes");
    for (std::size_t i = 1; i < N_list.size(); ++i)
        if (N_list[i] <= N_list[i - 1]) throw Error(ErrorCode::InvalidArgument, "N list must increase");
    if (!(lo < hi)) throw Error(ErrorCode::InvalidArgument, "empty target window");

    std::vector<EigenPairs> runs(N_list.size());
    std::vector<LatticeWindow> wins(N_list.size());
    parallel_for(N_list.size(), threads, [&](std::size_t i) {
        BandedHermitian M = builder(N_list[i]);
        wins[i] = M.window();
        EigenPairs ep = banded_eig_selected(M, lo, hi);
        // the selection is on a closed interval; keep the open one
        EigenPairs kept;
        std::vector<std::size_t> idx;
        for (std::size_t c = 0; c < ep.values.size(); ++c)
            if (ep.values[c] > lo && ep.values[c] < hi) idx.push_back(c);
        kept.vectors = CMatrix(M.dim(), idx.size());
        for (std::size_t j = 0; j < idx.size(); ++j) {
            kept.values.push_back(ep.values[idx[j]]);
            for (std::size_t r = 0; r < M.dim(); ++r) kept.vectors(r, j) = ep.vectors(r, idx[j]);
        }
        runs[i] = std::move(kept);
    });

    separate_clusters(runs.back(), wins.back());
    const EigenPairs& last = runs.back();
    const LatticeWindow& win = wins.back();
    EigReport rep;
    for (std::size_t c = 0; c < last.values.size(); ++c) {
        double lam = last.values[c];
        double drift = 0.0;
        bool matched = true;
        for (std::size_t i = 0; i + 1 < runs.size(); ++i) {
            double best = INFINITY;
            for (double v : runs[i].values) best = std::min(best, std::abs(v - lam));
            if (best > kMatchTol) matched = false;
            drift = std::max(drift, best);
        }
        double ratio = 1.0;
        Side side = localization_side(column(last.vectors, c), win, &ratio);
        bool real_edge_ok = win.kind == LatticeKind::Unilateral ? (side == Side::Left || side == Side::Center)
                                                                  : side == Side::Center;
        rep.values.push_back(lam);
        rep.stable.push_back(matched && drift < kStableDrift && real_edge_ok);
        rep.decay_ratio.push_back(ratio);
        rep.side.push_back(side);
        rep.drift.push_back(matched ? drift : INFINITY);
    }
    return rep;
}

EdgeState edge_state_check(const ModelParams& p, long N)
{
    if (!(p.abs_b > p.abs_a)) throw Error(ErrorCode::NoEdgeState, "edge state requires |b| > |a|");
    if (N < 10) throw Error(ErrorCode::WindowTooSmall, "N too small");
    BandStructure bs = spectral_bands(p);
    double half = bs.lambda_min;
    auto builder = [&p](long n) { return build_H0(p, LatticeWindow::unilateral(n)); };
    EigReport rep = truncation_stable_eigs(builder, -half, half, {N, 2 * N}, 2);
    EdgeState best;
    double dist = INFINITY;
    for (std::size_t i = 0; i < rep.values.size(); ++i) {
        if (!rep.stable[i]) continue;
        double d = std::abs(rep.values[i] + p.alpha);
        if (d < dist) {
            dist = d;
            best = {rep.values[i], rep.decay_ratio[i], rep.drift[i]};
        }
    }
    if (!std::isfinite(dist)) throw Error(ErrorCode::NoEdgeState, "no stable gap eigenvalue found");
    return best;
}

namespace {

ResolventNorm resolvent_norm_impl(const BandedHermitian& H, double s, cplx z, double tol, int cap)
{
    if (z.imag() == 0.0) throw Error(ErrorCode::InvalidArgument, "z must be off the real axis");
    if (!(s > 0.0)) throw Error(ErrorCode::InvalidArgument, "s must be positive");
    const std::size_t n = H.dim();
    const LatticeWindow& win = H.window();
    std::vector<double> d(n);
    for (std::size_t i = 0; i < n; ++i) {
        double x = static_cast<double>(win.site_of(i));
        d[i] = std::pow(1.0 + x * x, -0.5 * s);
    }
    BandedLU lu(H, z), luc(H, std::conj(z));
    std::vector<cplx> buf(n);
    LinearMap gram = [&](const cplx* in, cplx* out) {
        for (std::size_t i = 0; i < n; ++i) buf[i] = d[i] * in[i];
        lu.solve(buf.data());
        for (std::size_t i = 0; i < n; ++i) buf[i] *= d[i] * d[i];
        luc.solve(buf.data());
        for (std::size_t i = 0; i < n; ++i) out[i] = d[i] * buf[i];
    };
    PowerResult pr = power_iteration_norm(gram, n, tol, cap);
    return {pr.sigma_max, pr.iters, pr.converged};
}

}  // namespace

ResolventNorm weighted_resolvent_norm(const BandedHermitian& H, double s, cplx z, double tol, int cap)
{
    ResolventNorm r = resolvent_norm_impl(H, s, z, tol, cap);
    if (!r.converged) throw Error(ErrorCode::NoConvergence, "power iteration hit the iteration cap");
    return r;
}

std::vector<LapRow> lap_scan(const BandedHermitian& H, long N, double s, const std::vector<double>& x_grid,
                             const std::vector<double>& eps_list, int threads, double tol, int cap)
{
    for (double e : eps_list)
        if (!(e > 0.0)) throw Error(ErrorCode::InvalidArgument, "epsilon must be positive");
    std::vector<LapRow> rows(x_grid.size() * eps_list.size());
    parallel_for(rows.size(), threads, [&](std::size_t i) {
        double x = x_grid[i / eps_list.size()], e = eps_list[i % eps_list.size()];
        ResolventNorm r = resolvent_norm_impl(H, s, cplx(x, e), tol, cap);
        rows[i] = {x, e, s, N, r.norm, r.iters, r.converged};
    });
    return rows;
}

std::vector<double> control_points(const ModelParams& p, const CriticalSet& kappa)
{
    BandStructure bs = spectral_bands(p);
    std::vector<double> edges{bs.i_minus.lo, bs.i_minus.hi, bs.i_plus.lo, bs.i_plus.hi};
    for (double t : kappa.points) edges.push_back(t);
    std::sort(edges.begin(), edges.end());
    std::vector<double> out;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        double m = 0.5 * (edges[i] + edges[i + 1]);
        if (edges[i + 1] - edges[i] > 1e-9 && (bs.i_minus.contains(m) || bs.i_plus.contains(m))) out.push_back(m);
    }
    return out;
}

std::vector<AccumulationRow> accumulation_scan(const OperatorBuilder& builder, const std::vector<double>& points,
                                               const std::vector<double>& controls,
                                               const std::vector<double>& radii, const std::vector<long>& N_list,
                                               int threads)
{
    if (radii.empty()) throw Error(ErrorCode::InvalidArgument, "no radii");
    for (std::size_t i = 1; i < radii.size(); ++i)
        if (!(radii[i] < radii[i - 1])) throw Error(ErrorCode::InvalidArgument, "radii must decrease");
    std::vector<std::pair<double, bool>> all;
    for (double t : points) all.push_back({t, false});
    for (double t : controls) all.push_back({t, true});
    std::vector<AccumulationRow> rows;
    for (auto [t, ctrl] : all) {
        EigReport rep = truncation_stable_eigs(builder, t - radii.front(), t + radii.front(), N_list, threads);
        for (double r : radii) {
            int c = 0;
            for (std::size_t i = 0; i < rep.values.size(); ++i)
                if (rep.stable[i] && std::abs(rep.values[i] - t) < r) ++c;
            rows.push_back({t, ctrl, r, c});
        }
    }
    return rows;
}

BandCounts band_counts(const std::vector<double>& ev, const BandStructure& bs)
{
    BandCounts c;
    for (double v : ev) {
        if (v <= bs.i_minus.lo) ++c.below;
        else if (v < bs.i_minus.hi) ++c.lower_band;
        else if (v <= bs.i_plus.lo) ++c.gap;
        else if (v < bs.i_plus.hi) ++c.upper_band;
        else ++c.above;
    }
    return c;
}

}  // namespace mourre
