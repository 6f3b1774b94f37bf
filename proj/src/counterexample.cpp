#include <algorithm>
#include <cmath>
#include <memory>

#include "mourre/classes.hpp"

namespace mourre {

int SubordinateFamily::block_of(long j) const
{
    if (blocks.empty() || j < blocks.front().first || j > blocks.back().second) return -1;
    auto it = std::upper_bound(blocks.begin(), blocks.end(), j,
                               [](long v, const std::pair<long, long>& b) { return v < b.first; });
    return static_cast<int>(it - blocks.begin()) - 1;
}

SubordinateFamily make_family(std::vector<std::pair<long, long>> blocks, std::function<double(int, long)> f)
{
    if (blocks.empty()) throw Error(ErrorCode::InvalidArgument, "partition is empty");
    if (blocks.front().first != 0) throw Error(ErrorCode::InvalidArgument, "partition must start at 0");
    SubordinateFamily fam;
    fam.starts_at_zero = true;
    for (std::size_t n = 0; n < blocks.size(); ++n) {
        auto [lo, hi] = blocks[n];
        if (hi < lo) throw Error(ErrorCode::InvalidArgument, "empty block");
        if (n > 0 && lo != blocks[n - 1].second + 1) throw Error(ErrorCode::InvalidArgument, "blocks are not contiguous");
        if (n > 1 && hi - lo <= blocks[n - 1].second - blocks[n - 1].first)
            throw Error(ErrorCode::InvalidArgument, "block sizes must increase strictly");
        double s1 = 0.0, sinf = 0.0, mM = 0.0;
        for (long j = lo; j <= hi; ++j) {
            double v = f(static_cast<int>(n), j);
            if (v < 0.0) throw Error(ErrorCode::InvalidArgument, "profile must be nonnegative");
            s1 += v;
            sinf = std::max(sinf, v);
            if (j < hi) mM = std::max(mM, std::abs(v - f(static_cast<int>(n), j + 1)));
        }
        mM = std::max(mM, f(static_cast<int>(n), hi));
        if (!(s1 > 0.0)) throw Error(ErrorCode::InvalidArgument, "profile has zero mass");
        if (f(static_cast<int>(n), lo) != 0.0) fam.starts_at_zero = false;
        fam.norms_1.push_back(s1);
        fam.norms_inf.push_back(sinf);
        fam.max_M.push_back(mM);
    }
    fam.blocks = std::move(blocks);
    fam.f = std::move(f);
    return fam;
}

SubordinateFamily dyadic_tent_family(int n_max)
{
    if (n_max < 1) throw Error(ErrorCode::InvalidArgument, "n_max must be >= 1");
    std::vector<std::pair<long, long>> blocks{{0, 1}};
    for (int n = 1; n <= n_max; ++n) blocks.push_back({1L << n, (1L << (n + 1)) - 1});
    auto tent = [](int n, long j) -> double {
        if (n == 0) return j == 1 ? 1.0 : 0.0;
        long lo = 1L << n, hi = 1L << (n + 1);
        if (j < lo || j >= hi) return 0.0;
        return static_cast<double>(std::min(j - lo, hi - j));
    };
    return make_family(std::move(blocks), tent);
}

double CounterexampleSeq::b(long j) const
{
    int n = family.block_of(j);
    if (n < 0) return 0.0;
    double sgn = (n % 2 == 0) ? 1.0 : -1.0;
    return sgn * a(n) * family.f(n, j) / family.norms_1[static_cast<std::size_t>(n)];
}

CounterexampleSeq build_counterexample(const SubordinateFamily& family, std::function<double(long)> a)
{
    const int nb = static_cast<int>(family.blocks.size());
    // Leibniz check on the blocks we have, then divergence of sum a_n on a long run
    double prev = INFINITY;
    for (int n = 0; n < nb; ++n) {
        double v = a(n);
        if (!(v > 0.0) || v > prev) throw Error(ErrorCode::NotAlternating, "a_n must be positive and nonincreasing");
        prev = v;
    }
    long probe = 1000000;
    if (!(a(probe) < 1e-2 * a(0))) throw Error(ErrorCode::NotAlternating, "a_n does not tend to zero");
    std::vector<double> dec;
    double s = 0.0;
    long mark = 1;
    for (long n = 0; n < probe; ++n) {
        s += a(n);
        if (n + 1 == mark) {
            dec.push_back(s);
            mark *= 10;
        }
    }
    if (decide_partial_sums(dec, probe).verdict == Verdict::Member)
        throw Error(ErrorCode::NotAlternating, "sum of a_n converges; the construction needs a divergent one");

    CounterexampleSeq seq{family, std::move(a), std::nullopt, std::nullopt};
    if (family.starts_at_zero) {
        double L1 = 0.0, L2 = 0.0;
        for (int n = 0; n < nb; ++n) {
            auto i = static_cast<std::size_t>(n);
            double beta = static_cast<double>(family.blocks[i].second);
            double an = seq.a(n);
            L1 = std::max(L1, beta * an * family.norms_inf[i] / family.norms_1[i]);
            L2 = std::max(L2, beta * beta * an * family.max_M[i] / family.norms_1[i]);
        }
        seq.L1 = L1;
        seq.L2 = L2;
    }
    return seq;
}

double alternating_tail(const std::function<double(long)>& a, long m)
{
    // Euler transform via repeated averaging of the partial sums
    constexpr int K = 40;
    std::vector<double> s(K);
    double acc = 0.0;
    for (int i = 0; i < K; ++i) {
        long l = m + 1 + i;
        acc += ((l % 2 == 0) ? 1.0 : -1.0) * a(l);
        s[static_cast<std::size_t>(i)] = acc;
    }
    for (int len = K; len > 1; --len)
        for (int i = 0; i + 1 < len; ++i) s[i] = 0.5 * (s[i] + s[i + 1]);
    return s[0];
}

CounterexampleReport verify_counterexample(const CounterexampleSeq& seq, int p_max, long horizon)
{
    const auto& fam = seq.family;
    if (p_max < 1) throw Error(ErrorCode::InvalidArgument, "p_max must be positive");
    horizon = std::min(horizon, fam.last_index());
    int covered = 0;
    while (covered < static_cast<int>(fam.blocks.size()) && fam.blocks[covered].second + p_max <= horizon) ++covered;
    if (covered < 12) throw Error(ErrorCode::InvalidArgument, "horizon must cover at least 12 blocks");

    CounterexampleReport rep;
    rep.horizon = horizon;
    rep.blocks_covered = covered;

    std::vector<double> b(static_cast<std::size_t>(horizon) + 2, 0.0);
    for (long j = 0; j <= horizon; ++j) b[j] = seq.b(j);

    // (i)
    rep.limit = alternating_tail(seq.a, -1);
    double S = 0.0, S_prev_block = 0.0;
    bool between = true;
    rep.max_bound_excess = -INFINITY;
    for (int n = 0; n < covered; ++n) {
        auto [lo, hi] = fam.blocks[n];
        double target = S_prev_block + ((n % 2 == 0) ? 1.0 : -1.0) * seq.a(n);
        double tol = 1e-13 * (1.0 + std::abs(target));
        for (long j = lo; j <= hi; ++j) {
            S += b[j];
            double lo_s = std::min(S_prev_block, target) - tol, hi_s = std::max(S_prev_block, target) + tol;
            if (S < lo_s || S > hi_s) between = false;
        }
        rep.max_bound_excess = std::max(rep.max_bound_excess, std::abs(S - rep.limit) - seq.a(n + 1));
        S_prev_block = S;
    }
    rep.between_block_sums = between;
    rep.item_i = between && rep.max_bound_excess <= 1e-12;

    // (ii)
    rep.item_ii = true;
    for (int p = 1; p <= p_max; ++p) {
        CounterexampleReport::PItem row;
        row.p = p;
        row.n_p = -1;
        for (int n = 0; n < static_cast<int>(fam.blocks.size()); ++n)
            if (p < fam.blocks[n].second - fam.blocks[n].first + 1) {
                row.n_p = n;
                break;
            }
        if (row.n_p < 0 || row.n_p >= covered - 3) throw Error(ErrorCode::InvalidArgument, "p exceeds the covered blocks");
        double window = 0.0;
        for (int i = 0; i < p; ++i) window += b[i];
        double lhs = 0.0, rhs = 0.0;
        std::vector<double> per_block;
        long j = 0;
        for (int n = 0; n < covered; ++n) {
            for (; j <= fam.blocks[n].second; ++j) {
                lhs += std::abs(window);
                window += b[j + p] - b[j];
            }
            if (n >= row.n_p) rhs += seq.a(n);
            per_block.push_back(lhs);
        }
        row.lhs = lhs;
        row.rhs = rhs;
        row.dominates = lhs >= rhs * (1.0 - 1e-12);
        // block index plays the role of the logarithmic scale
        std::vector<double> tail(per_block.begin() + row.n_p, per_block.end());
        row.divergence = decide_partial_sums(tail, horizon);
        rep.item_ii = rep.item_ii && row.dominates && row.divergence.verdict == Verdict::Nonmember;
        rep.item_ii_rows.push_back(std::move(row));
    }

    // (iii)
    for (long j = 0; j <= horizon; ++j) {
        double dj = static_cast<double>(j);
        rep.sup_jb = std::max(rep.sup_jb, std::abs(dj * b[j]));
        if (j < horizon) rep.sup_j2db = std::max(rep.sup_j2db, std::abs(dj * dj * (b[j] - b[j + 1])));
    }
    rep.item_iii = seq.L1 && seq.L2 && rep.sup_jb <= *seq.L1 * (1 + 1e-12) && rep.sup_j2db <= *seq.L2 * (1 + 1e-12);
    return rep;
}

PotentialSpec counterexample_potential(const CounterexampleSeq& seq)
{
    const auto& fam = seq.family;
    const long last = fam.last_index();
    const int nb = static_cast<int>(fam.blocks.size());
    // T[m] = sum over blocks l > m of (-1)^l a_l
    std::vector<double> T(static_cast<std::size_t>(nb));
    for (int m = 0; m < nb; ++m) T[m] = alternating_tail(seq.a, m);
    auto v = std::make_shared<std::vector<double>>(static_cast<std::size_t>(last) + 1);
    for (int m = 0; m < nb; ++m) {
        auto [lo, hi] = fam.blocks[m];
        double acc = 0.0;
        for (long n = hi; n >= lo; --n) {
            acc += seq.b(n);
            (*v)[n] = -T[m] - acc;
        }
    }
    MatrixSequence w{[v, last](long n) {
                         if (n < 0 || n > last) return Mat2{};
                         return Mat2((*v)[n], 0.0, 0.0, 0.0);
                     },
                     std::make_pair(0L, last), "counterexample"};
    PotentialSpec spec;
    spec.v0 = std::move(w);
    return spec;
}

}  // namespace mourre
