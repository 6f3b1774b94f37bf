#include "mourre/classes.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <memory>
#include <mutex>

namespace mourre {

namespace {

constexpr double kStableRel = 1e-3;
constexpr int kPerDecade = 64;

void check_horizon(const MatrixSequence& W, long horizon)
{
    if (horizon < 1) throw Error(ErrorCode::InvalidArgument, "horizon must be positive");
    if (W.support_hint && horizon > W.support_hint->second)
        throw Error(ErrorCode::Domain, "horizon exceeds the declared support window of " + W.label);
}

bool below_support(const MatrixSequence& W, long n) { return W.support_hint && n < W.support_hint->first; }

Mat2 value(const MatrixSequence& W, long n) { return below_support(W, n) ? Mat2{} : W.eval(n); }

// integrand samples g(m) for m = 1..nmax, folded over +-m
template <class G>
std::vector<double> folded(const MatrixSequence& W, long nmax, G&& g)
{
    std::vector<double> a(static_cast<std::size_t>(nmax) + 1, 0.0);
    for (long m = 1; m <= nmax; ++m) {
        double v = g(m);
        if (!below_support(W, -m)) v = std::max(v, g(-m));
        a[static_cast<std::size_t>(m)] = v;
    }
    return a;
}

// partial integrals of r -> sup_{beta r < m < gamma r} a_m from r0 to 10^d, d = 0..D
std::vector<double> annulus_partials(const std::vector<double>& a, Annulus an, double r0, long horizon)
{
    if (!(an.beta > 0.0) || !(an.gamma > an.beta))
        throw Error(ErrorCode::BadAnnulus, "annulus requires 0 < beta < gamma");
    double rmax = static_cast<double>(horizon) / an.gamma;
    int D = static_cast<int>(std::floor(std::log10(rmax) + 1e-12));
    if (D < 3) throw Error(ErrorCode::InvalidArgument, "horizon too small for the decade statistics");
    const long nmax = static_cast<long>(a.size()) - 1;

    std::deque<long> dq;
    long next = 1;  // next index to push
    auto sup_at = [&](double r) {
        long lo = static_cast<long>(std::floor(an.beta * r)) + 1;
        long hi = static_cast<long>(std::ceil(an.gamma * r)) - 1;
        lo = std::max(lo, 1L);
        hi = std::min(hi, nmax);
        while (next <= hi) {
            while (!dq.empty() && a[dq.back()] <= a[next]) dq.pop_back();
            dq.push_back(next++);
        }
        while (!dq.empty() && dq.front() < lo) dq.pop_front();
        return (lo > hi || dq.empty()) ? 0.0 : a[dq.front()];
    };

    std::vector<double> out;
    int i0 = static_cast<int>(std::ceil(kPerDecade * std::log10(r0) - 1e-9));
    double u_prev = std::log(r0), f_prev = sup_at(r0) * r0, J = 0.0;
    if (i0 <= 0 && std::abs(r0 - 1.0) < 1e-15) out.push_back(0.0);
    for (int i = i0; i <= kPerDecade * D; ++i) {
        double r = std::pow(10.0, static_cast<double>(i) / kPerDecade);
        if (r <= r0 * (1 + 1e-15)) continue;
        double u = std::log(r), f = sup_at(r) * r;
        J += 0.5 * (f + f_prev) * (u - u_prev);
        u_prev = u;
        f_prev = f;
        if (i % kPerDecade == 0 && i >= 0) out.push_back(J);
    }
    if (static_cast<int>(out.size()) < D + 1) {
        // r0 > 1: leading decades carry nothing
        std::vector<double> padded(static_cast<std::size_t>(D + 1) - out.size(), 0.0);
        padded.insert(padded.end(), out.begin(), out.end());
        out = std::move(padded);
    }
    return out;
}

struct RunningSup {
    double at100 = 0.0, at10 = 0.0, at1 = 0.0;
};

template <class Q>
RunningSup running_sup(const MatrixSequence& W, long horizon, Q&& q)
{
    RunningSup rs;
    double sup = 0.0;
    long h100 = horizon / 100, h10 = horizon / 10;
    for (long m = 0; m <= horizon; ++m) {
        sup = std::max(sup, q(m));
        if (m > 0 && !below_support(W, -m)) sup = std::max(sup, q(-m));
        if (m == h100) rs.at100 = sup;
        if (m == h10) rs.at10 = sup;
    }
    rs.at1 = sup;
    return rs;
}

Verdict sup_verdict(const RunningSup& rs)
{
    if (rs.at1 == 0.0) return Verdict::Member;
    if ((rs.at1 - rs.at10) / rs.at1 < kStableRel) return Verdict::Member;
    bool grow1 = rs.at10 > 0.0 && rs.at1 / rs.at10 - 1.0 > kStableRel;
    bool grow2 = rs.at100 > 0.0 && rs.at10 / rs.at100 - 1.0 > kStableRel;
    if (grow1 && grow2) return Verdict::Nonmember;
    return Verdict::Inconclusive;
}

double trend(const RunningSup& rs)
{
    if (rs.at1 == 0.0 || rs.at10 == 0.0) return 0.0;
    return std::log10(rs.at1 / rs.at10);
}

Verdict combine(const std::vector<Verdict>& vs)
{
    bool all_member = true;
    for (Verdict v : vs) {
        if (v == Verdict::Nonmember) return Verdict::Nonmember;
        if (v != Verdict::Member) all_member = false;
    }
    return all_member ? Verdict::Member : Verdict::Inconclusive;
}

double q_value(const MatrixSequence& W, int k, int order, long n)
{
    double dn = static_cast<double>(n);
    if (order == 1) return ((value(W, n) - value(W, n - k)) * cplx(dn)).norm();
    Mat2 d2 = value(W, n) - value(W, n - k) * cplx(2.0) + value(W, n - 2 * k);
    return (d2 * cplx(dn * dn)).norm();
}

}  // namespace

const char* verdict_name(Verdict v)
{
    switch (v) {
    case Verdict::Member: return "member";
    case Verdict::Nonmember: return "nonmember";
    case Verdict::Inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

double ClassVerdict::get(const std::string& name) const
{
    for (const auto& [k, v] : witness)
        if (k == name) return v;
    throw Error(ErrorCode::InvalidArgument, "no witness named " + name);
}

bool ClassVerdict::has(const std::string& name) const
{
    return std::any_of(witness.begin(), witness.end(), [&](const auto& kv) { return kv.first == name; });
}

ClassVerdict decide_partial_sums(const std::vector<double>& vals, long horizon, int fit_points)
{
    if (fit_points < 3) throw Error(ErrorCode::InvalidArgument, "fit needs at least 3 points");
    ClassVerdict cv;
    cv.horizon = horizon;
    const int D = static_cast<int>(vals.size()) - 1;
    if (D < 1) throw Error(ErrorCode::InvalidArgument, "need at least one full decade");
    double total = vals.back();
    double last = vals[D] - vals[D - 1];
    cv.witness = {{"partial_total", total}, {"last_decade_increment", last}};
    if (total <= 0.0) {
        cv.verdict = Verdict::Member;
        cv.witness.push_back({"relative_increment", 0.0});
        return cv;
    }
    double rel = last / total;
    cv.witness.push_back({"relative_increment", rel});
    if (rel < kStableRel) {
        cv.verdict = Verdict::Member;
        return cv;
    }
    // regress ln(increment) on ln(decade index) over the last decades
    std::vector<double> xs, ys;
    for (int d = std::max(1, D - fit_points + 1); d <= D; ++d) {
        double inc = vals[d] - vals[d - 1];
        if (inc > 0.0) {
            xs.push_back(std::log(static_cast<double>(d)));
            ys.push_back(std::log(inc));
        }
    }
    // increments that refuse to shrink: at least logarithmic divergence
    bool non_decreasing = D >= 3 && vals[D] - vals[D - 1] >= vals[D - 1] - vals[D - 2] &&
                          vals[D - 1] - vals[D - 2] >= vals[D - 2] - vals[D - 3] && vals[D - 2] - vals[D - 3] > 0.0;
    cv.witness.push_back({"increments_non_decreasing", non_decreasing ? 1.0 : 0.0});
    if (non_decreasing) {
        cv.verdict = Verdict::Nonmember;
        return cv;
    }
    if (xs.size() < 3) {
        cv.verdict = Verdict::Inconclusive;
        return cv;
    }
    double n = static_cast<double>(xs.size()), mx = 0, my = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
        syy += (ys[i] - my) * (ys[i] - my);
    }
    double slope = sxy / sxx;
    double sse = std::max(0.0, syy - slope * sxy);
    double r2 = syy > 0.0 ? 1.0 - sse / syy : 1.0;
    double rms = std::sqrt(sse / n);
    double p = -slope;
    cv.witness.push_back({"decay_exponent", p});
    cv.witness.push_back({"fit_r2", r2});
    cv.witness.push_back({"fit_rms", rms});
    bool tight = r2 > 0.99 || rms < 0.02;
    if (p >= 1.7 && (r2 > 0.9 || rms < 0.05)) {
        cv.verdict = Verdict::Member;
        cv.witness.push_back({"extrapolated_tail", last * D / (p - 1.0)});
    } else if (p <= 1.3 && tight) {
        cv.verdict = Verdict::Nonmember;
    } else {
        cv.verdict = Verdict::Inconclusive;
    }
    return cv;
}

SeminormResult q_seminorm(const MatrixSequence& W, int k, int order, long horizon)
{
    if (k < 1) throw Error(ErrorCode::InvalidArgument, "q seminorm requires k >= 1");
    if (order != 1 && order != 2) throw Error(ErrorCode::InvalidArgument, "order must be 1 or 2");
    if (horizon < 10L * k) throw Error(ErrorCode::InvalidArgument, "horizon must be at least 10k");
    check_horizon(W, horizon);
    RunningSup rs = running_sup(W, horizon, [&](long n) { return q_value(W, k, order, n); });
    return {rs.at1, trend(rs)};
}

double q0_sequence(const MatrixSequence& W, long n, bool unilateral)
{
    Mat2 w = value(W, n);
    cplx tw22 = (unilateral && n - 1 < 0) ? cplx(0.0) : value(W, n - 1)(1, 1);
    return std::abs(w(0, 1)) + std::abs(w(1, 0)) + std::abs(w(0, 0) - w(1, 1)) + std::abs(tw22 - w(0, 0));
}

ClassVerdict class_Q(const MatrixSequence& W, int k, int order, long horizon)
{
    if (order != 1 && order != 2) throw Error(ErrorCode::InvalidArgument, "order must be 1 or 2");
    if (k < 0) throw Error(ErrorCode::InvalidArgument, "k must be nonnegative");
    check_horizon(W, horizon);
    ClassVerdict cv;
    cv.horizon = horizon;
    if (k == 0) {
        RunningSup rs = running_sup(W, horizon, [&](long n) { return std::abs(static_cast<double>(n)) * q0_sequence(W, n); });
        cv.verdict = sup_verdict(rs);
        cv.witness = {{"sup_q0", rs.at1}, {"trend_q0", trend(rs)}, {"sup_at_tenth", rs.at10}};
        return cv;
    }
    if (horizon < 10L * k) throw Error(ErrorCode::InvalidArgument, "horizon must be at least 10k");
    std::vector<Verdict> vs;
    for (int j = 1; j <= order; ++j) {
        RunningSup rs = running_sup(W, horizon, [&](long n) { return q_value(W, k, j, n); });
        vs.push_back(sup_verdict(rs));
        std::string o = std::to_string(j);
        cv.witness.push_back({"sup_order" + o, rs.at1});
        cv.witness.push_back({"trend_order" + o, trend(rs)});
        cv.witness.push_back({"sup_at_tenth_order" + o, rs.at10});
    }
    cv.verdict = combine(vs);
    return cv;
}

ClassVerdict class_S(const MatrixSequence& W, Annulus an, long horizon)
{
    if (!(an.beta > 0.0) || !(an.gamma > an.beta)) throw Error(ErrorCode::BadAnnulus, "annulus requires 0 < beta < gamma");
    check_horizon(W, horizon);
    auto a = folded(W, horizon, [&](long n) { return value(W, n).norm(); });
    ClassVerdict cv = decide_partial_sums(annulus_partials(a, an, 1.0, horizon), horizon);
    cv.horizon = horizon;
    return cv;
}

ClassVerdict class_M(const MatrixSequence& W, int k, Annulus an, long horizon)
{
    if (!(an.beta > 0.0) || !(an.gamma > an.beta)) throw Error(ErrorCode::BadAnnulus, "annulus requires 0 < beta < gamma");
    if (k < 0) throw Error(ErrorCode::InvalidArgument, "k must be nonnegative");
    check_horizon(W, horizon);
    std::vector<double> a;
    double r0 = 1.0;
    if (k == 0) {
        a = folded(W, horizon, [&](long n) { return q0_sequence(W, n); });
        r0 = 1.0 / (an.gamma - an.beta);
    } else {
        a = folded(W, horizon, [&](long n) { return (value(W, n - k) - value(W, n)).norm(); });
    }
    ClassVerdict cv = decide_partial_sums(annulus_partials(a, an, r0, horizon), horizon);
    cv.horizon = horizon;
    return cv;
}

double omega_weight(WeightSpec spec, double x)
{
    if (spec.l < 0) throw Error(ErrorCode::InvalidArgument, "l must be nonnegative");
    if (!std::isfinite(spec.r)) throw Error(ErrorCode::InvalidArgument, "r must be finite");
    double X = std::sqrt(1.0 + x * x);
    // ln_0 = 1, ln_1 = ln(1 + X), ln_p = ln(1 + ln_{p-1})
    double prod = 1.0, lp = 1.0;
    for (int p = 1; p <= spec.l + 1; ++p) {
        lp = p == 1 ? std::log1p(X) : std::log1p(lp);
        if (p <= spec.l) prod *= lp;
    }
    return std::pow(lp, spec.r) * prod;
}

namespace {

// W(n) = W(n - k) + d(n) for n >= 1, W = 0 on (-k, 0], mirrored to n < 0
class CumulativeTable {
public:
    CumulativeTable(WeightSpec spec, int k) : spec_(spec), k_(k) {}

    double at(long n)
    {
        if (n <= 0) return 0.0;
        std::lock_guard<std::mutex> lock(mu_);
        while (static_cast<long>(vals_.size()) <= n) {
            long m = static_cast<long>(vals_.size());
            double d = m == 0 ? 0.0 : rate(m);
            double prev = m - k_ >= 1 ? vals_[m - k_] : 0.0;
            vals_.push_back(m == 0 ? 0.0 : prev + d);
        }
        return vals_[n];
    }

    double rate(long m) const
    {
        double x = static_cast<double>(m);
        return 1.0 / (std::sqrt(1.0 + x * x) * omega_weight(spec_, x));
    }

private:
    WeightSpec spec_;
    int k_;
    std::mutex mu_;
    std::vector<double> vals_;
};

}  // namespace

MatrixSequence make_longrange_example(WeightSpec spec, RateMode mode, int k)
{
    omega_weight(spec, 0.0);
    char buf[96];
    if (mode == RateMode::S_rate) {
        std::snprintf(buf, sizeof buf, "S_rate(l=%d,r=%g)", spec.l, spec.r);
        return {[spec](long n) {
                    double x = static_cast<double>(n);
                    return Mat2::identity(1.0 / (std::sqrt(1.0 + x * x) * omega_weight(spec, x)));
                },
                std::nullopt, buf};
    }
    if (k < 1) throw Error(ErrorCode::InvalidArgument, "Mk_rate requires k >= 1");
    std::snprintf(buf, sizeof buf, "Mk_rate(l=%d,r=%g,k=%d)", spec.l, spec.r, k);
    auto table = std::make_shared<CumulativeTable>(spec, k);
    return {[table](long n) { return Mat2::identity(table->at(n < 0 ? -n : n)); }, std::nullopt, buf};
}

ClassVerdict l1_difference_test(const MatrixSequence& W, int p, int row, int col, long horizon)
{
    if (p < 1) throw Error(ErrorCode::InvalidArgument, "p must be positive");
    if (row < 0 || row > 1 || col < 0 || col > 1) throw Error(ErrorCode::InvalidArgument, "component out of range");
    check_horizon(W, horizon);
    if (horizon < 1024) throw Error(ErrorCode::InvalidArgument, "horizon too small for the octave statistics");
    // partial sums at n = 2^d; decade sampling aliases with dyadic structure in the summand
    std::vector<double> vals;
    double s = 0.0, comp = 0.0;
    long next_mark = 1;
    bool a1_ok = true;
    for (long n = 0; n < horizon; ++n) {
        cplx w = value(W, n)(row, col);
        cplx tw = n - p >= 0 ? value(W, n - p)(row, col) : cplx(0.0);
        double y = std::abs(w - tw) - comp;
        double t = s + y;
        comp = (t - s) - y;
        s = t;
        if (value(W, n)(0, 1) == cplx(-1.0)) a1_ok = false;
        if (n + 1 == next_mark) {
            vals.push_back(s);
            next_mark *= 2;
        }
    }
    ClassVerdict cv = decide_partial_sums(vals, horizon, 6);
    cv.witness.push_back({"v0_12_never_minus_one", a1_ok ? 1.0 : 0.0});
    return cv;
}

double decay_rate_estimate(const MatrixSequence& W, long horizon)
{
    check_horizon(W, horizon);
    if (horizon < 100) throw Error(ErrorCode::InvalidArgument, "horizon must cover two decades");
    auto a = folded(W, horizon, [&](long n) { return value(W, n).max_abs(); });
    a[0] = value(W, 0).max_abs();
    // tail envelope e(n) = max_{n <= |m| <= horizon}
    std::vector<double> env(a.size());
    double run = 0.0;
    for (std::size_t i = a.size(); i-- > 0;) {
        run = std::max(run, a[i]);
        env[i] = run;
    }
    if (env[0] == 0.0) throw Error(ErrorCode::AllZero, "sequence vanishes on the scanned range");
    std::vector<double> xs, ys;
    const int samples = 41;
    double lo = std::log(horizon / 100.0), hi = std::log(static_cast<double>(horizon));
    for (int i = 0; i < samples; ++i) {
        long n = std::lround(std::exp(lo + (hi - lo) * i / (samples - 1)));
        n = std::clamp(n, 1L, horizon);
        if (env[n] <= 0.0) continue;
        xs.push_back(std::log(static_cast<double>(n)));
        ys.push_back(std::log(env[n]));
    }
    if (xs.size() < 2) return INFINITY;  // envelope hits zero: faster than any power
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= xs.size();
    my /= xs.size();
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    return -sxy / sxx;
}

AppendixReport appendix_sanity(const std::function<double(long)>& a, Annulus an, long horizon)
{
    AppendixReport rep;
    MatrixSequence W = scalar_sequence(a, "appendix");
    W.support_hint = std::make_pair(0L, horizon);
    rep.s_verdict = class_S(W, an, horizon);
    rep.applicable = rep.s_verdict.verdict == Verdict::Member;
    if (!rep.applicable) return rep;

    RunningSup rs;
    double sup = 0.0, s = 0.0;
    std::vector<double> vals;
    long next_mark = 1;
    int D = static_cast<int>(std::floor(std::log10(static_cast<double>(horizon)) + 1e-12));
    for (long n = 1; n <= horizon; ++n) {
        double an_ = a(n);
        sup = std::max(sup, static_cast<double>(n) * std::abs(an_));
        s += an_;
        if (n == horizon / 100) rs.at100 = sup;
        if (n == horizon / 10) rs.at10 = sup;
        if (n == next_mark && static_cast<int>(vals.size()) <= D) {
            vals.push_back(s);
            next_mark *= 10;
        }
    }
    rs.at1 = sup;
    rep.sup_n_a = sup;
    rep.n_a_bounded = sup_verdict(rs) == Verdict::Member;
    rep.series_verdict = decide_partial_sums(vals, horizon);
    rep.passed = rep.n_a_bounded && rep.series_verdict.verdict == Verdict::Member;
    return rep;
}

MatrixSequence scalar_sequence(std::function<double(long)> f, std::string label)
{
    return {[f](long n) { return Mat2::identity(f(n)); }, std::nullopt, std::move(label)};
}

MatrixSequence kopylova_sequence()
{
    return {[](long n) { return Mat2::identity(1.0 / omega_weight({0, 1.0}, static_cast<double>(n))); }, std::nullopt,
            "kopylova"};
}

MatrixSequence power_sequence(double s)
{
    return {[s](long n) {
                double x = static_cast<double>(n);
                return Mat2::identity(std::pow(1.0 + x * x, -0.5 * s));
            },
            std::nullopt, "power"};
}

MatrixSequence inverse_linear_sequence()
{
    return {[](long n) { return Mat2::identity(1.0 / (1.0 + std::abs(static_cast<double>(n)))); }, std::nullopt,
            "inverse_linear"};
}

MatrixSequence oscillating_sequence(double s)
{
    return {[s](long n) {
                double x = static_cast<double>(n);
                return Mat2::identity(std::sin(x) * std::pow(1.0 + x * x, -0.5 * s));
            },
            std::nullopt, "oscillating"};
}

}  // namespace mourre
