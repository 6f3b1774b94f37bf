#include "mourre/model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace mourre {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double kDedupTol = 1e-10;
constexpr double kConicalTol = 1e-13;

double wrap_phase(double x)
{
    // into (-pi, pi]
    if (x <= -pi) x += 2 * pi;
    if (x > pi) x -= 2 * pi;
    return x;
}

double wrap_2pi(double x)
{
    x = std::fmod(x, 2 * pi);
    if (x < 0) x += 2 * pi;
    return x;
}

double lambda_sq_from_cos(const ModelParams& p, double c)
{
    double v = p.alpha * p.alpha + p.abs_a * p.abs_a + p.abs_b * p.abs_b + 2 * p.abs_a * p.abs_b * c;
    return std::max(0.0, v);
}

}  // namespace

bool ModelParams::gapless() const
{
    return std::abs(alpha) <= kGaplessTol && std::abs(abs_a - abs_b) <= kGaplessTol;
}

ModelParams make_params(double alpha, cplx a, cplx b)
{
    if (std::abs(a) == 0.0 || std::abs(b) == 0.0)
        throw Error(ErrorCode::ZeroCoupling, "couplings a and b must be nonzero");
    ModelParams p;
    p.alpha = alpha;
    p.a = a;
    p.b = b;
    p.abs_a = std::abs(a);
    p.abs_b = std::abs(b);
    p.phi1 = wrap_phase(std::arg(a));
    p.phi2 = wrap_phase(std::arg(b));
    p.phi = p.phi2 - p.phi1;
    return p;
}

Mat2 symbol(const ModelParams& p, double theta)
{
    cplx e = std::polar(1.0, theta);
    cplx low = p.a + p.b * e;
    return {p.alpha, std::conj(low), low, -p.alpha};
}

double band_function(const ModelParams& p, double theta)
{
    return std::sqrt(lambda_sq_from_cos(p, std::cos(theta + p.phi)));
}

BandStructure spectral_bands(const ModelParams& p)
{
    BandStructure s;
    double a2 = p.alpha * p.alpha;
    s.lambda_min = std::sqrt(a2 + (p.abs_a - p.abs_b) * (p.abs_a - p.abs_b));
    s.lambda_max = std::sqrt(a2 + (p.abs_a + p.abs_b) * (p.abs_a + p.abs_b));
    s.i_plus = {s.lambda_min, s.lambda_max};
    s.i_minus = {-s.lambda_max, -s.lambda_min};
    s.has_gap = s.lambda_min > 0.0;
    return s;
}

double chebyshev_U(int k, double x)
{
    if (k < 0) throw Error(ErrorCode::Domain, "Chebyshev index must be nonnegative");
    double u0 = 1.0;
    if (k == 0) return u0;
    double u1 = 2.0 * x;
    for (int j = 1; j < k; ++j) {
        double u2 = 2.0 * x * u1 - u0;
        u0 = u1;
        u1 = u2;
    }
    return u1;
}

double g0_eval(const ModelParams& p, double t)
{
    if (t == 0.0) throw Error(ErrorCode::Domain, "g is not defined at t = 0");
    BandStructure s = spectral_bands(p);
    double t2 = t * t;
    return -(t2 - s.lambda_min * s.lambda_min) * (t2 - s.lambda_max * s.lambda_max) / (4.0 * std::abs(t));
}

double g_k_eval(const ModelParams& p, int k, double t)
{
    if (k < 1) throw Error(ErrorCode::Domain, "g_k requires k >= 1");
    double g0 = g0_eval(p, t);
    double x = (t * t - p.alpha * p.alpha - p.abs_a * p.abs_a - p.abs_b * p.abs_b) / (2.0 * p.abs_a * p.abs_b);
    return g0 * chebyshev_U(k - 1, x);
}

CriticalSet kappa_k(const ModelParams& p, int k)
{
    if (k < 0) throw Error(ErrorCode::Domain, "k must be nonnegative");
    CriticalSet cs;
    cs.k = k;
    if (k == 0) {
        if (!p.gapless()) throw Error(ErrorCode::NotGapless, "kappa_0 is defined for gapless parameters only");
        cs.points = {-2.0 * p.abs_a, 2.0 * p.abs_a};
        return cs;
    }
    std::vector<double> pos;
    for (int j = 0; j <= k; ++j) {
        double c = std::cos(pi * j / k);
        pos.push_back(std::sqrt(lambda_sq_from_cos(p, c)));
        // prefer theta in [0, pi]; otherwise the representative in [0, 2pi)
        double th = 0.0;
        bool found = false;
        for (double s : {1.0, -1.0}) {
            double cand = wrap_2pi(s * pi * j / k - p.phi);
            if (cand <= pi + 1e-15) {
                th = std::min(cand, pi);
                found = true;
                break;
            }
        }
        if (!found) th = wrap_2pi(pi * j / k - p.phi);
        cs.theta_values.push_back(th);
    }
    std::vector<double> all;
    for (double v : pos) {
        all.push_back(v);
        all.push_back(-v);
    }
    std::sort(all.begin(), all.end());
    for (double v : all)
        if (cs.points.empty() || std::abs(v - cs.points.back()) > kDedupTol) cs.points.push_back(v);
    return cs;
}

MourreSets mu_sets(const ModelParams& p, int k)
{
    if (k < 1) throw Error(ErrorCode::Domain, "mu sets require k >= 1");
    BandStructure bs = spectral_bands(p);
    CriticalSet cs = kappa_k(p, k);
    MourreSets ms;
    ms.k = k;
    for (const Interval& band : {bs.i_minus, bs.i_plus}) {
        std::vector<double> cuts{band.lo};
        for (double t : cs.points)
            if (band.contains(t) && t - cuts.back() > kDedupTol) cuts.push_back(t);
        if (band.hi - cuts.back() > kDedupTol)
            cuts.push_back(band.hi);
        else
            cuts.back() = band.hi;
        bool upper = band.lo >= 0.0;
        for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
            Interval iv{cuts[i], cuts[i + 1]};
            if (!(iv.hi > iv.lo)) continue;
            ms.mu_all.push_back(iv);
            double g = g_k_eval(p, k, 0.5 * (iv.lo + iv.hi));
            bool plus = upper ? g > 0.0 : g < 0.0;
            (plus ? ms.mu_plus : ms.mu_minus).push_back(iv);
        }
    }
    return ms;
}

std::pair<Mat2, Mat2> eig_projectors(const ModelParams& p, double theta)
{
    double lam = band_function(p, theta);
    if (lam <= kConicalTol) throw Error(ErrorCode::ConicalPoint, "band function vanishes at this theta");
    Mat2 h = symbol(p, theta);
    Mat2 pi_plus = 0.5 * (h * cplx(1.0 / lam) + Mat2::identity());
    Mat2 pi_minus = Mat2::identity() - pi_plus;
    return {pi_plus, pi_minus};
}

double fourier_commutator_density(const ModelParams& p, int k, double theta)
{
    if (k < 1) throw Error(ErrorCode::Domain, "density requires k >= 1");
    double lam = band_function(p, theta);
    if (lam <= kConicalTol) throw Error(ErrorCode::ConicalPoint, "band function vanishes at this theta");
    double x = theta + p.phi;
    double s = std::sin(x);
    double ab = p.abs_a * p.abs_b;
    return chebyshev_U(k - 1, std::cos(x)) * ab * ab * s * s / lam;
}

double mourre_identity_deviation(const ModelParams& p, int k, int npoints)
{
    double dev = 0.0;
    for (int i = 0; i < npoints; ++i) {
        double th = -pi + 2.0 * pi * i / npoints;
        double lam = band_function(p, th);
        if (lam <= kConicalTol) continue;
        dev = std::max(dev, std::abs(g_k_eval(p, k, lam) - fourier_commutator_density(p, k, th)));
    }
    return dev;
}

double inf_g_k(const ModelParams& p, int k, double lo, double hi, int samples)
{
    if (!(hi > lo) || samples < 2) throw Error(ErrorCode::InvalidArgument, "bad sampling interval");
    double m = INFINITY;
    for (int i = 0; i < samples; ++i) {
        double t = lo + (hi - lo) * i / (samples - 1);
        if (t == 0.0) continue;
        m = std::min(m, g_k_eval(p, k, t));
    }
    return m;
}

}  // namespace mourre
