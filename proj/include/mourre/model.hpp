#pragma once

#include <utility>
#include <vector>

#include "mourre/types.hpp"

namespace mourre {

struct ModelParams {
    double alpha = 0.0;
    cplx a{1.0, 0.0};
    cplx b{1.0, 0.0};
    double phi1 = 0.0;  // arg a in (-pi, pi]
    double phi2 = 0.0;  // arg b in (-pi, pi]
    double phi = 0.0;   // phi2 - phi1, not wrapped
    double abs_a = 1.0;
    double abs_b = 1.0;

    bool gapless() const;
};

constexpr double kGaplessTol = 1e-12;

ModelParams make_params(double alpha, cplx a, cplx b);

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    bool contains(double t) const { return lo < t && t < hi; }
};

struct BandStructure {
    Interval i_minus, i_plus;
    double lambda_min = 0.0;
    double lambda_max = 0.0;
    bool has_gap = false;
};

struct CriticalSet {
    int k = 0;
    std::vector<double> points;        // sorted, symmetric
    std::vector<double> theta_values;  // one per j = 0..k
};

struct MourreSets {
    int k = 1;
    std::vector<Interval> mu_plus, mu_minus, mu_all;
};

Mat2 symbol(const ModelParams& p, double theta);
double band_function(const ModelParams& p, double theta);
BandStructure spectral_bands(const ModelParams& p);

double chebyshev_U(int k, double x);
double g0_eval(const ModelParams& p, double t);
double g_k_eval(const ModelParams& p, int k, double t);

CriticalSet kappa_k(const ModelParams& p, int k);
MourreSets mu_sets(const ModelParams& p, int k);

std::pair<Mat2, Mat2> eig_projectors(const ModelParams& p, double theta);
double fourier_commutator_density(const ModelParams& p, int k, double theta);

// max over an n-point grid of |g_k(lambda(theta)) - density(theta)|, conical points skipped
double mourre_identity_deviation(const ModelParams& p, int k, int npoints);

// inf of g_k over [lo, hi] by dense sampling
double inf_g_k(const ModelParams& p, int k, double lo, double hi, int samples = 200001);

}  // namespace mourre
