#pragma once

#include <functional>
#include <string>
#include <vector>

#include "mourre/lattice.hpp"
#include "mourre/linalg.hpp"
#include "mourre/model.hpp"

namespace mourre {

enum class Side { Left, Center, Right, Extended };
const char* side_name(Side s);

struct EigReport {
    std::vector<double> values;       // ascending
    std::vector<bool> stable;
    std::vector<double> decay_ratio;  // per-site magnitude ratio away from the peak
    std::vector<Side> side;
    std::vector<double> drift;        // max movement across the N list
};

// dense below kDenseThreshold, band reduction above (vectors then come from inverse iteration)
EigenPairs hermitian_eigs(const BandedHermitian& M, bool want_vectors);

using OperatorBuilder = std::function<BandedHermitian(long N)>;

constexpr double kMatchTol = 1e-6;
constexpr double kStableDrift = 1e-8;
constexpr double kLocalizedMass = 0.8;

// eigenvalues of the largest truncation in (lo, hi), flagged stable when they persist across every N
// and localize away from artificial window edges
EigReport truncation_stable_eigs(const OperatorBuilder& builder, double lo, double hi, const std::vector<long>& N_list,
                                 int threads = 0);

Side localization_side(const std::vector<cplx>& v, const LatticeWindow& win, double* decay_ratio = nullptr);

struct EdgeState {
    double eigenvalue = 0.0;
    double decay_ratio = 0.0;
    double drift = 0.0;
};

EdgeState edge_state_check(const ModelParams& p, long N);

struct ResolventNorm {
    double norm = 0.0;
    int iters = 0;
    bool converged = false;
};

// || <X>^{-s} (H - z)^{-1} <X>^{-s} || by power iteration on the Gram map
ResolventNorm weighted_resolvent_norm(const BandedHermitian& H, double s, cplx z, double tol = 1e-6, int cap = 500);

struct LapRow {
    double x = 0.0, epsilon = 0.0, s = 0.0;
    long N = 0;
    double norm = 0.0;
    int iters = 0;
    bool converged = false;
};

// rows ordered x-major, then epsilon in the given order; non-converged cells are flagged, not thrown
std::vector<LapRow> lap_scan(const BandedHermitian& H, long N, double s, const std::vector<double>& x_grid,
                             const std::vector<double>& eps_list, int threads = 0, double tol = 1e-6, int cap = 500);

struct AccumulationRow {
    double point = 0.0;
    bool control = false;
    double radius = 0.0;
    int count = 0;
};

std::vector<AccumulationRow> accumulation_scan(const OperatorBuilder& builder, const std::vector<double>& points,
                                               const std::vector<double>& control_points,
                                               const std::vector<double>& radii, const std::vector<long>& N_list,
                                               int threads = 0);

// midpoints between consecutive critical points inside the bands
std::vector<double> control_points(const ModelParams& p, const CriticalSet& kappa);

struct BandCounts {
    long below = 0, lower_band = 0, gap = 0, upper_band = 0, above = 0;
    long bands() const { return lower_band + upper_band; }
};

BandCounts band_counts(const std::vector<double>& eigenvalues, const BandStructure& bands);

int resolve_threads(int threads);

}  // namespace mourre
