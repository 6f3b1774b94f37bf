#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mourre/lattice.hpp"

namespace mourre {

enum class Verdict { Member, Nonmember, Inconclusive };
const char* verdict_name(Verdict v);

struct ClassVerdict {
    Verdict verdict = Verdict::Inconclusive;
    std::vector<std::pair<std::string, double>> witness;
    long horizon = 0;

    double get(const std::string& name) const;
    bool has(const std::string& name) const;
};

struct Annulus {
    double beta = 1.0;
    double gamma = 2.0;
};

struct WeightSpec {
    int l = 0;
    double r = 1.0;
};

enum class RateMode { S_rate, Mk_rate };

// A sequence with support_hint = (lo, hi) vanishes below lo and is unknown above hi;
// classifiers refuse horizons beyond hi.

struct SeminormResult {
    double sup_value = 0.0;
    double tail_trend = 0.0;  // log10 of the running-sup growth over the last decade
};

SeminormResult q_seminorm(const MatrixSequence& W, int k, int order, long horizon);
double q0_sequence(const MatrixSequence& W, long n, bool unilateral = false);

ClassVerdict class_Q(const MatrixSequence& W, int k, int order, long horizon);
ClassVerdict class_S(const MatrixSequence& W, Annulus an, long horizon);
ClassVerdict class_M(const MatrixSequence& W, int k, Annulus an, long horizon);

double omega_weight(WeightSpec spec, double x);
MatrixSequence make_longrange_example(WeightSpec spec, RateMode mode, int k = 1);

ClassVerdict l1_difference_test(const MatrixSequence& W, int p, int row, int col, long horizon);
double decay_rate_estimate(const MatrixSequence& W, long horizon);

struct AppendixReport {
    bool applicable = false;
    ClassVerdict s_verdict;
    double sup_n_a = 0.0;
    bool n_a_bounded = false;
    ClassVerdict series_verdict;
    bool passed = false;
};

AppendixReport appendix_sanity(const std::function<double(long)>& a, Annulus an, long horizon);

// Decision on a nondecreasing partial-sum/partial-integral sequence sampled on a geometric grid
// (10^0 .. 10^D for the integral classes).
ClassVerdict decide_partial_sums(const std::vector<double>& decade_values, long horizon, int fit_points = 4);

// bundled sample sequences
MatrixSequence kopylova_sequence();                 // I / omega_0^1(n)
MatrixSequence power_sequence(double s);            // I / <n>^s
MatrixSequence inverse_linear_sequence();           // I / (1 + |n|)
MatrixSequence oscillating_sequence(double s);      // I sin(n) / <n>^s
MatrixSequence scalar_sequence(std::function<double(long)> f, std::string label);

// ---- counterexample machinery ----

struct SubordinateFamily {
    std::vector<std::pair<long, long>> blocks;  // (alpha_n, beta_n)
    std::function<double(int, long)> f;         // f(n, j), zero off the block
    std::vector<double> norms_1, norms_inf, max_M;
    bool starts_at_zero = false;                // f_n(alpha_n) = 0 for every block

    int block_of(long j) const;
    long last_index() const { return blocks.empty() ? -1 : blocks.back().second; }
};

SubordinateFamily make_family(std::vector<std::pair<long, long>> blocks, std::function<double(int, long)> f);
SubordinateFamily dyadic_tent_family(int n_max);

struct CounterexampleSeq {
    SubordinateFamily family;
    std::function<double(long)> a;
    std::optional<double> L1, L2;

    double b(long j) const;
};

CounterexampleSeq build_counterexample(const SubordinateFamily& family, std::function<double(long)> a);

// sum_{l > m} (-1)^l a_l by repeated averaging of partial sums (m = -1 gives the full series)
double alternating_tail(const std::function<double(long)>& a, long m);

struct CounterexampleReport {
    long horizon = 0;
    int blocks_covered = 0;
    // (i)
    double limit = 0.0;
    double max_bound_excess = 0.0;  // max over n of |S_{beta_n} - limit| - a_{n+1}
    bool between_block_sums = false;
    bool item_i = false;
    // (ii)
    struct PItem {
        int p = 0;
        int n_p = 0;
        double lhs = 0.0, rhs = 0.0;
        bool dominates = false;
        ClassVerdict divergence;
    };
    std::vector<PItem> item_ii_rows;
    bool item_ii = false;
    // (iii)
    double sup_jb = 0.0, sup_j2db = 0.0;
    bool item_iii = false;
};

CounterexampleReport verify_counterexample(const CounterexampleSeq& seq, int p_max, long horizon);
PotentialSpec counterexample_potential(const CounterexampleSeq& seq);

}  // namespace mourre
