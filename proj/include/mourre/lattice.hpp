#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mourre/model.hpp"
#include "mourre/types.hpp"

namespace mourre {

enum class LatticeKind { Bilateral, Unilateral };

struct LatticeWindow {
    LatticeKind kind = LatticeKind::Bilateral;
    long n_lo = 0;
    long n_hi = 0;

    static LatticeWindow bilateral(long N);
    static LatticeWindow unilateral(long N);

    long sites() const { return n_hi - n_lo + 1; }
    std::size_t dim() const { return static_cast<std::size_t>(2 * sites()); }
    std::size_t index(long n, int component) const { return static_cast<std::size_t>(2 * (n - n_lo) + component); }
    long site_of(std::size_t idx) const { return n_lo + static_cast<long>(idx / 2); }
    bool operator==(const LatticeWindow& o) const = default;
    void validate() const;
};

// Hermitian matrix with half bandwidth w; only the main and upper diagonals are stored.
class BandedHermitian {
public:
    BandedHermitian() = default;
    BandedHermitian(LatticeWindow win, std::size_t half_bandwidth);
    // plain banded storage without lattice meaning
    BandedHermitian(std::size_t dim, std::size_t half_bandwidth);

    std::size_t dim() const { return dim_; }
    std::size_t half_bandwidth() const { return w_; }
    const LatticeWindow& window() const { return win_; }

    // element (i, j) of the full Hermitian matrix
    cplx get(std::size_t i, std::size_t j) const;
    // sets (i, j) and implicitly (j, i); diagonal entries keep only the real part
    void set(std::size_t i, std::size_t j, cplx v);
    void add(std::size_t i, std::size_t j, cplx v);

    const std::vector<cplx>& diagonal(std::size_t d) const { return diags_[d]; }
    std::vector<cplx>& diagonal(std::size_t d) { return diags_[d]; }

    CMatrix dense() const;
    void matvec(const cplx* x, cplx* y) const;
    double max_abs() const;
    // infinity norm bound (row sums), >= spectral norm
    double norm_bound() const;

    BandedHermitian with_bandwidth(std::size_t w) const;

private:
    LatticeWindow win_{};
    std::size_t dim_ = 0;
    std::size_t w_ = 0;
    std::vector<std::vector<cplx>> diags_;
};

BandedHermitian operator+(const BandedHermitian& a, const BandedHermitian& b);
BandedHermitian scaled(const BandedHermitian& a, double s);
BandedHermitian shifted_identity(const BandedHermitian& a, double s);

struct MatrixSequence {
    std::function<Mat2(long)> eval;
    std::optional<std::pair<long, long>> support_hint;
    std::string label;

    Mat2 operator()(long n) const { return eval(n); }
};

MatrixSequence constant_sequence(const Mat2& c, std::string label = "constant");
MatrixSequence scaled_sequence(const MatrixSequence& w, cplx c);

struct PotentialSpec {
    std::optional<MatrixSequence> v0;
    std::vector<std::pair<int, MatrixSequence>> shifted;
};

BandedHermitian build_H0(const ModelParams& p, const LatticeWindow& win);
BandedHermitian build_potential(const PotentialSpec& spec, const LatticeWindow& win);
BandedHermitian build_Ak(const ModelParams& p, int k, const LatticeWindow& win);
BandedHermitian build_A0(const ModelParams& p, const LatticeWindow& win);
BandedHermitian build_diag_sequence(const MatrixSequence& w, const LatticeWindow& win);

BandedHermitian commutator_i(const BandedHermitian& A, const BandedHermitian& B);
CMatrix interior_restrict(const BandedHermitian& M, long margin);
CMatrix interior_restrict(const CMatrix& dense, const LatticeWindow& win, long margin);

// P [iA, H] P on the window: both operators are built on a window padded beyond every
// artificial edge, so the commutator rows inside the window are exact.
// k >= 1 selects A_k, k = 0 selects A_0.
BandedHermitian compressed_commutator(const ModelParams& p, int k, const LatticeWindow& win,
                                      const PotentialSpec* V = nullptr);

double check_A0_identity(const ModelParams& p, const LatticeWindow& win, long margin);
double check_Ak_first_commutator(const ModelParams& p, int k, const MatrixSequence& W, const LatticeWindow& win,
                                 long margin);
double check_A0_commutator(const ModelParams& p, const MatrixSequence& W, const LatticeWindow& win, long margin);

struct ProjectedMin {
    double min_eig = 0.0;
    double max_eig = 0.0;
    std::size_t rank = 0;
};

// smallest eigenvalue of E C E on range(E), E the spectral projector of H on [lo, hi]
ProjectedMin projected_commutator_min_eig(const BandedHermitian& H, const BandedHermitian& C, double lo,
                                          double hi);

struct SshUnfold {
    std::vector<double> diag;     // J_1 diagonal, index 0 .. dim-1
    std::vector<cplx> offdiag;    // J_1(m, m+1)
    double residual = 0.0;        // max |U* H0 U - J_1| on interior rows
};

SshUnfold ssh_unfold(const ModelParams& p, const LatticeWindow& win);

void dump_matrix(const BandedHermitian& M, std::ostream& os);

}  // namespace mourre
