#include "mourre/mourre_c.h"

#include <cmath>
#include <cstring>
#include <map>
#include <sstream>

#include <json.hpp>

#include "mourre/classes.hpp"
#include "mourre/lattice.hpp"
#include "mourre/model.hpp"
#include "mourre/probe.hpp"

using namespace mourre;
using json = nlohmann::json;

struct mrl_model {
    ModelParams p;
};
struct mrl_sequence {
    MatrixSequence w;
};
struct mrl_operator {
    BandedHermitian H;
    long N = 0;
};

namespace {

thread_local std::string g_last_error;

template <class F>
mrl_status guarded(F&& f)
{
    try {
        f();
        g_last_error.clear();
        return MRL_OK;
    } catch (const Error& e) {
        g_last_error = e.what();
        return static_cast<mrl_status>(static_cast<int>(e.code()));
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return MRL_INTERNAL;
    }
}

void need(const void* p, const char* what)
{
    if (!p) throw Error(ErrorCode::InvalidArgument, std::string("null ") + what);
}

char* dup_string(const std::string& s)
{
    char* out = new char[s.size() + 1];
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

json verdict_json(const ClassVerdict& cv)
{
    json w = json::object();
    for (const auto& [k, v] : cv.witness) w[k] = v;
    return {{"verdict", verdict_name(cv.verdict)}, {"witness", w}, {"horizon", cv.horizon}};
}

std::function<double(long)> a_family(const std::string& name, double power)
{
    if (name == "harmonic") return [](long n) { return 1.0 / static_cast<double>(n + 1); };
    if (name == "power") {
        if (!(power > 0.0)) throw Error(ErrorCode::InvalidArgument, "power must be positive");
        return [power](long n) { return std::pow(static_cast<double>(n + 1), -power); };
    }
    throw Error(ErrorCode::InvalidArgument, "unknown a_n family " + name);
}

PotentialSpec potential_of(const mrl_sequence* v0)
{
    PotentialSpec spec;
    if (v0) spec.v0 = v0->w;
    return spec;
}

LatticeWindow window_of(int unilateral, long N)
{
    return unilateral ? LatticeWindow::unilateral(N) : LatticeWindow::bilateral(N);
}

BandedHermitian hamiltonian(const ModelParams& p, const LatticeWindow& win, const mrl_sequence* v0)
{
    BandedHermitian H = build_H0(p, win);
    if (v0) H = H + build_potential(potential_of(v0), win);
    return H;
}

json eig_report_json(const EigReport& rep)
{
    json rows = json::array();
    for (std::size_t i = 0; i < rep.values.size(); ++i)
        rows.push_back({{"lambda", rep.values[i]},
                        {"stable", static_cast<bool>(rep.stable[i])},
                        {"decay_ratio", rep.decay_ratio[i]},
                        {"side", side_name(rep.side[i])},
                        {"drift", rep.drift[i]}});
    return rows;
}

}  // namespace

extern "C" {

const char* mrl_last_error(void) { return g_last_error.c_str(); }

const char* mrl_status_name(mrl_status s)
{
    if (s == MRL_OK) return "OK";
    if (s == MRL_INTERNAL) return "Internal";
    if (s >= MRL_ZERO_COUPLING && s <= MRL_INVALID_ARGUMENT) return error_code_name(static_cast<ErrorCode>(s));
    return "Unknown";
}

void mrl_string_free(char* s) { delete[] s; }

mrl_status mrl_model_create(double alpha, double a_re, double a_im, double b_re, double b_im, mrl_model** out)
{
    return guarded([&] {
        need(out, "out");
        *out = new mrl_model{make_params(alpha, cplx(a_re, a_im), cplx(b_re, b_im))};
    });
}

void mrl_model_destroy(mrl_model* m) { delete m; }

mrl_status mrl_model_gapless(const mrl_model* m, int* out)
{
    return guarded([&] {
        need(m, "model");
        need(out, "out");
        *out = m->p.gapless() ? 1 : 0;
    });
}

mrl_status mrl_bands(const mrl_model* m, double out[4], int* has_gap)
{
    return guarded([&] {
        need(m, "model");
        need(out, "out");
        BandStructure bs = spectral_bands(m->p);
        out[0] = bs.i_minus.lo;
        out[1] = bs.i_minus.hi;
        out[2] = bs.i_plus.lo;
        out[3] = bs.i_plus.hi;
        if (has_gap) *has_gap = bs.has_gap ? 1 : 0;
    });
}

mrl_status mrl_kappa(const mrl_model* m, int k, double* points, size_t cap, size_t* count)
{
    return guarded([&] {
        need(m, "model");
        CriticalSet cs = kappa_k(m->p, k);
        if (count) *count = cs.points.size();
        for (std::size_t i = 0; i < cs.points.size() && i < cap; ++i) points[i] = cs.points[i];
    });
}

mrl_status mrl_g(const mrl_model* m, int k, double t, double* out)
{
    return guarded([&] {
        need(m, "model");
        need(out, "out");
        *out = k == 0 ? g0_eval(m->p, t) : g_k_eval(m->p, k, t);
    });
}

mrl_status mrl_mourre_fourier(const mrl_model* m, int k, int npoints, double* deviation)
{
    return guarded([&] {
        need(m, "model");
        need(deviation, "out");
        *deviation = mourre_identity_deviation(m->p, k, npoints);
    });
}

mrl_status mrl_inf_g(const mrl_model* m, int k, double lo, double hi, double* out)
{
    return guarded([&] {
        need(m, "model");
        need(out, "out");
        *out = inf_g_k(m->p, k, lo, hi);
    });
}

mrl_status mrl_sequence_named(const char* family, double param, double param2, double param3, mrl_sequence** out)
{
    return guarded([&] {
        need(family, "family");
        need(out, "out");
        std::string f = family;
        MatrixSequence w;
        if (f == "kopylova") w = kopylova_sequence();
        else if (f == "power") w = power_sequence(param);
        else if (f == "inverse_linear") w = inverse_linear_sequence();
        else if (f == "oscillating") w = oscillating_sequence(param);
        else if (f == "constant") w = constant_sequence(Mat2::identity(param));
        else if (f == "s_rate" || f == "mk_rate") {
            if (param2 < 0 || param2 != std::floor(param2)) throw Error(ErrorCode::InvalidArgument, "l must be a nonnegative integer");
            WeightSpec ws{static_cast<int>(param2), param};
            w = f == "s_rate" ? make_longrange_example(ws, RateMode::S_rate)
                              : make_longrange_example(ws, RateMode::Mk_rate, static_cast<int>(param3));
        } else
            throw Error(ErrorCode::InvalidArgument, "unknown sequence family " + f);
        *out = new mrl_sequence{std::move(w)};
    });
}

mrl_status mrl_sequence_from_table(const long* n, const double* entries, size_t rows, mrl_sequence** out)
{
    return guarded([&] {
        need(n, "n");
        need(entries, "entries");
        need(out, "out");
        if (rows == 0) throw Error(ErrorCode::InvalidArgument, "empty table");
        auto table = std::make_shared<std::map<long, Mat2>>();
        long lo = n[0], hi = n[0];
        for (size_t r = 0; r < rows; ++r) {
            const double* e = entries + 8 * r;
            Mat2 m(cplx(e[0], e[1]), cplx(e[2], e[3]), cplx(e[4], e[5]), cplx(e[6], e[7]));
            if (!table->emplace(n[r], m).second) throw Error(ErrorCode::InvalidArgument, "duplicate index in table");
            lo = std::min(lo, n[r]);
            hi = std::max(hi, n[r]);
        }
        MatrixSequence w{[table](long i) {
                             auto it = table->find(i);
                             return it == table->end() ? Mat2{} : it->second;
                         },
                         std::make_pair(lo, hi), "table"};
        *out = new mrl_sequence{std::move(w)};
    });
}

mrl_status mrl_sequence_counterexample(const char* a_name, double power, int n_max, mrl_sequence** out)
{
    return guarded([&] {
        need(a_name, "a family");
        need(out, "out");
        auto seq = build_counterexample(dyadic_tent_family(n_max), a_family(a_name, power));
        *out = new mrl_sequence{*counterexample_potential(seq).v0};
    });
}

void mrl_sequence_destroy(mrl_sequence* s) { delete s; }

mrl_status mrl_sequence_eval(const mrl_sequence* s, long n, double out[8])
{
    return guarded([&] {
        need(s, "sequence");
        need(out, "out");
        Mat2 m = s->w.support_hint && n < s->w.support_hint->first ? Mat2{} : s->w(n);
        for (int i = 0; i < 4; ++i) {
            out[2 * i] = m(i / 2, i % 2).real();
            out[2 * i + 1] = m(i / 2, i % 2).imag();
        }
    });
}

mrl_status mrl_sequence_scale(const mrl_sequence* s, double c, mrl_sequence** out)
{
    return guarded([&] {
        need(s, "sequence");
        need(out, "out");
        *out = new mrl_sequence{scaled_sequence(s->w, c)};
    });
}

mrl_status mrl_classify(const mrl_sequence* s, const char* cls, int k, int order, double beta, double gamma, int row,
                        int col, long horizon, char** out)
{
    return guarded([&] {
        need(s, "sequence");
        need(cls, "class");
        need(out, "out");
        std::string c = cls;
        Annulus an{beta, gamma};
        json j;
        if (c == "S") {
            j = verdict_json(class_S(s->w, an, horizon));
            j["anchor"] = "annulus-sup integrability class S";
        } else if (c == "M") {
            j = verdict_json(class_M(s->w, k, an, horizon));
            j["anchor"] = k == 0 ? "class M_0 (q0 integrand)" : "class M_k (k-difference integrand)";
        } else if (c == "Q") {
            j = verdict_json(class_Q(s->w, k, order, horizon));
            j["anchor"] = "class Q_{k,m} seminorms";
        } else if (c == "l1") {
            j = verdict_json(l1_difference_test(s->w, k, row, col, horizon));
            j["anchor"] = "summable p-th differences of the potential";
        } else if (c == "rho") {
            double rho = decay_rate_estimate(s->w, horizon);
            j = {{"rho", rho}, {"horizon", horizon}, {"satisfies_power_decay_above_1", rho > 1.0},
                 {"anchor", "pointwise power decay beyond 1/n"}};
        } else
            throw Error(ErrorCode::InvalidArgument, "unknown class " + c);
        j["class"] = c;
        j["sequence"] = s->w.label;
        *out = dup_string(j.dump());
    });
}

mrl_status mrl_counterexample_report(const char* a_name, double power, int n_max, int p_max, long horizon, long emit_b,
                                     char** out)
{
    return guarded([&] {
        need(a_name, "a family");
        need(out, "out");
        auto seq = build_counterexample(dyadic_tent_family(n_max), a_family(a_name, power));
        CounterexampleReport rep = verify_counterexample(seq, p_max, horizon);
        json rows = json::array();
        for (const auto& r : rep.item_ii_rows)
            rows.push_back({{"p", r.p}, {"n_p", r.n_p}, {"block_sum", r.lhs}, {"harmonic_tail", r.rhs},
                            {"dominates", r.dominates}, {"divergence", verdict_json(r.divergence)}});
        json j = {{"anchor", "subordinate-family lemma items (i)-(iii)"},
                  {"horizon", rep.horizon},
                  {"blocks_covered", rep.blocks_covered},
                  {"L1", seq.L1 ? json(*seq.L1) : json(nullptr)},
                  {"L2", seq.L2 ? json(*seq.L2) : json(nullptr)},
                  {"item_i", {{"passed", rep.item_i}, {"limit", rep.limit}, {"max_bound_excess", rep.max_bound_excess},
                              {"between_block_sums", rep.between_block_sums}}},
                  {"item_ii", {{"passed", rep.item_ii}, {"rows", rows}}},
                  {"item_iii", {{"passed", rep.item_iii}, {"sup_jb", rep.sup_jb}, {"sup_j2db", rep.sup_j2db}}}};
        if (emit_b > 0) {
            json b = json::array();
            for (long i = 0; i < emit_b && i <= seq.family.last_index(); ++i) b.push_back(seq.b(i));
            j["b"] = b;
        }
        *out = dup_string(j.dump());
    });
}

mrl_status mrl_appendix_sanity(const mrl_sequence* s, double beta, double gamma, long horizon, char** out)
{
    return guarded([&] {
        need(s, "sequence");
        need(out, "out");
        MatrixSequence w = s->w;
        AppendixReport rep = appendix_sanity([w](long n) { return w(n).norm(); }, Annulus{beta, gamma}, horizon);
        json j = {{"anchor", "S-membership consequences: bounded n a_n and summable a_n"},
                  {"applicable", rep.applicable},
                  {"s_verdict", verdict_json(rep.s_verdict)}};
        if (rep.applicable) {
            j["sup_n_a"] = rep.sup_n_a;
            j["n_a_bounded"] = rep.n_a_bounded;
            j["series_verdict"] = verdict_json(rep.series_verdict);
            j["passed"] = rep.passed;
        }
        *out = dup_string(j.dump());
    });
}

mrl_status mrl_operator_create(const mrl_model* m, int unilateral, long N, const mrl_sequence* v0, mrl_operator** out)
{
    return guarded([&] {
        need(m, "model");
        need(out, "out");
        *out = new mrl_operator{hamiltonian(m->p, window_of(unilateral, N), v0), N};
    });
}

void mrl_operator_destroy(mrl_operator* op) { delete op; }

mrl_status mrl_operator_dim(const mrl_operator* op, size_t* dim, size_t* hb)
{
    return guarded([&] {
        need(op, "operator");
        if (dim) *dim = op->H.dim();
        if (hb) *hb = op->H.half_bandwidth();
    });
}

mrl_status mrl_operator_eigvals(const mrl_operator* op, double* values, size_t cap, size_t* count)
{
    return guarded([&] {
        need(op, "operator");
        std::vector<double> ev = banded_eigvals(op->H);
        if (count) *count = ev.size();
        for (std::size_t i = 0; i < ev.size() && i < cap; ++i) values[i] = ev[i];
    });
}

mrl_status mrl_operator_dump(const mrl_operator* op, char** text)
{
    return guarded([&] {
        need(op, "operator");
        need(text, "out");
        std::ostringstream os;
        dump_matrix(op->H, os);
        *text = dup_string(os.str());
    });
}

mrl_status mrl_check_a0_identity(const mrl_model* m, long N, long margin, double* dev)
{
    return guarded([&] {
        need(m, "model");
        need(dev, "out");
        *dev = check_A0_identity(m->p, LatticeWindow::bilateral(N), margin);
    });
}

mrl_status mrl_check_ak_commutator(const mrl_model* m, int k, const mrl_sequence* w, long N, long margin, double* dev)
{
    return guarded([&] {
        need(m, "model");
        need(w, "sequence");
        need(dev, "out");
        *dev = check_Ak_first_commutator(m->p, k, w->w, LatticeWindow::bilateral(N), margin);
    });
}

mrl_status mrl_check_a0_commutator(const mrl_model* m, const mrl_sequence* w, long N, long margin, double* dev)
{
    return guarded([&] {
        need(m, "model");
        need(w, "sequence");
        need(dev, "out");
        *dev = check_A0_commutator(m->p, w->w, LatticeWindow::bilateral(N), margin);
    });
}

mrl_status mrl_ssh_unfold_residual(const mrl_model* m, long N, double* residual)
{
    return guarded([&] {
        need(m, "model");
        need(residual, "out");
        *residual = ssh_unfold(m->p, LatticeWindow::bilateral(N)).residual;
    });
}

mrl_status mrl_truncated_mourre(const mrl_model* m, int k, double lo, double hi, long N, const mrl_sequence* v0,
                                mrl_projected* out)
{
    return guarded([&] {
        need(m, "model");
        need(out, "out");
        if (k == 0 && !m->p.gapless()) throw Error(ErrorCode::NotGapless, "k = 0 requires a gapless model");
        LatticeWindow win = LatticeWindow::bilateral(N);
        PotentialSpec V = potential_of(v0);
        BandedHermitian H = hamiltonian(m->p, win, v0);
        BandedHermitian C = compressed_commutator(m->p, k, win, v0 ? &V : nullptr);
        ProjectedMin pm = projected_commutator_min_eig(H, C, lo, hi);
        out->min_eig = pm.min_eig;
        out->max_eig = pm.max_eig;
        out->rank = pm.rank;
        out->inf_g = k == 0 ? NAN : inf_g_k(m->p, k, lo, hi);
    });
}

mrl_status mrl_stable_eigs(const mrl_model* m, int unilateral, const long* N_list, size_t nN, const mrl_sequence* v0,
                           double lo, double hi, int threads, char** out)
{
    return guarded([&] {
        need(m, "model");
        need(N_list, "N list");
        need(out, "out");
        ModelParams p = m->p;
        auto builder = [p, unilateral, v0](long N) { return hamiltonian(p, window_of(unilateral, N), v0); };
        EigReport rep = truncation_stable_eigs(builder, lo, hi, std::vector<long>(N_list, N_list + nN), threads);
        json j = {{"anchor", "point spectrum surrogate: eigenvalues persisting under truncation growth"},
                  {"window", {lo, hi}},
                  {"N", std::vector<long>(N_list, N_list + nN)},
                  {"eigenvalues", eig_report_json(rep)}};
        *out = dup_string(j.dump());
    });
}

mrl_status mrl_edge_state(const mrl_model* m, long N, double* eigenvalue, double* decay_ratio, double* drift)
{
    return guarded([&] {
        need(m, "model");
        EdgeState es = edge_state_check(m->p, N);
        if (eigenvalue) *eigenvalue = es.eigenvalue;
        if (decay_ratio) *decay_ratio = es.decay_ratio;
        if (drift) *drift = es.drift;
    });
}

mrl_status mrl_lap_scan(const mrl_operator* op, double s, const double* xs, size_t nx, const double* eps, size_t ne,
                        int threads, double tol, int cap, mrl_lap_row* rows)
{
    return guarded([&] {
        need(op, "operator");
        need(xs, "x grid");
        need(eps, "epsilon list");
        need(rows, "rows");
        auto res = lap_scan(op->H, op->N, s, std::vector<double>(xs, xs + nx), std::vector<double>(eps, eps + ne),
                            threads, tol, cap);
        for (std::size_t i = 0; i < res.size(); ++i)
            rows[i] = {res[i].x, res[i].epsilon, res[i].s, res[i].N, res[i].norm, res[i].iters, res[i].converged ? 1 : 0};
    });
}

mrl_status mrl_resolvent_norm(const mrl_operator* op, double s, double x, double eps, double tol, int cap, double* norm,
                              int* iters)
{
    return guarded([&] {
        need(op, "operator");
        need(norm, "out");
        ResolventNorm r = weighted_resolvent_norm(op->H, s, cplx(x, eps), tol, cap);
        *norm = r.norm;
        if (iters) *iters = r.iters;
    });
}

mrl_status mrl_band_counts(const mrl_model* m, const mrl_operator* op, mrl_band_count_t* out)
{
    return guarded([&] {
        need(m, "model");
        need(op, "operator");
        need(out, "out");
        BandCounts c = band_counts(banded_eigvals(op->H), spectral_bands(m->p));
        *out = {c.below, c.lower_band, c.gap, c.upper_band, c.above};
    });
}

mrl_status mrl_accumulation_scan(const mrl_model* m, int k, const mrl_sequence* v0, const double* radii, size_t nr,
                                 const long* N_list, size_t nN, int threads, char** out)
{
    return guarded([&] {
        need(m, "model");
        need(radii, "radii");
        need(N_list, "N list");
        need(out, "out");
        ModelParams p = m->p;
        CriticalSet cs = kappa_k(p, k);
        auto builder = [p, v0](long N) { return hamiltonian(p, LatticeWindow::bilateral(N), v0); };
        auto rows = accumulation_scan(builder, cs.points, control_points(p, cs), std::vector<double>(radii, radii + nr),
                                      std::vector<long>(N_list, N_list + nN), threads);
        json arr = json::array();
        for (const auto& r : rows)
            arr.push_back({{"point", r.point}, {"control", r.control}, {"radius", r.radius}, {"count", r.count}});
        *out = dup_string(json{{"anchor", "eigenvalues accumulate only at critical energies"}, {"k", k}, {"rows", arr}}.dump());
    });
}

}  // extern "C"
