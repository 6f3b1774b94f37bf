// mourre-lab: command-line front end over the C API
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mourre/mourre_c.h"

using json = nlohmann::json;

namespace {

constexpr int kExitOk = 0, kExitConfig = 1, kExitNumeric = 2;

struct Failure {
    int code;
    std::string msg;
};

int exit_code_for(mrl_status s)
{
    switch (s) {
    case MRL_EMPTY_PROJECTOR:
    case MRL_NO_CONVERGENCE:
    case MRL_SINGULAR:
    case MRL_NO_EDGE_STATE:
    case MRL_CONICAL_POINT:
    case MRL_INTERNAL: return kExitNumeric;
    default: return kExitConfig;
    }
}

void check(mrl_status s)
{
    if (s != MRL_OK) throw Failure{exit_code_for(s), std::string(mrl_status_name(s)) + ": " + mrl_last_error()};
}

std::string num(double v)
{
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v + 0.0);  // no "-0"
    return buf;
}

struct ModelDeleter {
    void operator()(mrl_model* m) const { mrl_model_destroy(m); }
};
struct SeqDeleter {
    void operator()(mrl_sequence* s) const { mrl_sequence_destroy(s); }
};
struct OpDeleter {
    void operator()(mrl_operator* o) const { mrl_operator_destroy(o); }
};
using ModelPtr = std::unique_ptr<mrl_model, ModelDeleter>;
using SeqPtr = std::unique_ptr<mrl_sequence, SeqDeleter>;
using OpPtr = std::unique_ptr<mrl_operator, OpDeleter>;

struct CString {
    char* p = nullptr;
    ~CString() { mrl_string_free(p); }
};

// JSON config values fill any option not given on the command line; nested objects are flattened
// to their leaf names ("model": {"alpha": 1} sets --alpha).
class Binder {
public:
    template <class T>
    CLI::Option* bind(CLI::App* app, const std::string& name, T& var, const std::string& help)
    {
        CLI::Option* opt = app->add_option("--" + name, var, help)->capture_default_str();
        hooks_.push_back({app, opt, name, [&var](const json& j) { var = j.get<T>(); }});
        return opt;
    }

    void apply(const json& cfg)
    {
        json flat = json::object();
        flatten(cfg, flat);
        for (auto& h : hooks_) {
            if (!h.app->parsed() || h.opt->count() > 0 || !flat.contains(h.key)) continue;
            try {
                h.set(flat[h.key]);
            } catch (const json::exception& e) {
                throw Failure{kExitConfig, "config field '" + h.key + "': " + e.what()};
            }
        }
    }

private:
    struct Hook {
        CLI::App* app;
        CLI::Option* opt;
        std::string key;
        std::function<void(const json&)> set;
    };
    std::vector<Hook> hooks_;

    static void flatten(const json& j, json& out)
    {
        for (auto it = j.begin(); it != j.end(); ++it) {
            if (it->is_object()) flatten(*it, out);
            else out[it.key()] = *it;
        }
    }
};

struct ModelOpts {
    double alpha = 1.0, a_re = 1.0, a_im = 0.0, b_re = -1.0, b_im = 0.0;
    void add(Binder& b, CLI::App* app)
    {
        b.bind(app, "alpha", alpha, "mass term alpha");
        b.bind(app, "a", a_re, "Re a");
        b.bind(app, "a-im", a_im, "Im a");
        b.bind(app, "b", b_re, "Re b");
        b.bind(app, "b-im", b_im, "Im b");
    }
    ModelPtr make() const
    {
        mrl_model* m = nullptr;
        check(mrl_model_create(alpha, a_re, a_im, b_re, b_im, &m));
        return ModelPtr(m);
    }
};

struct SeqOpts {
    std::string family, csv, a_family = "harmonic";
    double param = 1.0, l = 0.0, k = 1.0, scale = 1.0, power = 1.0;
    int n_max = 21;
    std::string prefix;

    void add(Binder& b, CLI::App* app, const std::string& pre, const std::string& what)
    {
        prefix = pre;
        b.bind(app, pre + "family", family,
               what + ": kopylova, power, inverse_linear, oscillating, s_rate, mk_rate, constant, counterexample");
        b.bind(app, pre + "csv", csv, what + " from CSV (n,w11_re,w11_im,w12_re,w12_im,w21_re,w21_im,w22_re,w22_im)");
        b.bind(app, pre + "param", param, "family parameter (s for power/oscillating, r for s_rate/mk_rate)");
        b.bind(app, pre + "l", l, "iterated-log depth for s_rate/mk_rate");
        b.bind(app, pre + "rate-k", k, "difference step for mk_rate");
        b.bind(app, pre + "scale", scale, "multiply the sequence by this factor");
        b.bind(app, pre + "a-family", a_family, "counterexample a_n: harmonic or power");
        b.bind(app, pre + "a-power", power, "exponent when a_n is a power");
        b.bind(app, pre + "nmax", n_max, "counterexample blocks");
    }

    bool given() const { return !family.empty() || !csv.empty(); }

    SeqPtr make() const
    {
        if (!given()) return nullptr;
        if (!family.empty() && !csv.empty()) throw Failure{kExitConfig, "give either a family or a CSV, not both"};
        mrl_sequence* s = nullptr;
        if (!csv.empty()) s = load_csv(csv);
        else if (family == "counterexample") check(mrl_sequence_counterexample(a_family.c_str(), power, n_max, &s));
        else check(mrl_sequence_named(family.c_str(), param, l, k, &s));
        SeqPtr out(s);
        if (scale != 1.0) {
            mrl_sequence* t = nullptr;
            check(mrl_sequence_scale(out.get(), scale, &t));
            out.reset(t);
        }
        return out;
    }

    static mrl_sequence* load_csv(const std::string& path)
    {
        std::ifstream in(path);
        if (!in) throw Failure{kExitConfig, "cannot open " + path};
        std::string line;
        std::vector<long> ns;
        std::vector<double> e;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            if (line.empty()) continue;
            if (lineno == 1 && line.rfind("n,", 0) == 0) continue;
            std::stringstream ss(line);
            std::string cell;
            std::vector<std::string> cells;
            while (std::getline(ss, cell, ',')) cells.push_back(cell);
            if (cells.size() != 9) throw Failure{kExitConfig, path + ":" + std::to_string(lineno) + ": expected 9 columns"};
            try {
                ns.push_back(std::stol(cells[0]));
                for (int i = 1; i < 9; ++i) e.push_back(std::stod(cells[i]));
            } catch (const std::exception&) {
                throw Failure{kExitConfig, path + ":" + std::to_string(lineno) + ": bad number"};
            }
        }
        mrl_sequence* s = nullptr;
        check(mrl_sequence_from_table(ns.data(), e.data(), ns.size(), &s));
        return s;
    }
};

std::vector<double> parse_list(const std::string& text, const char* what)
{
    std::vector<double> out;
    std::stringstream ss(text);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
        try {
            out.push_back(std::stod(cell));
        } catch (const std::exception&) {
            throw Failure{kExitConfig, std::string("bad number in ") + what + ": " + cell};
        }
    }
    if (out.empty()) throw Failure{kExitConfig, std::string("empty ") + what};
    return out;
}

std::vector<long> parse_longs(const std::string& text, const char* what)
{
    std::vector<long> out;
    for (double v : parse_list(text, what)) {
        if (v != std::floor(v)) throw Failure{kExitConfig, std::string(what) + " must be integers"};
        out.push_back(static_cast<long>(v));
    }
    return out;
}

class Output {
public:
    explicit Output(const std::string& path)
    {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw Failure{kExitConfig, "cannot write " + path};
        }
    }
    std::ostream& os() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

private:
    std::ofstream file_;
};

void emit_json(std::ostream& os, const json& j) { os << j.dump(2) << "\n"; }

json parse_report(const CString& s) { return json::parse(s.p); }

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"mourre-lab: Mourre theory experiments for 1D two-component lattice operators"};
    app.require_subcommand(1);
    app.fallthrough();
    std::string config_path, output;
    int threads = 0;
    app.add_option("--config", config_path, "JSON configuration; command-line flags override it");
    app.add_option("-o,--output", output, "write results here instead of stdout");
    app.add_option("--threads", threads, "worker threads (0 = available parallelism)");
    Binder B;

    // bands
    auto* c_bands = app.add_subcommand("bands", "band intervals I- and I+");
    ModelOpts m_bands;
    m_bands.add(B, c_bands);

    // kappa
    auto* c_kappa = app.add_subcommand("kappa", "critical set kappa_k");
    ModelOpts m_kappa;
    m_kappa.add(B, c_kappa);
    int k_kappa = 1;
    B.bind(c_kappa, "k", k_kappa, "order k (0 for the gapless conjugate operator)");

    // g
    auto* c_g = app.add_subcommand("g", "Mourre function g_k on a grid of energies");
    ModelOpts m_g;
    m_g.add(B, c_g);
    int k_g = 1, points_g = 201;
    double t_single = NAN, tmin = -3.0, tmax = 3.0;
    B.bind(c_g, "k", k_g, "order k");
    B.bind(c_g, "t", t_single, "single energy (overrides the grid)");
    B.bind(c_g, "tmin", tmin, "grid start");
    B.bind(c_g, "tmax", tmax, "grid end");
    B.bind(c_g, "points", points_g, "grid points (t = 0 is skipped)");

    // mourre
    auto* c_mourre = app.add_subcommand("mourre", "Mourre identity (fourier) or truncated commutator positivity");
    ModelOpts m_mourre;
    m_mourre.add(B, c_mourre);
    SeqOpts v_mourre;
    v_mourre.add(B, c_mourre, "potential-", "diagonal potential");
    std::string mode = "fourier";
    int k_mourre = 1, points_mourre = 4096;
    double lo_mourre = NAN, hi_mourre = NAN;
    long N_mourre = 300;
    B.bind(c_mourre, "mode", mode, "fourier or truncated")->check(CLI::IsMember({"fourier", "truncated"}));
    B.bind(c_mourre, "k", k_mourre, "order k");
    B.bind(c_mourre, "points", points_mourre, "theta grid size (fourier)");
    B.bind(c_mourre, "lo", lo_mourre, "energy window start (truncated)");
    B.bind(c_mourre, "hi", hi_mourre, "energy window end (truncated)");
    B.bind(c_mourre, "N", N_mourre, "bilateral window [-N, N] (truncated)");

    // classify
    auto* c_cls = app.add_subcommand("classify", "membership verdicts for perturbation classes");
    SeqOpts s_cls;
    s_cls.add(B, c_cls, "", "sequence");
    std::string cls = "Q";
    int k_cls = 1, order_cls = 2, row_cls = 0, col_cls = 0;
    double beta = 1.0, gamma = 2.0;
    long horizon_cls = 1000000;
    B.bind(c_cls, "class", cls, "S, M, Q, l1, rho or appendix")
        ->check(CLI::IsMember({"S", "M", "Q", "l1", "rho", "appendix"}));
    B.bind(c_cls, "k", k_cls, "k for M and Q, shift p for l1");
    B.bind(c_cls, "order", order_cls, "order m for Q (1 or 2)");
    B.bind(c_cls, "beta", beta, "annulus inner factor");
    B.bind(c_cls, "gamma", gamma, "annulus outer factor");
    B.bind(c_cls, "row", row_cls, "matrix row for l1");
    B.bind(c_cls, "col", col_cls, "matrix column for l1");
    B.bind(c_cls, "horizon", horizon_cls, "largest |n| scanned");

    // dump
    auto* c_dump = app.add_subcommand("dump", "write a sequence as CSV");
    SeqOpts s_dump;
    s_dump.add(B, c_dump, "", "sequence");
    long horizon_dump = 1000, pad_dump = 64;
    B.bind(c_dump, "horizon", horizon_dump, "emit n in [-horizon - pad, horizon + pad]");
    B.bind(c_dump, "pad", pad_dump, "extra indices beyond the horizon");

    // counterexample
    auto* c_cex = app.add_subcommand("counterexample", "block-alternating sequence and its three lemma checks");
    std::string fam_cex = "dyadic", a_cex = "harmonic";
    double pow_cex = 1.0;
    int nmax_cex = 21, pmax_cex = 8;
    long horizon_cex = 1L << 20, emit_b = 0;
    B.bind(c_cex, "family", fam_cex, "subordinate family (dyadic)")->check(CLI::IsMember({"dyadic"}));
    B.bind(c_cex, "a", a_cex, "a_n family: harmonic or power");
    B.bind(c_cex, "a-power", pow_cex, "exponent when a_n is a power");
    B.bind(c_cex, "nmax", nmax_cex, "number of dyadic blocks");
    B.bind(c_cex, "pmax", pmax_cex, "largest window p for item (ii)");
    B.bind(c_cex, "horizon", horizon_cex, "largest index checked");
    B.bind(c_cex, "emit-b", emit_b, "include the first this-many b_j");

    // eigs
    auto* c_eigs = app.add_subcommand("eigs", "truncation-stable eigenvalues in a window");
    ModelOpts m_eigs;
    m_eigs.add(B, c_eigs);
    SeqOpts v_eigs;
    v_eigs.add(B, c_eigs, "potential-", "diagonal potential");
    std::string kind_eigs = "bilateral", Ns_eigs = "200,400,800", fmt_eigs = "csv";
    double lo_eigs = -1.0, hi_eigs = 1.0;
    B.bind(c_eigs, "kind", kind_eigs, "bilateral or unilateral")->check(CLI::IsMember({"bilateral", "unilateral"}));
    B.bind(c_eigs, "N-list", Ns_eigs, "comma-separated increasing window sizes");
    B.bind(c_eigs, "lo", lo_eigs, "window start");
    B.bind(c_eigs, "hi", hi_eigs, "window end");
    B.bind(c_eigs, "format", fmt_eigs, "csv or json")->check(CLI::IsMember({"csv", "json"}));

    // edge
    auto* c_edge = app.add_subcommand("edge", "edge state of the unilateral operator");
    ModelOpts m_edge;
    m_edge.add(B, c_edge);
    long N_edge = 400;
    B.bind(c_edge, "N", N_edge, "unilateral window [0, N]");

    // lap
    auto* c_lap = app.add_subcommand("lap", "weighted resolvent norms for the limiting absorption principle");
    ModelOpts m_lap;
    m_lap.add(B, c_lap);
    SeqOpts v_lap;
    v_lap.add(B, c_lap, "potential-", "diagonal potential");
    std::string kind_lap = "bilateral", x_lap = "0.5,1.0,1.5", eps_lap = "0.1,0.03,0.01,0.003,0.001";
    long N_lap = 4000;
    double s_lap = 1.0, tol_lap = 1e-6;
    int cap_lap = 500;
    B.bind(c_lap, "kind", kind_lap, "bilateral or unilateral")->check(CLI::IsMember({"bilateral", "unilateral"}));
    B.bind(c_lap, "N", N_lap, "window size");
    B.bind(c_lap, "s", s_lap, "weight exponent");
    B.bind(c_lap, "x", x_lap, "comma-separated energies");
    B.bind(c_lap, "eps", eps_lap, "comma-separated imaginary parts");
    B.bind(c_lap, "tol", tol_lap, "relative tolerance of the power iteration");
    B.bind(c_lap, "cap", cap_lap, "power iteration cap");

    // accumulation
    auto* c_acc = app.add_subcommand("accumulation", "stable eigenvalue counts around critical and control energies");
    ModelOpts m_acc;
    m_acc.add(B, c_acc);
    SeqOpts v_acc;
    v_acc.add(B, c_acc, "potential-", "diagonal potential");
    int k_acc = 1;
    std::string radii_acc = "0.1,0.01,0.001", Ns_acc = "200,400";
    B.bind(c_acc, "k", k_acc, "order k");
    B.bind(c_acc, "radii", radii_acc, "decreasing radii");
    B.bind(c_acc, "N-list", Ns_acc, "increasing window sizes");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    try {
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            if (!in) throw Failure{kExitConfig, "cannot open config " + config_path};
            json cfg;
            try {
                cfg = json::parse(in);
            } catch (const json::exception& e) {
                throw Failure{kExitConfig, std::string("config is not valid JSON: ") + e.what()};
            }
            if (!cfg.is_object()) throw Failure{kExitConfig, "config must be a JSON object"};
            if (cfg.contains("threads") && app.get_option("--threads")->count() == 0) threads = cfg["threads"].get<int>();
            B.apply(cfg);
        }
        Output out(output);
        std::ostream& os = out.os();

        if (c_bands->parsed()) {
            auto m = m_bands.make();
            double b[4];
            int gap = 0;
            check(mrl_bands(m.get(), b, &gap));
            os << "band,lo,hi,has_gap\n";
            os << "minus," << num(b[0]) << "," << num(b[1]) << "," << (gap ? "true" : "false") << "\n";
            os << "plus," << num(b[2]) << "," << num(b[3]) << "," << (gap ? "true" : "false") << "\n";
        } else if (c_kappa->parsed()) {
            auto m = m_kappa.make();
            size_t n = 0;
            check(mrl_kappa(m.get(), k_kappa, nullptr, 0, &n));
            std::vector<double> pts(n);
            check(mrl_kappa(m.get(), k_kappa, pts.data(), n, &n));
            os << "k,point\n";
            for (double t : pts) os << k_kappa << "," << num(t) << "\n";
        } else if (c_g->parsed()) {
            auto m = m_g.make();
            std::vector<double> ts;
            if (!std::isnan(t_single)) ts.push_back(t_single);
            else {
                if (points_g < 2 || !(tmax > tmin)) throw Failure{kExitConfig, "grid needs tmax > tmin and >= 2 points"};
                for (int i = 0; i < points_g; ++i) {
                    double t = tmin + (tmax - tmin) * i / (points_g - 1);
                    if (t != 0.0) ts.push_back(t);
                }
            }
            std::vector<double> gs;
            for (double t : ts) {
                double g = 0.0;
                check(mrl_g(m.get(), k_g, t, &g));
                gs.push_back(g);
            }
            os << "t,g\n";
            for (std::size_t i = 0; i < ts.size(); ++i) os << num(ts[i]) << "," << num(gs[i]) << "\n";
        } else if (c_mourre->parsed()) {
            auto m = m_mourre.make();
            json j;
            if (mode == "fourier") {
                double dev = 0.0;
                check(mrl_mourre_fourier(m.get(), k_mourre, points_mourre, &dev));
                j = {{"anchor", "Fourier-side commutator density equals g_k(lambda(theta))"},
                     {"mode", mode}, {"k", k_mourre}, {"points", points_mourre}, {"max_deviation", dev}};
            } else {
                if (std::isnan(lo_mourre) || std::isnan(hi_mourre))
                    throw Failure{kExitConfig, "truncated mode needs --lo and --hi"};
                auto v = v_mourre.make();
                mrl_projected pr{};
                check(mrl_truncated_mourre(m.get(), k_mourre, lo_mourre, hi_mourre, N_mourre, v.get(), &pr));
                j = {{"anchor", "strict Mourre estimate E [iA_k, H] E >= c E on the window"},
                     {"mode", mode}, {"k", k_mourre}, {"N", N_mourre}, {"window", {lo_mourre, hi_mourre}},
                     {"min_eig", pr.min_eig}, {"max_eig", pr.max_eig}, {"rank", pr.rank},
                     {"inf_g_k", std::isnan(pr.inf_g) ? json(nullptr) : json(pr.inf_g)}};
            }
            emit_json(os, j);
        } else if (c_cls->parsed()) {
            if (!s_cls.given()) throw Failure{kExitConfig, "classify needs --family or --csv"};
            auto s = s_cls.make();
            CString rep;
            if (cls == "appendix") check(mrl_appendix_sanity(s.get(), beta, gamma, horizon_cls, &rep.p));
            else check(mrl_classify(s.get(), cls.c_str(), k_cls, order_cls, beta, gamma, row_cls, col_cls, horizon_cls, &rep.p));
            emit_json(os, parse_report(rep));
        } else if (c_dump->parsed()) {
            if (!s_dump.given()) throw Failure{kExitConfig, "dump needs --family or --csv"};
            if (horizon_dump < 0 || pad_dump < 0) throw Failure{kExitConfig, "horizon and pad must be nonnegative"};
            auto s = s_dump.make();
            os << "n,w11_re,w11_im,w12_re,w12_im,w21_re,w21_im,w22_re,w22_im\n";
            double w[8];
            for (long n = -horizon_dump - pad_dump; n <= horizon_dump + pad_dump; ++n) {
                check(mrl_sequence_eval(s.get(), n, w));
                os << n;
                for (double v : w) os << "," << num(v);
                os << "\n";
            }
        } else if (c_cex->parsed()) {
            CString rep;
            check(mrl_counterexample_report(a_cex.c_str(), pow_cex, nmax_cex, pmax_cex, horizon_cex, emit_b, &rep.p));
            json j = parse_report(rep);
            j["family"] = fam_cex;
            j["a"] = a_cex;
            emit_json(os, j);
        } else if (c_eigs->parsed()) {
            auto m = m_eigs.make();
            auto v = v_eigs.make();
            auto Ns = parse_longs(Ns_eigs, "N-list");
            CString rep;
            check(mrl_stable_eigs(m.get(), kind_eigs == "unilateral", Ns.data(), Ns.size(), v.get(), lo_eigs, hi_eigs,
                                  threads, &rep.p));
            json j = parse_report(rep);
            if (fmt_eigs == "json") emit_json(os, j);
            else {
                os << "lambda,stable,decay_ratio,side\n";
                for (const auto& e : j["eigenvalues"])
                    os << num(e["lambda"].get<double>()) << "," << (e["stable"].get<bool>() ? "true" : "false") << ","
                       << num(e["decay_ratio"].get<double>()) << "," << e["side"].get<std::string>() << "\n";
            }
        } else if (c_edge->parsed()) {
            auto m = m_edge.make();
            double ev = 0, ratio = 0, drift = 0;
            check(mrl_edge_state(m.get(), N_edge, &ev, &ratio, &drift));
            emit_json(os, {{"anchor", "unilateral operator: the only eigenvalue is -alpha when |b| > |a|"},
                           {"N", N_edge}, {"eigenvalue", ev}, {"decay_ratio", ratio}, {"drift", drift}});
        } else if (c_lap->parsed()) {
            auto m = m_lap.make();
            auto v = v_lap.make();
            auto xs = parse_list(x_lap, "x");
            auto eps = parse_list(eps_lap, "eps");
            mrl_operator* raw = nullptr;
            check(mrl_operator_create(m.get(), kind_lap == "unilateral", N_lap, v.get(), &raw));
            OpPtr op(raw);
            std::vector<mrl_lap_row> rows(xs.size() * eps.size());
            check(mrl_lap_scan(op.get(), s_lap, xs.data(), xs.size(), eps.data(), eps.size(), threads, tol_lap, cap_lap,
                               rows.data()));
            os << "x,epsilon,s,N,norm,iters,converged\n";
            for (const auto& r : rows)
                os << num(r.x) << "," << num(r.epsilon) << "," << num(r.s) << "," << r.N << "," << num(r.norm) << ","
                   << r.iters << "," << (r.converged ? "true" : "false") << "\n";
        } else if (c_acc->parsed()) {
            auto m = m_acc.make();
            auto v = v_acc.make();
            auto radii = parse_list(radii_acc, "radii");
            auto Ns = parse_longs(Ns_acc, "N-list");
            CString rep;
            check(mrl_accumulation_scan(m.get(), k_acc, v.get(), radii.data(), radii.size(), Ns.data(), Ns.size(),
                                        threads, &rep.p));
            emit_json(os, parse_report(rep));
        }
        return kExitOk;
    } catch (const Failure& f) {
        std::cerr << "mourre-lab: " << f.msg << "\n";
        return f.code;
    } catch (const std::exception& e) {
        std::cerr << "mourre-lab: " << e.what() << "\n";
        return kExitConfig;
    }
}
