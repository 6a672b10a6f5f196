// zs_tspec: spectra, zero sets, validation and figure data for the t-periodic ZS problem

#include <CLI11.hpp>
#include <cstdio>
#include <iostream>
#include <sstream>

#include "zst/errors.hpp"
#include "zst/figures.hpp"
#include "zst/hamiltonian.hpp"
#include "zst/io.hpp"
#include "zst/validate.hpp"

using namespace zst;

namespace {

// exit codes
constexpr int kOk = 0, kIoError = 1, kCountMismatch = 2, kFailed = 3, kNumerical = 4;

struct Common {
    std::string potential = "zero";
    std::string figure;
    double tol = 1e-10;
    std::string out;
    std::string format = "json";
};

void add_common(CLI::App* c, Common& o, bool with_potential = true) {
    if (with_potential) {
        c->add_option("--potential", o.potential,
                      "zero | random:K:norm:seed | figure:ID | inline JSON | path to JSON");
        c->add_option("--figure", o.figure, "figure parameter set (1a 1b 3a 3b 3c 3d 5)");
    }
    c->add_option("--tol", o.tol, "refinement tolerance")->check(CLI::PositiveNumber);
    c->add_option("--out", o.out, "output file (default stdout)");
    c->add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
}

Potential potential_of(const Common& o) {
    return o.figure.empty() ? load_potential(o.potential) : load_potential("figure:" + o.figure);
}

void emit(const Common& o, const std::string& text) {
    if (o.out.empty())
        std::cout << text;
    else
        write_file(o.out, text);
}

std::string num(double v) {
    char b[40];
    std::snprintf(b, sizeof b, "%.15e", v);
    return b;
}

std::string spectrum_csv(const Spectrum& s) {
    std::string out = "kind,i,n,sign,mult,re,im,residual\n";
    for (const auto& e : s.eigenvalues)
        out += to_string(e.kind) + "," + std::to_string(e.i) + "," + std::to_string(e.n) + "," +
               std::to_string(e.sign) + "," + std::to_string(e.mult) + "," + num(e.value.real()) + "," +
               num(e.value.imag()) + "," + num(e.residual) + "\n";
    return out;
}

std::string arcs_csv(const std::vector<ArcPolyline>& arcs, const std::string& part, bool header) {
    std::string out = header ? "part,n,re,im,delta\n" : "";
    for (const auto& a : arcs)
        for (std::size_t k = 0; k < a.samples.size(); ++k)
            out += part + "," + std::to_string(a.n) + "," + num(a.samples[k].real()) + "," +
                   num(a.samples[k].imag()) + "," + num(a.delta[k]) + "\n";
    return out;
}

int cmd_spectrum(const Common& o, const std::string& kind, int nmax) {
    const Potential p = potential_of(o);
    const Spectrum s = locate_spectrum(parse_kind(kind), p, nmax, o.tol);
    emit(o, o.format == "csv" ? spectrum_csv(s) : dump(to_json(s)));
    return kOk;
}

int cmd_zeroset(const Common& o, std::vector<int> ns, double ymax, bool full) {
    const Potential p = potential_of(o);
    int nmax = 1;
    for (int n : ns) {
        if (n == 0) throw ParseError("arc labels must be nonzero");
        nmax = std::max(nmax, std::abs(n));
    }
    TraceOptions opt;
    opt.y_max = ymax;
    opt.stop_past_band = !full;
    const Spectrum sp = locate_spectrum(Kind::Periodic, p, std::max(nmax, 4), o.tol);
    std::vector<ArcPolyline> arcs, stars;
    Json jarcs = Json::array();
    for (int n : ns) {
        ArcPolyline a = trace_arc(p, n, opt);
        for (const auto& w : a.warnings) std::cerr << "warning: arc n=" << n << ": " << w << "\n";
        Json ja = to_json(a);
        cplx lm, lp;
        int found = 0;
        for (const auto& e : sp.eigenvalues)
            if (e.i == 1 && e.n == n) {
                (e.sign < 0 ? lm : lp) = e.value;
                ++found;
            }
        if (found == 2) {
            try {
                ArcPolyline g = extract_gamma_star(a, p, lm, lp, 1e-7);
                ja["gamma_star"] = to_json(g);
                stars.push_back(g);
            } catch (const Error& e) {
                std::cerr << "warning: gamma* n=" << n << ": " << e.what() << "\n";
                ja["gamma_star"] = nullptr;
            }
        } else {
            ja["gamma_star"] = nullptr;
        }
        jarcs.push_back(ja);
        arcs.push_back(std::move(a));
    }
    if (o.format == "csv")
        emit(o, arcs_csv(arcs, "arc", true) + arcs_csv(stars, "gamma_star", false));
    else
        emit(o, dump(Json{{"symmetry", to_string(classify(p))}, {"N", sp.N}, {"arcs", jarcs}}));
    return kOk;
}

int cmd_validate(const Common& o, const std::string& suite, unsigned long long seed) {
    const auto res = run_suite(suite, seed);
    bool ok = true;
    Json arr = Json::array();
    std::string csv = "suite,passed,metric,threshold\n";
    for (const auto& r : res) {
        ok = ok && r.passed;
        arr.push_back(to_json(r));
        csv += r.name + "," + (r.passed ? "1" : "0") + "," + num(r.metric) + "," + num(r.threshold) + "\n";
        std::cerr << (r.passed ? "PASS " : "FAIL ") << r.name << "  " << r.detail << "\n";
    }
    emit(o, o.format == "csv" ? csv : dump(Json{{"passed", ok}, {"suites", arr}}));
    return ok ? kOk : kFailed;
}

int cmd_figure(const Common& o, const std::string& id, int arc_nmax) {
    const FigureDataset f = figure_dataset(id, arc_nmax, o.tol);
    for (const auto& w : f.warnings) std::cerr << "warning: " << w << "\n";
    if (o.format == "csv") {
        std::string s = spectrum_csv(f.periodic);
        s += arcs_csv(f.arcs, "arc", true) + arcs_csv(f.gamma_star, "gamma_star", false);
        emit(o, s);
    } else {
        emit(o, dump(to_json(f)));
    }
    return kOk;
}

struct ConserveArgs {
    std::vector<std::string> plane_wave;
    int sigma = 1;
    std::string alpha = "0.5";
    int mode = -1;
    double xmax = 0.5;
    int steps = 10;
    double perturb = 0;
    unsigned long long seed = 1;
    double drift_tol = 1e-7;
};

cplx parse_cplx(const std::string& s) {
    double re = 0, im = 0;
    char extra;
    if (std::sscanf(s.c_str(), "%lf,%lf%c", &re, &im, &extra) == 2 || std::sscanf(s.c_str(), "%lf%c", &re, &extra) == 1)
        return {re, im};
    throw ParseError("cannot parse complex number '" + s + "' (use re or re,im)");
}

int cmd_conserve(const Common& o, ConserveArgs a) {
    for (const auto& kv : a.plane_wave) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) throw ParseError("expected key=value, got '" + kv + "'");
        const std::string k = kv.substr(0, eq), v = kv.substr(eq + 1);
        try {
            if (k == "sigma")
                a.sigma = std::stoi(v);
            else if (k == "alpha")
                a.alpha = v;
            else if (k == "mode")
                a.mode = std::stoi(v);
            else
                throw ParseError("unknown plane-wave key '" + k + "'");
        } catch (const std::logic_error&) {
            throw ParseError("bad value in '" + kv + "'");
        }
    }
    if (a.sigma != 1 && a.sigma != -1) throw ParseError("sigma must be +1 or -1");
    if (a.steps < 1 || a.xmax <= 0) throw ParseError("need steps >= 1 and xmax > 0");
    PhasePoint phi = plane_wave(a.sigma, parse_cplx(a.alpha), a.mode).truncated(std::max(4, std::abs(a.mode)));
    if (a.perturb > 0) {
        std::mt19937_64 rng(a.seed);
        phi = phi + random_phase_point(phi.order(), a.perturb, rng, false);
    }
    std::vector<double> xs;
    for (int k = 0; k <= a.steps; ++k) xs.push_back(a.xmax * k / a.steps);
    const auto traj = propagate_x(phi, xs, o.tol);
    const Functional F[3] = {Functional::H0, Functional::H1, Functional::H2};
    cplx H0[3];
    for (int j = 0; j < 3; ++j) H0[j] = functional(F[j], phi);
    double drift = 0;
    Json rows = Json::array();
    std::string csv = "x,H0t_re,H0t_im,H1t_re,H1t_im,H2t_re,H2t_im,max_coeff\n";
    for (const auto& s : traj) {
        Json r{{"x", s.x}};
        csv += num(s.x);
        for (int j = 0; j < 3; ++j) {
            const cplx h = functional(F[j], s.phi);
            drift = std::max(drift, std::abs(h - H0[j]));
            r[to_string(F[j])] = to_json(h);
            csv += "," + num(h.real()) + "," + num(h.imag());
        }
        r["max_coeff"] = s.phi.max_coeff();
        csv += "," + num(s.phi.max_coeff()) + "\n";
        rows.push_back(r);
    }
    const bool ok = drift <= a.drift_tol;
    std::cerr << (ok ? "PASS" : "FAIL") << " max drift " << drift << " (limit " << a.drift_tol << ")\n";
    emit(o, o.format == "csv" ? csv
                              : dump(Json{{"sigma", a.sigma},
                                          {"alpha", to_json(parse_cplx(a.alpha))},
                                          {"mode", a.mode},
                                          {"perturbation", a.perturb},
                                          {"max_drift", drift},
                                          {"passed", ok},
                                          {"trajectory", rows}}));
    return ok ? kOk : kFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spectral data of the t-part of the NLS Lax pair with period-1 potentials"};
    app.require_subcommand(1);

    Common co;
    std::string kind = "periodic";
    int nmax = 8;
    auto* sp = app.add_subcommand("spectrum", "locate and label eigenvalues");
    add_common(sp, co);
    sp->add_option("--kind", kind, "dirichlet, neumann, periodic or critical")
        ->check(CLI::IsMember({"dirichlet", "neumann", "periodic", "critical"}));
    sp->add_option("--nmax", nmax, "largest |n| (also bounds the search for N)")->check(CLI::PositiveNumber);

    std::vector<int> arc_ns{-1};
    double ymax = 4.0;
    bool full = false;
    auto* zs = app.add_subcommand("zeroset", "trace arcs where Delta is real");
    add_common(zs, co);
    zs->add_option("--n", arc_ns, "arc labels");
    zs->add_option("--ymax", ymax, "stop tracing above this imaginary part");
    zs->add_flag("--full", full, "keep tracing past |Delta| = 2");

    std::string suite = "all";
    unsigned long long seed = 1;
    auto* va = app.add_subcommand("validate", "run invariant suites");
    add_common(va, co, false);
    va->add_option("--suite", suite, "all or one suite name");
    va->add_option("--seed", seed, "random seed");

    std::string fig_id;
    int arc_nmax = 0;
    auto* fi = app.add_subcommand("figure", "data behind a figure: eigenvalues, arcs, discs");
    add_common(fi, co, false);
    fi->add_option("id", fig_id, "figure id")->required()->check(CLI::IsMember(figure_ids()));
    fi->add_option("--arc-nmax", arc_nmax, "trace arcs for 1 <= |n| <= this (default N+1)");

    ConserveArgs ca;
    auto* cs = app.add_subcommand("conserve", "propagate NLS in x and report conserved functionals");
    add_common(cs, co, false);
    cs->add_option("--plane-wave", ca.plane_wave, "key=value pairs: sigma, alpha (re or re,im), mode");
    cs->add_option("--sigma", ca.sigma);
    cs->add_option("--alpha", ca.alpha);
    cs->add_option("--mode", ca.mode);
    cs->add_option("--xmax", ca.xmax);
    cs->add_option("--steps", ca.steps);
    cs->add_option("--perturb", ca.perturb, "max coefficient of a random perturbation");
    cs->add_option("--seed", ca.seed);
    cs->add_option("--drift-tol", ca.drift_tol);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kIoError;
    }

    try {
        if (sp->parsed()) return cmd_spectrum(co, kind, nmax);
        if (zs->parsed()) return cmd_zeroset(co, arc_ns, ymax, full);
        if (va->parsed()) return cmd_validate(co, suite, seed);
        if (fi->parsed()) return cmd_figure(co, fig_id, arc_nmax);
        if (cs->parsed()) return cmd_conserve(co, ca);
    } catch (const CountMismatch& e) {
        std::cerr << "count mismatch: " << e.what() << "\n";
        return kCountMismatch;
    } catch (const ParseError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kIoError;
    } catch (const IoError& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return kIoError;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kNumerical;
    }
    return kOk;
}
