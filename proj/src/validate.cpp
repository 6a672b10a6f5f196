#include "zst/validate.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "zst/asymptotics.hpp"
#include "zst/errors.hpp"
#include "zst/gradients.hpp"
#include "zst/hamiltonian.hpp"

namespace zst {

namespace {

SuiteResult check(const std::string& name, double metric, double threshold, std::string detail = {}) {
    return {name, metric <= threshold, metric, threshold, std::move(detail)};
}

// scale of M at lam on [0, 1]
double scale(cplx lam) { return std::exp(2 * std::abs(std::imag(lam * lam))); }

SuiteResult wronskian(std::mt19937_64& rng) {
    double det_err = 0, agree = 0;
    for (int k = 0; k < 4; ++k) {
        const Potential p = Potential::random(3, 1.5, rng);
        for (int a = 0; a < 5; ++a)
            for (int b = 0; b < 5; ++b) {
                const cplx lam(-2 + a, -2 + b);
                const auto ode = monodromy(p, lam, Method::OdeIntegration);
                const auto pic = monodromy(p, lam, Method::PicardSeries);
                const double s = scale(lam);
                det_err = std::max(det_err, ode.residual / (s * s));
                agree = std::max(agree, max_abs(ode.M - pic.M) / s);
            }
    }
    return check("wronskian", std::max(det_err, agree), 1e-8,
                 "scaled |det M - 1| and Picard/ODE gap on [-2,2]^2");
}

SuiteResult singleexp() {
    double err = 0, tr = 0;
    for (const auto& id : figure_ids()) {
        const SingleExp s = figure_params(id);
        const Potential p = s.potential();
        for (int a = 0; a < 5; ++a)
            for (int b = 0; b < 5; ++b) {
                const cplx lam(-2 + a, -2 + b);
                const Mat2 C = closed_form_M(s, lam, 1.0);
                err = std::max(err, max_abs(C - monodromy(p, lam, Method::OdeIntegration).M) / scale(lam));
                // cos is even, any root of Omega^2 will do
                tr = std::max(tr, std::abs(C.trace() + 2.0 * std::cos(std::sqrt(omega_squared(s, lam)))) / scale(lam));
            }
    }
    return check("singleexp", std::max(err, tr), 1e-8, "closed form vs ODE and trace identity, scaled");
}

SuiteResult asymptotics(std::mt19937_64& rng) {
    const Potential p = Potential::random(3, 1.0, rng);
    std::vector<double> t;
    for (int k = 1; k <= 32; ++k) t.push_back(k / 32.0);
    double worst = -1e9;
    for (int i : {1, 3}) {
        std::vector<double> ns, r;
        for (int n = 8; n <= 64; n *= 2) {
            const auto rep = validate_decay(p, {zeta(i, n)}, t);
            ns.push_back(n);
            r.push_back(rep.rows[0].sup_diff);
        }
        worst = std::max(worst, loglog_slope(ns, r));
    }
    return check("asymptotics", worst, -0.4, "log-log slope of sup|M - E| along zeta^1_n, zeta^3_n");
}

SuiteResult gradients(std::mt19937_64& rng) {
    const GaussRule rule = composite_gauss(0, 1, 16);
    double worst = 0;
    for (int k = 0; k < 3; ++k) {
        const Potential p = Potential::random(3, 1.0, rng), h = Potential::random(3, 1.0, rng);
        const cplx lam(0.3 + 0.4 * k, 0.2);
        const auto g = grad_discriminant(p, lam, rule.x, 1e-13);
        const double eps = 1e-5;
        const cplx fd = (discriminant(p + cplx(eps) * h, lam, 1e-13) - discriminant(p + cplx(-eps) * h, lam, 1e-13)) /
                        (2 * eps);
        worst = std::max(worst, std::abs(fd - g.pair(h, rule)) / std::abs(fd));
    }
    const auto g0 = grad_discriminant(Potential::zero(), cplx(0.8, 0.3), rule.x);
    double z = 0;
    for (const auto& c : g0.d)
        for (auto v : c) z = std::max(z, std::abs(v));
    if (z > 1e-10) worst = std::max(worst, 1.0);
    return check("gradients", worst, 1e-5, "grad Delta vs central differences; zero-potential gradient");
}

SuiteResult hamiltonian(std::mt19937_64& rng) {
    double worst = 0;
    for (int k = 0; k < 3; ++k) {
        const PhasePoint f = random_phase_point(4, 0.5, rng);
        worst = std::max(worst, (apply_D(gradient_functional(Functional::H1, f)) - x_rhs(f)).sup_norm());
        for (cplx a : {cplx(0), cplx(0.5), cplx(1)})
            worst = std::max(worst, (e_alpha_rhs(f, a) - x_rhs(f)).sup_norm());
    }
    const PhasePoint w = plane_wave(1, 0.5, -1);
    std::vector<double> xs;
    for (int k = 0; k <= 10; ++k) xs.push_back(0.05 * k);
    for (const auto& s : propagate_x(w, xs, 1e-10))
        for (auto F : {Functional::H0, Functional::H1, Functional::H2})
            worst = std::max(worst, std::abs(functional(F, s.phi) - functional(F, w)));
    return check("hamiltonian", worst, 1e-8, "first/second structure identities and plane-wave drift");
}

SuiteResult identity(std::mt19937_64& rng) {
    const Potential p = Potential::random(3, 0.5, rng);
    Evaluator ev(p, default_tol, 2);
    double worst = 0;
    for (Kind k : {Kind::Dirichlet, Kind::Neumann}) {
        const Spectrum s = locate_spectrum(k, ev, 3, 1e-10);
        for (const auto& e : s.eigenvalues) worst = std::max(worst, verify_disc_identity(p, e.value));
    }
    return check("identity", worst, 1e-8, "|Delta^2 - 4 - delta^2| at Dirichlet and Neumann eigenvalues");
}

SuiteResult sign(std::mt19937_64& rng) {
    const Potential p = Potential::random(3, 0.5, rng);
    const Spectrum s = locate_spectrum(Kind::Periodic, p, 3, 1e-10);
    double worst = 0;
    for (const auto& e : s.eigenvalues) {
        if (e.n == 0) continue;
        const double want = e.n % 2 == 0 ? 2.0 : -2.0;
        worst = std::max(worst, std::abs(discriminant(p, e.value) - want));
    }
    return check("sign", worst, 1e-6, "Delta = 2(-1)^n at periodic eigenvalues");
}

SuiteResult zeroset() {
    const Potential p = figure_params("3b").potential();
    const ArcPolyline arc = trace_arc(p, -1);
    double worst = 0;
    for (auto z : arc.samples) worst = std::max(worst, std::abs(discriminant(p, z).imag()));
    return check("zeroset", worst, 1e-8, "|Im Delta| along the traced arc of figure 3b, n = -1");
}

}  // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> n{"wronskian", "singleexp", "asymptotics", "gradients",
                                            "hamiltonian", "identity", "sign", "zeroset"};
    return n;
}

std::vector<SuiteResult> run_suite(const std::string& name, unsigned long long seed) {
    std::vector<std::string> todo;
    if (name == "all")
        todo = suite_names();
    else if (std::find(suite_names().begin(), suite_names().end(), name) != suite_names().end())
        todo = {name};
    else
        throw ParseError("unknown suite '" + name + "'");
    std::vector<SuiteResult> out;
    for (const auto& s : todo) {
        std::mt19937_64 rng(seed);
        try {
            if (s == "wronskian") out.push_back(wronskian(rng));
            if (s == "singleexp") out.push_back(singleexp());
            if (s == "asymptotics") out.push_back(asymptotics(rng));
            if (s == "gradients") out.push_back(gradients(rng));
            if (s == "hamiltonian") out.push_back(hamiltonian(rng));
            if (s == "identity") out.push_back(identity(rng));
            if (s == "sign") out.push_back(sign(rng));
            if (s == "zeroset") out.push_back(zeroset());
        } catch (const Error& e) {
            out.push_back({s, false, 0, 0, std::string("error: ") + e.what()});
        }
    }
    return out;
}

Json to_json(const SuiteResult& r) {
    return Json{{"suite", r.name}, {"passed", r.passed}, {"metric", r.metric}, {"threshold", r.threshold},
                {"detail", r.detail}};
}

}  // namespace zst
