#include "zst/zeroset.hpp"

#include <cmath>

#include "zst/errors.hpp"
#include "zst/quadrature.hpp"
#include "zst/spectra.hpp"

namespace zst {

Rectangle rectangle(int n) {
    if (n == 0) throw Error("rectangles are defined for n != 0");
    const double h = (pi / 8) / std::sqrt(2 * std::abs(n) * pi);
    return {(n > 0 ? 1.0 : -1.0) * std::sqrt(std::abs(n) * pi / 2), h, h};
}

double f_extension(const Potential& p, double x, double y, double tol) {
    if (std::abs(y) > 1e-4) return discriminant(p, cplx(x, y), tol).imag() / y;
    if (y == 0) return discriminant_derivative(p, x, tol).real();
    const GaussRule& g = gauss8();
    double s = 0;
    for (std::size_t k = 0; k < g.x.size(); ++k) {
        const double u = 0.5 * (g.x[k] + 1);
        s += 0.5 * g.w[k] * discriminant_derivative(p, cplx(x, u * y), tol).real();
    }
    return s;
}

double real_critical_point(const Potential& p, int n, double tol) {
    double x = (n > 0 ? 1.0 : -1.0) * std::sqrt(std::abs(n) * pi / 2);
    const double x0 = x;
    for (int it = 0; it < 60; ++it) {
        const Jet j = monodromy_jet(p, x, 2, tol);
        const double f = j.dM.trace().real(), df = j.d2M.trace().real();
        if (df == 0) break;
        const double step = f / df;
        x -= step;
        if (std::abs(x - x0) > std::sqrt(std::abs(n) * pi / 2) / 2) break;
        if (std::abs(step) < 1e-14 * std::max(1.0, std::abs(x))) return x;
    }
    throw NoCrossingFound("no real critical point near n = " + std::to_string(n));
}

namespace {

// Newton in x on F(., y) = 0
bool correct(const Potential& p, double& x, double y, double tol) {
    const double h = 1e-6;
    for (int it = 0; it < 30; ++it) {
        const double f = f_extension(p, x, y, tol);
        const double d = (f_extension(p, x + h, y, tol) - f_extension(p, x - h, y, tol)) / (2 * h);
        if (d == 0 || !std::isfinite(d)) return false;
        const double step = f / d;
        x -= step;
        if (std::abs(step) > 0.1) return false;
        if (std::abs(step) < 1e-13 * std::max(1.0, std::abs(x))) return true;
    }
    return false;
}

}  // namespace

ArcPolyline trace_arc(const Potential& p, int n, const TraceOptions& opt) {
    const Symmetry sym = classify(p);
    if (sym == Symmetry::General) throw Error("trace_arc needs a real- or imaginary-type potential");
    ArcPolyline arc;
    arc.n = n;
    if (p.h1_norm() > 2) arc.warnings.push_back("potential norm above 2, arc results only hold near 0");

    const double x0 = real_critical_point(p, n, opt.tol);
    arc.crossing = x0;
    const Rectangle R = rectangle(n);

    std::vector<cplx> upper{cplx(x0, 0)};
    std::vector<double> dupper{discriminant(p, x0, opt.tol).real()};

    const double dy0 = R.half_height / 64;
    double dy = dy0, y = 0, x = x0, xprev = x0, yprev = 0;
    for (int step = 0; step < opt.max_steps; ++step) {
        if (p.is_zero()) break;  // zero set is the axis cross, arc degenerates to the crossing
        const double yn = y + dy;
        // linear predictor from the last two samples
        double xn = x + (y > 0 ? (x - xprev) / (y - yprev) * dy : 0.0);
        if (!correct(p, xn, yn, opt.tol)) {
            dy /= 2;
            if (dy < dy0 * 1e-4) throw StepFailure("arc corrector failed at y = " + std::to_string(yn));
            continue;
        }
        xprev = x;
        yprev = y;
        x = xn;
        y = yn;
        const cplx z(x, y);
        const cplx D = discriminant(p, z, opt.tol);
        upper.push_back(z);
        dupper.push_back(D.real());
        if (!R.contains(z)) arc.left_rectangle = true;
        if (opt.stop_past_band && std::abs(D.real()) > 2 + opt.margin) break;
        if (y > opt.y_max) break;
        dy = std::min(dy0, dy * 2);
    }
    if (arc.left_rectangle) arc.warnings.push_back("arc leaves the rectangle R_n");

    for (std::size_t k = upper.size(); k-- > 1;) {
        arc.samples.push_back(std::conj(upper[k]));
        arc.delta.push_back(dupper[k]);
    }
    for (std::size_t k = 0; k < upper.size(); ++k) {
        arc.samples.push_back(upper[k]);
        arc.delta.push_back(dupper[k]);
    }
    return arc;
}

ArcPolyline extract_gamma_star(const ArcPolyline& arc, const Potential& p, cplx lam_minus, cplx lam_plus,
                               double tol) {
    ArcPolyline g;
    g.n = arc.n;
    g.crossing = arc.crossing;
    const double edge = arc.n % 2 == 0 ? 2.0 : -2.0;
    auto check_monotone = [&](const std::vector<double>& d, std::size_t mid) {
        // strictly monotone on each side of the crossing
        for (std::size_t k = mid + 1; k + 1 < d.size(); ++k)
            if ((d[k + 1] - d[k]) * (d[mid + 1] - d[mid]) <= 0)
                throw MonotonicityViolation("Delta not monotone along gamma*");
        for (std::size_t k = mid; k-- > 1;)
            if ((d[k - 1] - d[k]) * (d[mid - 1] - d[mid]) <= 0)
                throw MonotonicityViolation("Delta not monotone along gamma*");
    };

    const double scale = std::max(1.0, std::abs(lam_minus));
    if (std::abs(lam_minus.imag()) <= 1e-8 * scale && std::abs(lam_plus.imag()) <= 1e-8 * scale) {
        // gap on the real line
        const double a = std::min(lam_minus.real(), lam_plus.real()), b = std::max(lam_minus.real(), lam_plus.real());
        if (b - a < 1e-9 * scale) {
            g.samples = {cplx(a, 0)};
            g.delta = {discriminant(p, a).real()};
            return g;
        }
        const double xc = arc.crossing.real();
        if (!(xc > a && xc < b)) throw EndpointMismatch("crossing outside the real gap");
        const int m = 32;
        for (int k = 0; k <= m; ++k) {
            const double x = a + (xc - a) * k / m;
            g.samples.push_back(x);
        }
        for (int k = 1; k <= m; ++k) g.samples.push_back(xc + (b - xc) * k / m);
        for (auto z : g.samples) g.delta.push_back(discriminant(p, z).real());
        check_monotone(g.delta, m);
        return g;
    }

    // upper half of the traced arc, starting at the crossing
    std::vector<cplx> up;
    std::vector<double> du;
    for (std::size_t k = 0; k < arc.samples.size(); ++k)
        if (arc.samples[k].imag() >= 0) {
            up.push_back(arc.samples[k]);
            du.push_back(arc.delta[k]);
        }
    std::size_t hit = 0;
    for (std::size_t k = 1; k < up.size(); ++k)
        if ((du[k] - edge) * (du[0] - edge) <= 0) {
            hit = k;
            break;
        }
    if (hit == 0) throw EndpointMismatch("traced arc never reaches |Delta| = 2");

    // bisection in y between samples hit-1 and hit, x from the corrector
    double ylo = up[hit - 1].imag(), yhi = up[hit].imag(), xlo = up[hit - 1].real();
    double glo = du[hit - 1] - edge;
    double x = xlo;
    for (int it = 0; it < 80 && yhi - ylo > 1e-14; ++it) {
        const double ym = 0.5 * (ylo + yhi);
        double xm = x;
        if (!correct(p, xm, ym, 1e-12)) throw StepFailure("corrector failed while trimming gamma*");
        const double gm = discriminant(p, cplx(xm, ym)).real() - edge;
        if (gm * glo > 0) {
            ylo = ym;
            glo = gm;
        } else {
            yhi = ym;
        }
        x = xm;
    }
    const cplx end(x, 0.5 * (ylo + yhi));
    const cplx want = lam_plus.imag() > 0 ? lam_plus : lam_minus;
    if (std::abs(end - want) > 10 * tol)
        throw EndpointMismatch("gamma* endpoint differs from the periodic eigenvalue by " +
                               std::to_string(std::abs(end - want)));

    std::vector<cplx> half(up.begin(), up.begin() + hit);
    std::vector<double> dh(du.begin(), du.begin() + hit);
    half.push_back(end);
    dh.push_back(edge);
    for (std::size_t k = half.size(); k-- > 1;) {
        g.samples.push_back(std::conj(half[k]));
        g.delta.push_back(dh[k]);
    }
    for (std::size_t k = 0; k < half.size(); ++k) {
        g.samples.push_back(half[k]);
        g.delta.push_back(dh[k]);
    }
    check_monotone(g.delta, half.size() - 1);
    return g;
}

}  // namespace zst
