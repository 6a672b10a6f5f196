#include "zst/hamiltonian.hpp"

#include <algorithm>
#include <boost/numeric/odeint.hpp>
#include <cmath>

#include "zst/errors.hpp"

namespace zst {

int PhasePoint::order() const {
    int K = 0;
    for (const auto& f : c) K = std::max(K, f.order());
    return K;
}

PhasePoint PhasePoint::truncated(int K) const {
    PhasePoint o;
    for (int i = 0; i < 4; ++i) o.c[i] = c[i].resized(K);
    return o;
}

double PhasePoint::max_coeff() const {
    double m = 0;
    for (const auto& f : c) m = std::max(m, f.max_coeff());
    return m;
}

double PhasePoint::sup_norm(int samples) const {
    double m = 0;
    for (int k = 0; k < samples; ++k)
        for (const auto& f : c) m = std::max(m, std::abs(f(double(k) / samples)));
    return m;
}

PhasePoint operator+(const PhasePoint& a, const PhasePoint& b) {
    PhasePoint o;
    for (int i = 0; i < 4; ++i) o.c[i] = a.c[i] + b.c[i];
    return o;
}

PhasePoint operator-(const PhasePoint& a, const PhasePoint& b) {
    PhasePoint o;
    for (int i = 0; i < 4; ++i) o.c[i] = a.c[i] - b.c[i];
    return o;
}

PhasePoint operator*(cplx a, const PhasePoint& b) {
    PhasePoint o;
    for (int i = 0; i < 4; ++i) o.c[i] = a * b.c[i];
    return o;
}

cplx pairing(const PhasePoint& a, const PhasePoint& b) {
    cplx s = 0;
    for (int i = 0; i < 4; ++i) s += integral_product(a.c[i], b.c[i]);
    return s;
}

std::string to_string(Functional f) {
    switch (f) {
        case Functional::H0: return "H0t";
        case Functional::H1: return "H1t";
        case Functional::H2: return "H2t";
    }
    return "?";
}

Functional parse_functional(const std::string& s) {
    if (s == "H0t" || s == "H0") return Functional::H0;
    if (s == "H1t" || s == "H1") return Functional::H1;
    if (s == "H2t" || s == "H2") return Functional::H2;
    throw ParseError("unknown functional '" + s + "'");
}

cplx functional(Functional f, const PhasePoint& x) {
    const Fourier &q = x.q(), &r = x.r(), &p = x.p(), &s = x.s();
    switch (f) {
        case Functional::H0: return I1 * (integral_product(p, r) - integral_product(q, s));
        case Functional::H1:
            return integral_product(p, s) + I1 * integral_product(q.derivative(), r) -
                   integral_product(q * q, r * r);
        case Functional::H2: return integral_product(q.derivative(), s) - integral_product(p.derivative(), r);
    }
    return 0;
}

PhasePoint gradient_functional(Functional f, const PhasePoint& x) {
    const Fourier &q = x.q(), &r = x.r(), &p = x.p(), &s = x.s();
    PhasePoint g;
    switch (f) {
        case Functional::H0:
            g.c = {-I1 * s, I1 * p, I1 * r, -I1 * q};
            break;
        case Functional::H1:
            g.c = {-I1 * r.derivative() - cplx(2) * (r * r * q), I1 * q.derivative() - cplx(2) * (q * q * r), s, p};
            break;
        case Functional::H2:
            g.c = {-s.derivative(), -p.derivative(), r.derivative(), q.derivative()};
            break;
    }
    return g;
}

PhasePoint apply_D(const PhasePoint& v) {
    PhasePoint o;
    o.c = {v.c[3], v.c[2], -v.c[1], -v.c[0]};
    return o;
}

PhasePoint x_rhs(const PhasePoint& x) {
    const Fourier &q = x.q(), &r = x.r();
    PhasePoint o;
    o.c = {x.p(), x.s(), -I1 * q.derivative() + cplx(2) * (q * q * r), I1 * r.derivative() + cplx(2) * (r * r * q)};
    return o;
}

PhasePoint e_alpha_rhs(const PhasePoint& x, cplx alpha) {
    const Fourier &q = x.q(), &r = x.r();
    const PhasePoint g = gradient_functional(Functional::H2, x);
    const Fourier &g1 = g.c[0], &g2 = g.c[1], &g3 = g.c[2], &g4 = g.c[3];
    auto Dinv = [](const Fourier& f) { return f.antiderivative(1e-10); };
    // "a D^{-1} b" acting on f means a * D^{-1}(b f)
    auto op = [&](const Fourier& a, const Fourier& b, const Fourier& f) { return a * Dinv(b * f); };
    PhasePoint o;
    o.c[0] = -Dinv(g2);
    o.c[1] = -Dinv(g1);
    o.c[2] = 2.0 * alpha * op(q, q, g3) - I1 * g4 + 4.0 * (1.0 - alpha) * op(r, q, g4) + 2.0 * alpha * op(q, r, g4);
    o.c[3] = I1 * g3 + 4.0 * (1.0 - alpha) * op(q, r, g3) + 2.0 * alpha * op(r, q, g3) + 2.0 * alpha * op(r, r, g4);
    return o;
}

Fourier conservation_defect(Functional f, const PhasePoint& x) {
    const PhasePoint d = x_rhs(x);
    const Fourier &q = x.q(), &r = x.r(), &p = x.p(), &s = x.s();
    const Fourier &qx = d.c[0], &rx = d.c[1], &px = d.c[2], &sx = d.c[3];
    const Fourier qt = q.derivative(), pt = p.derivative();
    switch (f) {
        case Functional::H0:
            // i (pr - qs)_x = (qr)_t
            return I1 * (px * r + p * rx - qx * s - q * sx) - (q * r).derivative();
        case Functional::H1: {
            // (ps + i q_t r - q^2 r^2)_x = i (pr)_t
            const Fourier lhs = px * s + p * sx + I1 * (qx.derivative() * r + qt * rx) -
                                cplx(2) * (q * qx * r * r + q * q * r * rx);
            return lhs - I1 * (p * r).derivative();
        }
        case Functional::H2: {
            // (q_t s - p_t r)_x = (i q_t r - q^2 r^2)_t
            const Fourier lhs = qx.derivative() * s + qt * sx - px.derivative() * r - pt * rx;
            return lhs - (I1 * (qt * r) - q * q * r * r).derivative();
        }
    }
    return {};
}

double plane_wave_beta(int sigma, cplx alpha, int mode) {
    const double omega = 2 * pi * mode;
    const double b2 = -omega - 2.0 * sigma * std::norm(alpha);
    if (b2 < 0) throw Error("plane wave needs -omega - 2 sigma |alpha|^2 >= 0");
    return std::sqrt(b2);
}

PhasePoint plane_wave(int sigma, cplx alpha, int mode, double x) {
    const double beta = plane_wave_beta(sigma, alpha, mode);
    const int K = std::abs(mode);
    const cplx a = alpha * std::exp(I1 * beta * x);
    PhasePoint o;
    o.q() = Fourier::mode(mode, a, K);
    o.r() = Fourier::mode(-mode, double(sigma) * std::conj(a), K);
    o.p() = I1 * beta * o.q();
    o.s() = -I1 * beta * o.r();
    return o;
}

PhasePoint random_phase_point(int K, double amp, std::mt19937_64& rng, bool zero_mean_compatible) {
    std::normal_distribution<double> N;
    PhasePoint o;
    for (int i = 0; i < 4; ++i) {
        o.c[i] = Fourier(K);
        const bool positive_only = zero_mean_compatible && i < 2;
        for (int k = -K; k <= K; ++k) {
            if (positive_only && k < 1) continue;
            if (zero_mean_compatible && k == 0) continue;
            o.c[i][k] = cplx(N(rng), N(rng)) / (1.0 + k * k);
        }
    }
    const double m = o.max_coeff();
    return m > 0 ? (amp / m) * o : o;
}

std::vector<XSample> propagate_x(const PhasePoint& phi0, const std::vector<double>& xs, double tol) {
    namespace ode = boost::numeric::odeint;
    using State = std::vector<double>;
    const int K = phi0.order();
    const int W = 2 * K + 1;
    auto pack = [&](const PhasePoint& f, State& y) {
        y.resize(8 * W);
        for (int i = 0; i < 4; ++i)
            for (int k = -K; k <= K; ++k) {
                const cplx v = f.c[i][k];
                y[2 * (i * W + k + K)] = v.real();
                y[2 * (i * W + k + K) + 1] = v.imag();
            }
    };
    auto unpack = [&](const State& y) {
        PhasePoint f;
        for (int i = 0; i < 4; ++i) {
            f.c[i] = Fourier(K);
            for (int k = -K; k <= K; ++k) f.c[i][k] = cplx(y[2 * (i * W + k + K)], y[2 * (i * W + k + K) + 1]);
        }
        return f;
    };
    auto rhs = [&](const State& y, State& dy, double) {
        const PhasePoint f = unpack(y);
        if (f.max_coeff() > 1e6) throw BlowupDetected("coefficient norm above 1e6 in x-propagation");
        pack(x_rhs(f).truncated(K), dy);
    };
    State y;
    pack(phi0.truncated(K), y);
    std::vector<XSample> out;
    auto obs = [&](const State& s, double x) { out.push_back({x, unpack(s)}); };
    if (xs.empty()) return out;
    try {
        auto stepper = ode::make_controlled<ode::runge_kutta_fehlberg78<State>>(tol, tol);
        ode::integrate_times(stepper, rhs, y, xs.begin(), xs.end(), std::min(1e-3, tol * 1e6), obs,
                             ode::max_step_checker(1000000));
    } catch (const BlowupDetected&) {
        throw;
    } catch (const std::exception& e) {
        throw NonConvergence(std::string("x-propagation failed: ") + e.what());
    }
    return out;
}

}  // namespace zst
