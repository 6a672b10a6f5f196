#include "zst/fundsol.hpp"

#include <algorithm>
#include <cmath>

#include <boost/numeric/odeint.hpp>

#include "zst/errors.hpp"
#include "zst/quadrature.hpp"

namespace odeint = boost::numeric::odeint;

namespace zst {

const char* to_string(Method m) {
    switch (m) {
        case Method::PicardSeries: return "picard";
        case Method::OdeIntegration: return "ode";
        case Method::ClosedForm: return "closed_form";
        default: return "auto";
    }
}

Mat2 coeff_R(cplx lam) {
    const cplx a = -2.0 * I1 * lam * lam;
    Mat2 r;
    r << a, 0, 0, -a;
    return r;
}

Mat2 coeff_V(const Quad& q, cplx lam) {
    Mat2 v;
    v << -I1 * q[0] * q[1], 2.0 * lam * q[0] + I1 * q[2],
         2.0 * lam * q[1] - I1 * q[3], I1 * q[0] * q[1];
    return v;
}

Mat2 coeff_V0(const Quad& q) { return coeff_V(q, 0.0); }

Mat2 coeff_V1(const Quad& q) {
    Mat2 v;
    v << 0, 2.0 * q[0], 2.0 * q[1], 0;
    return v;
}

Mat2 coeff_N(const Quad& q, cplx lam) {
    Mat2 n;
    n << -4.0 * I1 * lam, 2.0 * q[0], 2.0 * q[1], 4.0 * I1 * lam;
    return n;
}

Mat2 free_solution(cplx lam, double t) {
    const cplx a = -2.0 * I1 * lam * lam * t;
    Mat2 e;
    e << std::exp(a), 0, 0, std::exp(-a);
    return e;
}

namespace {

PotentialFn as_fn(const Potential& p) {
    if (p.is_zero()) return [](double) { return Quad{}; };
    return [&p](double t) { return p(t); };
}

template <int NM>
using State = std::array<double, 8 * NM>;

template <int NM>
void unpack(const State<NM>& x, Mat2* m) {
    for (int k = 0; k < NM; ++k)
        for (int e = 0; e < 4; ++e) m[k](e / 2, e % 2) = cplx(x[8 * k + 2 * e], x[8 * k + 2 * e + 1]);
}

template <int NM>
void pack(const Mat2* m, State<NM>& x) {
    for (int k = 0; k < NM; ++k)
        for (int e = 0; e < 4; ++e) {
            x[8 * k + 2 * e] = m[k](e / 2, e % 2).real();
            x[8 * k + 2 * e + 1] = m[k](e / 2, e % 2).imag();
        }
}

template <int NM>
struct JetSystem {
    const PotentialFn& psi;
    cplx lam;
    long* calls;

    void operator()(const State<NM>& x, State<NM>& dx, double t) const {
        ++*calls;
        const Quad q = psi(t);
        const Mat2 A = coeff_R(lam) + coeff_V(q, lam);
        Mat2 m[NM], d[NM];
        unpack<NM>(x, m);
        d[0] = A * m[0];
        if constexpr (NM > 1) {
            const Mat2 N = coeff_N(q, lam);
            d[1] = A * m[1] + N * m[0];
            if constexpr (NM > 2) {
                Mat2 n2;
                n2 << -4.0 * I1, 0, 0, 4.0 * I1;
                d[2] = A * m[2] + 2.0 * (N * m[1]) + n2 * m[0];
            }
        }
        pack<NM>(d, dx);
    }
};

// integrates the jet system; returns the matrices at each requested time
template <int NM>
std::vector<std::array<Mat2, NM>> integrate_jet(const PotentialFn& psi, cplx lam, std::vector<double> times,
                                                double tol, long* calls) {
    bool prepended = false;
    if (times.empty() || times.front() != 0.0) {
        times.insert(times.begin(), 0.0);
        prepended = true;
    }
    std::array<Mat2, NM> init;
    init.fill(Mat2::Zero());
    init[0] = Mat2::Identity();
    State<NM> x;
    pack<NM>(init.data(), x);

    std::vector<std::array<Mat2, NM>> out;
    out.reserve(times.size());
    auto obs = [&](const State<NM>& s, double) {
        std::array<Mat2, NM> m;
        unpack<NM>(s, m.data());
        out.push_back(m);
    };
    auto stepper = odeint::make_controlled<odeint::runge_kutta_fehlberg78<State<NM>>>(tol, tol);
    const double dt0 = std::min(0.05, 0.5 / (1.0 + 4.0 * std::norm(lam)));
    JetSystem<NM> sys{psi, lam, calls};
    try {
        odeint::integrate_times(stepper, sys, x, times.begin(), times.end(), dt0, obs,
                                odeint::max_step_checker(200000));
    } catch (const std::exception& e) {
        throw NonConvergence(std::string("ODE step control failed: ") + e.what());
    }
    if (prepended) out.erase(out.begin());
    return out;
}

TransferMatrix ode_solution(const PotentialFn& psi, cplx lam, double t, double tol) {
    long calls = 0;
    auto r = integrate_jet<1>(psi, lam, {0.0, t}, tol, &calls);
    TransferMatrix tm;
    tm.M = r.back()[0];
    tm.t = t;
    tm.lambda = lam;
    tm.method = Method::OdeIntegration;
    tm.residual = std::abs(det(tm.M) - 1.0);
    tm.work = static_cast<int>(calls);
    return tm;
}

// Picard series M = sum M_n, M_0 = E, M_{n+1}(t) = E(t) int_0^t E(-s) V M_n ds,
// on Chebyshev panels.  Returns M(t) and number of terms.
std::pair<Mat2, int> picard_on_grid(const Potential& p, cplx lam, double t, int panels, double tol) {
    const ChebPanel& cp = cheb_panel16();
    const int q = static_cast<int>(cp.x.size());
    const double h = t / panels;
    const int nn = panels * q;
    std::vector<Mat2> V(nn), Mn(nn), sum(nn);
    std::vector<cplx> e(nn);  // E(s) = diag(e, 1/e)
    double chat = 0;  // int_0^t |V|_F, bounds the operator norm
    for (int a = 0; a < panels; ++a)
        for (int j = 0; j < q; ++j) {
            const int k = a * q + j;
            const double s = a * h + 0.5 * h * (cp.x[j] + 1);
            V[k] = coeff_V(p(s), lam);
            e[k] = std::exp(-2.0 * I1 * lam * lam * s);
            Mn[k] = Mat2::Zero();
            Mn[k](0, 0) = e[k];
            Mn[k](1, 1) = 1.0 / e[k];
            sum[k] = Mn[k];
            chat += 0.5 * h * cp.S(q - 1, j) * V[k].norm();
        }

    // tail of the series after n terms, relative to e^{2|Im lam^2| t}:
    // |M_n| <= e^{2|Im lam^2|t} chat^n / n!
    auto tail = [&](int n) {
        double term = 1;
        for (int k = 1; k <= n + 1; ++k) term *= chat / k;
        const double ratio = chat / (n + 2);
        return ratio < 1 ? term / (1 - ratio) : std::numeric_limits<double>::infinity();
    };

    std::vector<Mat2> G(nn);
    int n = 0;
    const int nmax = 4000;
    while (tail(n) >= tol) {
        if (++n > nmax) throw NonConvergence("Picard series: term budget exhausted");
        for (int k = 0; k < nn; ++k) {
            const cplx ei = 1.0 / e[k];
            Mat2 vm = V[k] * Mn[k];
            vm.row(0) *= ei;
            vm.row(1) *= e[k];
            G[k] = vm;
        }
        Mat2 carry = Mat2::Zero();
        for (int a = 0; a < panels; ++a) {
            Mat2 last;
            for (int j = 0; j < q; ++j) {
                Mat2 acc = carry;
                for (int l = 0; l < q; ++l) acc += (0.5 * h * cp.S(j, l)) * G[a * q + l];
                const int k = a * q + j;
                last = acc;
                Mat2 m = acc;
                m.row(0) *= e[k];
                m.row(1) /= e[k];
                Mn[k] = m;
                sum[k] += m;
            }
            carry = last;
        }
    }
    return {sum.back(), n};
}

TransferMatrix picard_solution(const Potential& p, cplx lam, double t, double tol) {
    TransferMatrix tm;
    tm.t = t;
    tm.lambda = lam;
    tm.method = Method::PicardSeries;
    if (t == 0) {
        tm.M = Mat2::Identity();
        return tm;
    }
    const double vmax = 1.0 + 2.0 * std::abs(lam) * p.max_coeff() * (2 * p.order() + 1);
    const double band = 4.0 * std::norm(lam) + 2 * pi * p.order() + vmax;
    int panels = std::max(2, static_cast<int>(std::ceil(t * band / 3.0)));
    auto [prev, terms] = picard_on_grid(p, lam, t, panels, tol);
    for (int it = 0; it < 8; ++it) {
        panels *= 2;
        auto [cur, n] = picard_on_grid(p, lam, t, panels, tol);
        const double scale = std::max(1.0, max_abs(cur));
        const double diff = max_abs(cur - prev) / scale;
        prev = cur;
        terms = n;
        if (diff <= tol) {
            tm.M = cur;
            tm.work = terms;
            tm.residual = std::abs(det(cur) - 1.0);
            return tm;
        }
    }
    throw NonConvergence("Picard series: grid refinement did not meet tolerance");
}

}  // namespace

TransferMatrix fundamental_solution(const Potential& p, cplx lam, double t, Method m, double tol) {
    if (m == Method::Auto) m = std::abs(lam) > 6 ? Method::OdeIntegration : Method::PicardSeries;
    if (m == Method::PicardSeries) return picard_solution(p, lam, t, tol);
    if (m == Method::ClosedForm) throw Error("closed form needs single-exponential parameters");
    return ode_solution(as_fn(p), lam, t, tol);
}

TransferMatrix fundamental_solution(const PotentialFn& p, cplx lam, double t, double tol) {
    return ode_solution(p, lam, t, tol);
}

TransferMatrix monodromy(const Potential& p, cplx lam, Method m, double tol) {
    return fundamental_solution(p, lam, 1.0, m, tol);
}

std::vector<Mat2> trajectory(const Potential& p, cplx lam, const std::vector<double>& times, double tol) {
    long calls = 0;
    auto r = integrate_jet<1>(as_fn(p), lam, times, tol, &calls);
    std::vector<Mat2> out;
    out.reserve(r.size());
    for (auto& a : r) out.push_back(a[0]);
    return out;
}

Jet fundamental_jet(const PotentialFn& p, cplx lam, double t, int order, double tol) {
    long calls = 0;
    Jet j;
    j.order = order;
    if (order <= 0) {
        j.M = integrate_jet<1>(p, lam, {0.0, t}, tol, &calls).back()[0];
    } else if (order == 1) {
        auto r = integrate_jet<2>(p, lam, {0.0, t}, tol, &calls).back();
        j.M = r[0];
        j.dM = r[1];
    } else {
        auto r = integrate_jet<3>(p, lam, {0.0, t}, tol, &calls).back();
        j.M = r[0];
        j.dM = r[1];
        j.d2M = r[2];
    }
    return j;
}

Jet monodromy_jet(const Potential& p, cplx lam, int order, double tol) {
    return fundamental_jet(as_fn(p), lam, 1.0, order, tol);
}

namespace {

int panels_for(const Potential& p, cplx lam, double t) {
    const double band = 4.0 * std::norm(lam) + 2 * pi * p.order() + 1;
    return std::max(2, static_cast<int>(std::ceil(t * band / 4.0)));
}

}  // namespace

Mat2 lambda_derivative(const Potential& p, cplx lam, double t, double tol) {
    if (t == 0) return Mat2::Zero();
    int panels = panels_for(p, lam, t);
    Mat2 prev;
    for (int it = 0; it < 8; ++it, panels *= 2) {
        const GaussRule g = composite_gauss(0, t, panels);
        std::vector<double> times = g.x;
        times.push_back(t);
        const auto M = trajectory(p, lam, times, tol);
        Mat2 acc = Mat2::Zero();
        for (std::size_t k = 0; k < g.x.size(); ++k)
            acc += g.w[k] * (unimodular_inverse(M[k]) * coeff_N(p(g.x[k]), lam) * M[k]);
        const Mat2 cur = M.back() * acc;
        if (it > 0 && max_abs(cur - prev) <= 10 * tol * std::max(1.0, max_abs(cur))) return cur;
        prev = cur;
    }
    throw NonConvergence("lambda_derivative: quadrature did not settle");
}

Vec2 solve_inhomogeneous(const Potential& p, cplx lam, const std::function<Vec2(double)>& g,
                         const Vec2& v0, double t, double tol) {
    if (t == 0) return v0;
    int panels = panels_for(p, lam, t);
    Vec2 prev;
    for (int it = 0; it < 8; ++it, panels *= 2) {
        const GaussRule r = composite_gauss(0, t, panels);
        std::vector<double> times = r.x;
        times.push_back(t);
        const auto M = trajectory(p, lam, times, tol);
        Vec2 acc = v0;
        for (std::size_t k = 0; k < r.x.size(); ++k) acc += r.w[k] * (unimodular_inverse(M[k]) * g(r.x[k]));
        const Vec2 cur = M.back() * acc;
        if (it > 0 && (cur - prev).cwiseAbs().maxCoeff() <= 10 * tol * std::max(1.0, cur.cwiseAbs().maxCoeff()))
            return cur;
        prev = cur;
    }
    throw NonConvergence("solve_inhomogeneous: quadrature did not settle");
}

}  // namespace zst
