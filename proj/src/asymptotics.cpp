#include "zst/asymptotics.hpp"

#include <algorithm>
#include <cmath>

#include "zst/errors.hpp"
#include "zst/fundsol.hpp"

namespace zst {

cplx zeta(int i, int n) {
    const double r = std::sqrt(n * pi / 2);
    switch (i) {
        case 1: return r;
        case 2: return -r;
        case 3: return cplx(0, r);
        default: return cplx(0, -r);
    }
}

cplx gamma(const Potential& p, double t) {
    const Fourier f = p.psi[0] * p.psi[3] - p.psi[1] * p.psi[2];
    cplx g = f[0] * t;
    for (int k = -f.order(); k <= f.order(); ++k) {
        if (k == 0) continue;
        const cplx ik(0, 2 * pi * k);
        g += f[k] * (std::exp(ik * t) - 1.0) / ik;
    }
    return g;
}

AsymptoticCoefficients asymptotic_coefficients(const Potential& p, double t) {
    const Quad q = p(t), q0 = p(0);
    const cplx G = gamma(p, t);
    AsymptoticCoefficients a;
    a.Gamma = G;
    a.Z1 << G / 2.0, -0.5 * I1 * q[0], 0.5 * I1 * q[1], -G / 2.0;
    a.Z2od << 0, 0.25 * (q[2] + I1 * q[0] * G), 0.25 * (q[3] + I1 * q[1] * G), 0;
    a.W1 << 0, 0.5 * I1 * q0[0], -0.5 * I1 * q0[1], 0;
    a.W2 << q0[1] * q[0], -I1 * q0[0] * G + q0[2], -I1 * q0[1] * G + q0[3], q0[0] * q[1];
    a.W2 *= -0.25;
    a.W3d << -q0[1] * (q[2] + I1 * q[0] * G) + q0[3] * q[0], 0,
             0, q0[0] * (q[3] + I1 * q[1] * G) - q0[2] * q[1];
    a.W3d *= I1 / 8.0;
    return a;
}

Mat2 approximant(const Potential& p, cplx lam, double t) {
    if (std::abs(lam) < 1e-8) throw DegenerateLambda("approximant needs lambda away from 0");
    const AsymptoticCoefficients a = asymptotic_coefficients(p, t);
    const Mat2 Zp = Mat2::Identity() + a.Z1 / lam + a.Z2od / (lam * lam);
    const Mat2 Wp = a.W1 / lam + a.W2 / (lam * lam) + a.W3d / (lam * lam * lam);
    const cplx e = std::exp(-2.0 * I1 * lam * lam * t);
    Mat2 r = Zp, w = Wp;
    r.col(0) *= e;
    r.col(1) /= e;
    w.col(0) /= e;
    w.col(1) *= e;
    return r + w;
}

DecayReport validate_decay(const Potential& p, const std::vector<cplx>& lambdas,
                           const std::vector<double>& t_grid, double tol) {
    if (lambdas.empty()) throw Error("validate_decay: empty lambda list");
    DecayReport rep;
    for (cplx lam : lambdas) {
        const double il = std::abs(std::imag(lam * lam));
        if (il > 8) throw Error("validate_decay: |Im lambda^2| > 8 is outside the representable range");
        const auto M = trajectory(p, lam, t_grid, tol);
        DecayRow row{lam, 0, 0};
        for (std::size_t k = 0; k < t_grid.size(); ++k) {
            const double d = max_abs(M[k] - free_solution(lam, t_grid[k]));
            row.sup_diff = std::max(row.sup_diff, d);
            row.residual = std::max(row.residual, std::abs(lam) * std::exp(-2 * il * t_grid[k]) * d);
        }
        rep.rows.push_back(row);
    }
    // |lambda| sup|M - E| must not grow with |lambda|; single points are trivially fine
    if (rep.rows.size() >= 2) {
        std::vector<double> x, y;
        for (auto& row : rep.rows) x.push_back(std::abs(row.lambda)), y.push_back(std::max(row.residual, 1e-300));
        rep.bounded = loglog_slope(x, y) <= 0.5;
    }
    return rep;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t k = 0; k < n; ++k) {
        const double a = std::log(x[k]), b = std::log(y[k]);
        sx += a; sy += b; sxx += a * a; sxy += a * b;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace zst
