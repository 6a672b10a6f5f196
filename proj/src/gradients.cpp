#include "zst/gradients.hpp"

#include "zst/fundsol.hpp"

namespace zst {

std::array<Mat2, 4> coeff_dV(const Quad& psi, cplx lam) {
    std::array<Mat2, 4> d;
    d[0] << -I1 * psi[1], 2.0 * lam, 0.0, I1 * psi[1];
    d[1] << -I1 * psi[0], 0.0, 2.0 * lam, I1 * psi[0];
    d[2] << 0.0, I1, 0.0, 0.0;
    d[3] << 0.0, 0.0, -I1, 0.0;
    return d;
}

std::array<Mat2, 4> gradient_brackets(const Quad& psi, cplx lam, const Mat2& M) {
    const cplx m1 = M(0, 0), m2 = M(0, 1), m3 = M(1, 0), m4 = M(1, 1), g = gamma_of(M);
    const cplx p1 = psi[0], p2 = psi[1];
    std::array<Mat2, 4> B;
    B[0] << -I1 * g * p2 + 2.0 * lam * m3 * m4, -2.0 * I1 * p2 * m2 * m4 + 2.0 * lam * m4 * m4,
        2.0 * I1 * p2 * m1 * m3 - 2.0 * lam * m3 * m3, I1 * g * p2 - 2.0 * lam * m3 * m4;
    B[1] << -I1 * g * p1 - 2.0 * lam * m1 * m2, -2.0 * I1 * p1 * m2 * m4 - 2.0 * lam * m2 * m2,
        2.0 * I1 * p1 * m1 * m3 + 2.0 * lam * m1 * m1, I1 * g * p1 + 2.0 * lam * m1 * m2;
    B[2] << I1 * m3 * m4, I1 * m4 * m4, -I1 * m3 * m3, -I1 * m3 * m4;
    B[3] << I1 * m1 * m2, I1 * m2 * m2, -I1 * m1 * m1, -I1 * m1 * m2;
    return B;
}

std::array<Mat2, 4> gradient_brackets_star(const Quad& psi, cplx lam, const Mat2& M) {
    const Vec2 c1 = M.col(0), c2 = M.col(1);
    const Vec2 s11 = star(c1, c1), s12 = star(c1, c2), s22 = star(c2, c2);
    const Vec2 sp = sigma1() * Vec2(psi[0], psi[1]);
    const Mat2 s3 = sigma3();
    const cplx g = gamma_of(M), m1 = M(0, 0), m2 = M(0, 1), m3 = M(1, 0), m4 = M(1, 1);
    const Vec2 b1 = -I1 * g * sp + 2.0 * lam * s3 * s12;
    const Vec2 b2 = -2.0 * I1 * m2 * m4 * sp + 2.0 * lam * s3 * s22;
    const Vec2 b3 = 2.0 * I1 * m1 * m3 * sp - 2.0 * lam * s3 * s11;
    const Vec2 b4 = I1 * g * sp - 2.0 * lam * s3 * s12;
    // i d^{3,4} M = M [[-s12, -s22], [s11, s12]]
    const Vec2 c1_ = -s12 / I1, c2_ = -s22 / I1, c3_ = s11 / I1, c4_ = s12 / I1;
    std::array<Mat2, 4> B;
    for (int j = 0; j < 2; ++j) {
        B[j] << b1(j), b2(j), b3(j), b4(j);
        B[j + 2] << c1_(j), c2_(j), c3_(j), c4_(j);
    }
    return B;
}

cplx GradientField::pair(const Potential& h, const GaussRule& rule) const {
    cplx acc = 0;
    for (std::size_t k = 0; k < s.size(); ++k) {
        const Quad hv = h(s[k]);
        cplx v = 0;
        for (int j = 0; j < 4; ++j) v += d[j][k] * hv[j];
        acc += rule.w[k] * v;
    }
    return acc;
}

std::array<std::vector<Mat2>, 4> grad_M(const Potential& p, cplx lam, double t, const std::vector<double>& s_grid,
                                        double tol) {
    std::vector<double> times = s_grid;
    times.push_back(t);
    const std::vector<Mat2> traj = trajectory(p, lam, times, tol);
    const Mat2& Mt = traj.back();
    std::array<std::vector<Mat2>, 4> out;
    for (std::size_t k = 0; k < s_grid.size(); ++k) {
        const auto B = gradient_brackets(p(s_grid[k]), lam, traj[k]);
        for (int j = 0; j < 4; ++j) out[j].push_back(Mt * B[j]);
    }
    return out;
}

namespace {

template <class F>
GradientField reduce(const Potential& p, cplx lam, const std::vector<double>& s_grid, double tol, F f) {
    const auto dM = grad_M(p, lam, 1.0, s_grid, tol);
    GradientField g;
    g.s = s_grid;
    for (int j = 0; j < 4; ++j)
        for (const Mat2& m : dM[j]) g.d[j].push_back(f(m));
    return g;
}

}  // namespace

GradientField grad_discriminant(const Potential& p, cplx lam, const std::vector<double>& s_grid, double tol) {
    return reduce(p, lam, s_grid, tol, [](const Mat2& m) { return m.trace(); });
}

GradientField grad_antidiscriminant(const Potential& p, cplx lam, const std::vector<double>& s_grid, double tol) {
    return reduce(p, lam, s_grid, tol, [](const Mat2& m) { return m(0, 1) + m(1, 0); });
}

namespace {

// grad Delta / grad delta written with monodromy entries w_i and star products
GradientField explicit_form(const Potential& p, cplx lam, const std::vector<double>& s_grid, double tol,
                            bool anti) {
    std::vector<double> times = s_grid;
    times.push_back(1.0);
    const std::vector<Mat2> traj = trajectory(p, lam, times, tol);
    const Mat2& W = traj.back();
    const cplx w1 = W(0, 0), w2 = W(0, 1), w3 = W(1, 0), w4 = W(1, 1);
    GradientField g;
    g.s = s_grid;
    const Mat2 s3 = sigma3();
    for (std::size_t k = 0; k < s_grid.size(); ++k) {
        const Mat2& M = traj[k];
        const Quad psi = p(s_grid[k]);
        const Vec2 c1 = M.col(0), c2 = M.col(1);
        const Vec2 s11 = star(c1, c1), s12 = star(c1, c2), s22 = star(c2, c2);
        const Vec2 sp = sigma1() * Vec2(psi[0], psi[1]);
        const cplx gm = gamma_of(M);
        const Vec2 A = 2.0 * I1 * M(0, 0) * M(1, 0) * sp - 2.0 * lam * s3 * s11;
        const Vec2 B = 2.0 * I1 * M(0, 1) * M(1, 1) * sp - 2.0 * lam * s3 * s22;
        const Vec2 C = I1 * gm * sp - 2.0 * lam * s3 * s12;
        Vec2 d12, id34;
        if (!anti) {
            d12 = w2 * A - w3 * B + (w4 - w1) * C;
            id34 = w2 * s11 - w3 * s22 + (w4 - w1) * s12;
        } else {
            d12 = w4 * A + (w2 - w3) * C - w1 * B;
            id34 = w4 * s11 + (w2 - w3) * s12 - w1 * s22;
        }
        g.d[0].push_back(d12(0));
        g.d[1].push_back(d12(1));
        g.d[2].push_back(id34(0) / I1);
        g.d[3].push_back(id34(1) / I1);
    }
    return g;
}

}  // namespace

GradientField grad_discriminant_explicit(const Potential& p, cplx lam, const std::vector<double>& s_grid,
                                         double tol) {
    return explicit_form(p, lam, s_grid, tol, false);
}

GradientField grad_antidiscriminant_explicit(const Potential& p, cplx lam, const std::vector<double>& s_grid,
                                             double tol) {
    return explicit_form(p, lam, s_grid, tol, true);
}

}  // namespace zst
