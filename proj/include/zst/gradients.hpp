#pragma once

#include <array>
#include <vector>

#include "zst/potential.hpp"
#include "zst/quadrature.hpp"

namespace zst {

// a * b = (a2 b2, a1 b1)
inline Vec2 star(const Vec2& a, const Vec2& b) { return Vec2(a(1) * b(1), a(0) * b(0)); }

// m1 m4 + m2 m3
inline cplx gamma_of(const Mat2& M) { return M(0, 0) * M(1, 1) + M(0, 1) * M(1, 0); }

// dV/d psi^j
std::array<Mat2, 4> coeff_dV(const Quad& psi, cplx lam);

// the four brackets B_j(s) with (d_j M(t))(s) = M(t) B_j(s), in the entrywise form
std::array<Mat2, 4> gradient_brackets(const Quad& psi, cplx lam, const Mat2& Ms);
// same brackets assembled from columns and star products
std::array<Mat2, 4> gradient_brackets_star(const Quad& psi, cplx lam, const Mat2& Ms);

struct GradientField {
    std::vector<double> s;
    std::array<std::vector<cplx>, 4> d;

    // int_0^1 sum_j d_j(s) h^j(s) ds, valid when s are the nodes of `rule`
    cplx pair(const Potential& h, const GaussRule& rule) const;
};

// s_grid ascending in [0, t]
std::array<std::vector<Mat2>, 4> grad_M(const Potential& p, cplx lam, double t, const std::vector<double>& s_grid,
                                        double tol = 1e-12);

GradientField grad_discriminant(const Potential& p, cplx lam, const std::vector<double>& s_grid,
                                double tol = 1e-12);
GradientField grad_antidiscriminant(const Potential& p, cplx lam, const std::vector<double>& s_grid,
                                    double tol = 1e-12);

// explicit monodromy-entry form of grad Delta / grad delta
GradientField grad_discriminant_explicit(const Potential& p, cplx lam, const std::vector<double>& s_grid,
                                         double tol = 1e-12);
GradientField grad_antidiscriminant_explicit(const Potential& p, cplx lam, const std::vector<double>& s_grid,
                                             double tol = 1e-12);

}  // namespace zst
