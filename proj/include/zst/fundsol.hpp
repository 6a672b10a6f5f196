#pragma once

#include <functional>
#include <vector>

#include "zst/potential.hpp"

namespace zst {

enum class Method { Auto, PicardSeries, OdeIntegration, ClosedForm };
const char* to_string(Method m);

struct TransferMatrix {
    Mat2 M;
    double t = 0;
    cplx lambda;
    Method method = Method::Auto;
    double residual = 0;  // |det M - 1|
    int work = 0;         // Picard terms or ODE steps

    cplx m1() const { return M(0, 0); }
    cplx m2() const { return M(0, 1); }
    cplx m3() const { return M(1, 0); }
    cplx m4() const { return M(1, 1); }
};

// R + V split: R = -2i lam^2 sigma3, V = V0 + lam V1
Mat2 coeff_R(cplx lam);
Mat2 coeff_V(const Quad& psi, cplx lam);
Mat2 coeff_V0(const Quad& psi);
Mat2 coeff_V1(const Quad& psi);
// d(R+V)/d lam
Mat2 coeff_N(const Quad& psi, cplx lam);

Mat2 free_solution(cplx lam, double t);

inline constexpr double default_tol = 1e-12;

TransferMatrix fundamental_solution(const Potential& p, cplx lam, double t,
                                    Method m = Method::Auto, double tol = default_tol);
TransferMatrix fundamental_solution(const PotentialFn& p, cplx lam, double t, double tol = default_tol);
TransferMatrix monodromy(const Potential& p, cplx lam, Method m = Method::Auto, double tol = default_tol);

// M on an ascending list of times (all in [0, 2]), one ODE sweep
std::vector<Mat2> trajectory(const Potential& p, cplx lam, const std::vector<double>& times,
                             double tol = default_tol);

// M and its first `order` lambda-derivatives at time t, from the variational ODE
struct Jet {
    Mat2 M = Mat2::Identity(), dM = Mat2::Zero(), d2M = Mat2::Zero();
    int order = 0;
};
Jet fundamental_jet(const PotentialFn& p, cplx lam, double t, int order, double tol = default_tol);
Jet monodromy_jet(const Potential& p, cplx lam, int order, double tol = default_tol);

// Mdot(t) = M(t) int_0^t M^{-1} N M ds, by quadrature over a stored trajectory
Mat2 lambda_derivative(const Potential& p, cplx lam, double t, double tol = default_tol);

// f(t) = M(t) (v0 + int_0^t M^{-1} g ds)
Vec2 solve_inhomogeneous(const Potential& p, cplx lam, const std::function<Vec2(double)>& g,
                         const Vec2& v0, double t, double tol = default_tol);

}  // namespace zst
