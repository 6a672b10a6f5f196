#pragma once

#include <vector>

#include "zst/potential.hpp"

namespace zst {

// zeta^i_n: i=1 sqrt(n pi/2), 2 -sqrt, 3 i sqrt, 4 -i sqrt
cplx zeta(int i, int n);

cplx gamma(const Potential& p, double t);

struct AsymptoticCoefficients {
    Mat2 Z1, Z2od, W1, W2, W3d;
    cplx Gamma;
};
AsymptoticCoefficients asymptotic_coefficients(const Potential& p, double t);

// M_p = Z_p e^{-i theta t sigma3} + W_p e^{i theta t sigma3}, theta = 2 lam^2
Mat2 approximant(const Potential& p, cplx lam, double t);

struct DecayRow {
    cplx lambda;
    double residual;  // sup_t |lam| e^{-2|Im lam^2| t} |M - E|
    double sup_diff;  // sup_t |M - E|
};
struct DecayReport {
    std::vector<DecayRow> rows;
    bool bounded = true;  // log-log slope of residual against |lambda| at most 1/2
};
DecayReport validate_decay(const Potential& p, const std::vector<cplx>& lambdas,
                           const std::vector<double>& t_grid, double tol = 1e-11);

// least-squares slope of log y against log x
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace zst
