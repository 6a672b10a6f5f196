#pragma once

#include <vector>

#include <Eigen/Dense>

namespace zst {

// Gauss-Legendre nodes/weights on [-1, 1]
struct GaussRule {
    std::vector<double> x, w;
};
const GaussRule& gauss16();
const GaussRule& gauss8();

// composite Gauss-Legendre on [a, b] with `panels` equal panels
GaussRule composite_gauss(double a, double b, int panels);

// Chebyshev-Lobatto nodes on [-1, 1] (ascending) and the matrix S with
// (S f)_j = int_{-1}^{x_j} p(x) dx, p the interpolant of f
struct ChebPanel {
    std::vector<double> x;
    Eigen::MatrixXd S;
};
const ChebPanel& cheb_panel16();

}  // namespace zst
