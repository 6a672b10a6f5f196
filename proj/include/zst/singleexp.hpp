#pragma once

#include <string>
#include <vector>

#include "zst/potential.hpp"

namespace zst {

// psi = (alpha e^{i w t}, sigma conj(alpha) e^{-i w t}, c e^{i w t}, sigma conj(c) e^{-i w t})
struct SingleExp {
    int sigma = 1;
    double omega = -2 * pi;
    cplx alpha, c;

    int mode() const;  // omega / 2pi, must be an integer
    Potential potential() const;
};

cplx omega_squared(const SingleExp& p, cplx lam);
cplx omega_branch(const SingleExp& p, cplx lam);
Mat2 closed_form_M(const SingleExp& p, cplx lam, double t);

// parameter sets 1a 1b 3a 3b 3c 3d 5
SingleExp figure_params(const std::string& id);
const std::vector<std::string>& figure_ids();

}  // namespace zst
