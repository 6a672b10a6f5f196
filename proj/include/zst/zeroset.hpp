#pragma once

#include <string>
#include <vector>

#include "zst/potential.hpp"

namespace zst {

struct Rectangle {
    double center_x = 0, half_width = 0, half_height = 0;
    bool contains(cplx z) const {
        return std::abs(z.real() - center_x) < half_width && std::abs(z.imag()) < half_height;
    }
};
Rectangle rectangle(int n);

// Delta_2 / y, continued to y = 0 through int_0^1 Re Delta'(x + i s y) ds
double f_extension(const Potential& p, double x, double y, double tol = 1e-12);

// real zero of Re Delta' near sgn(n) sqrt(|n| pi / 2)
double real_critical_point(const Potential& p, int n, double tol = 1e-12);

struct ArcPolyline {
    int n = 0;
    cplx crossing;
    std::vector<cplx> samples;  // bottom to top, mirror image below the axis
    std::vector<double> delta;  // Re Delta at the samples
    bool closed_under_conjugation = true;
    bool left_rectangle = false;
    std::vector<std::string> warnings;
};

struct TraceOptions {
    double tol = 1e-12;
    int max_steps = 4000;
    bool stop_past_band = true;  // stop once |Delta| > 2 + margin
    double margin = 0.05;
    double y_max = 4.0;
};

ArcPolyline trace_arc(const Potential& p, int n, const TraceOptions& opt = {});

// gamma*_n between the periodic eigenvalues lam_minus, lam_plus
ArcPolyline extract_gamma_star(const ArcPolyline& arc, const Potential& p, cplx lam_minus, cplx lam_plus,
                               double tol = 1e-7);

}  // namespace zst
