#pragma once

#include <functional>
#include <random>
#include <string>

#include "zst/fourier.hpp"

namespace zst {

enum class Symmetry { RealType, ImaginaryType, General };
std::string to_string(Symmetry s);

struct Potential {
    std::array<Fourier, 4> psi;

    static Potential zero() { return {}; }
    // random smooth potential with modes |k| <= K, H1 norm equal to `norm`
    static Potential random(int K, double norm, std::mt19937_64& rng);

    int order() const;
    Quad operator()(double t) const;
    Potential shifted(double s) const;
    double h1_norm() const;
    double max_coeff() const;
    bool is_zero() const { return max_coeff() == 0.0; }

    Potential& operator+=(const Potential& o);
};

Potential operator+(Potential a, const Potential& b);
Potential operator*(cplx a, Potential p);

// arbitrary function of t, ODE path only
using PotentialFn = std::function<Quad(double)>;

Potential star_conjugate(const Potential& p);
Symmetry classify(const Potential& p, double tol = 1e-12);

struct Akns {
    Fourier q0, p0, q1, p1;
};
Akns to_akns(const Potential& p);
Potential from_akns(const Akns& a);

}  // namespace zst
