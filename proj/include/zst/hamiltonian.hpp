#pragma once

#include <array>
#include <random>
#include <string>
#include <vector>

#include "zst/fourier.hpp"

namespace zst {

// (q, r, p, s) as functions of t; p = q_x, s = r_x on solutions
struct PhasePoint {
    std::array<Fourier, 4> c;

    Fourier& q() { return c[0]; }
    Fourier& r() { return c[1]; }
    Fourier& p() { return c[2]; }
    Fourier& s() { return c[3]; }
    const Fourier& q() const { return c[0]; }
    const Fourier& r() const { return c[1]; }
    const Fourier& p() const { return c[2]; }
    const Fourier& s() const { return c[3]; }

    int order() const;
    PhasePoint truncated(int K) const;
    double max_coeff() const;
    // sup over a uniform t grid
    double sup_norm(int samples = 256) const;
};

PhasePoint operator+(const PhasePoint& a, const PhasePoint& b);
PhasePoint operator-(const PhasePoint& a, const PhasePoint& b);
PhasePoint operator*(cplx a, const PhasePoint& b);
// sum_i int a_i b_i dt
cplx pairing(const PhasePoint& a, const PhasePoint& b);

enum class Functional { H0, H1, H2 };
std::string to_string(Functional f);
Functional parse_functional(const std::string& s);

cplx functional(Functional f, const PhasePoint& phi);
PhasePoint gradient_functional(Functional f, const PhasePoint& phi);

// constant 4x4 operator of the first Hamiltonian structure
PhasePoint apply_D(const PhasePoint& v);

PhasePoint x_rhs(const PhasePoint& phi);
// E_alpha applied to grad H2; throws NonzeroMean if some D_t^{-1} argument has nonzero mean
PhasePoint e_alpha_rhs(const PhasePoint& phi, cplx alpha);

// x-derivative of the conserved density minus t-derivative of its flux, from x_rhs
Fourier conservation_defect(Functional f, const PhasePoint& phi);

// q = alpha e^{i beta x + i omega t}, r = sigma conj(q), at position x
PhasePoint plane_wave(int sigma, cplx alpha, int mode, double x = 0.0);
double plane_wave_beta(int sigma, cplx alpha, int mode);

// q, r on modes 1..K, p, s on modes -K..K without mean; scaled to max coefficient `amp`
PhasePoint random_phase_point(int K, double amp, std::mt19937_64& rng, bool zero_mean_compatible = true);

struct XSample {
    double x;
    PhasePoint phi;
};

// Galerkin truncation at the order of phi0
std::vector<XSample> propagate_x(const PhasePoint& phi0, const std::vector<double>& xs, double tol = 1e-10);

}  // namespace zst
