#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "zst/errors.hpp"
#include "zst/hamiltonian.hpp"

using namespace zst;

namespace {

double sup(const PhasePoint& a) { return a.sup_norm(); }

// densities integrated by Simpson on point values
cplx quad_functional(Functional f, const PhasePoint& x) {
    const Fourier qt = x.q().derivative(), pt = x.p().derivative();
    return oracle::simpson(
        [&](double t) {
            const cplx q = x.q()(t), r = x.r()(t), p = x.p()(t), s = x.s()(t);
            switch (f) {
                case Functional::H0: return oracle::I * (p * r - q * s);
                case Functional::H1: return p * s + oracle::I * qt(t) * r - q * q * r * r;
                default: return qt(t) * s - pt(t) * r;
            }
        },
        0, 1, 400);
}

}  // namespace

TEST_CASE("functionals against quadrature of the densities") {
    std::mt19937_64 rng(41);
    const PhasePoint x = random_phase_point(4, 0.7, rng, false);
    for (Functional f : {Functional::H0, Functional::H1, Functional::H2})
        CHECK(std::abs(functional(f, x) - quad_functional(f, x)) < 1e-10);
}

TEST_CASE("functional gradients against finite differences") {
    std::mt19937_64 rng(42);
    const PhasePoint x = random_phase_point(3, 0.8, rng, false), h = random_phase_point(3, 1.0, rng, false);
    const double e = 1e-5;
    for (Functional f : {Functional::H0, Functional::H1, Functional::H2}) {
        const cplx fd = (functional(f, x + cplx(e) * h) - functional(f, x + cplx(-e) * h)) / (2 * e);
        CHECK(std::abs(pairing(gradient_functional(f, x), h) - fd) < 1e-8 * std::max(1.0, std::abs(fd)));
    }
}

TEST_CASE("first structure is skew") {
    std::mt19937_64 rng(43);
    const PhasePoint u = random_phase_point(3, 1, rng, false), v = random_phase_point(3, 1, rng, false);
    CHECK(std::abs(pairing(apply_D(u), v) + pairing(u, apply_D(v))) < 1e-13);
}

TEST_CASE("both Hamiltonian forms reproduce the x-flow") {
    std::mt19937_64 rng(44);
    for (int k = 0; k < 3; ++k) {
        const PhasePoint x = random_phase_point(4, 0.6, rng, true);
        const PhasePoint want = x_rhs(x);
        CHECK(sup(apply_D(gradient_functional(Functional::H1, x)) - want) < 1e-12);
        for (double a : {0.0, 0.5, 1.0}) CHECK(sup(e_alpha_rhs(x, a) - want) < 1e-10);
    }
}

TEST_CASE("second structure needs zero-mean arguments") {
    std::mt19937_64 rng(45);
    PhasePoint x = random_phase_point(2, 1.0, rng, true);
    x.q()[-1] = 0.4;  // products like q D^{-1}(q r_t) then pick up a mean
    CHECK_THROWS_AS(e_alpha_rhs(x, 0.5), NonzeroMean);
}

TEST_CASE("conservation laws hold identically") {
    std::mt19937_64 rng(46);
    const PhasePoint x = random_phase_point(3, 0.9, rng, false);
    for (Functional f : {Functional::H0, Functional::H1, Functional::H2})
        CHECK(conservation_defect(f, x).max_coeff() < 1e-12);
}

TEST_CASE("plane wave") {
    const int sigma = -1, mode = -1;
    const cplx alpha(0.5, 0.0);
    const double beta = plane_wave_beta(sigma, alpha, mode);
    CHECK(beta == doctest::Approx(std::sqrt(2 * pi + 0.5)));
    // derivative of the exact solution
    const PhasePoint x = plane_wave(sigma, alpha, mode, 0.3), d = x_rhs(x);
    const cplx ib = oracle::I * beta;
    PhasePoint want;
    want.c = {ib * x.q(), -ib * x.r(), ib * x.p(), -ib * x.s()};
    CHECK(sup(d - want) < 1e-12);

    // H0 = -2 sigma beta |alpha|^2, H1 = (beta^2 - 2 pi mode) sigma |alpha|^2 - |alpha|^4
    const double a2 = std::norm(alpha);
    CHECK(std::abs(functional(Functional::H0, x) + 2.0 * sigma * beta * a2) < 1e-12);
    CHECK(std::abs(functional(Functional::H1, x) - ((beta * beta - 2 * pi * mode) * sigma * a2 - a2 * a2)) < 1e-12);
    CHECK_THROWS_AS(plane_wave_beta(1, 3.0, 1), Error);
}

TEST_CASE("x-propagation of a plane wave") {
    const PhasePoint x0 = plane_wave(1, cplx(0.3, 0.2), -1, 0.0);
    const auto out = propagate_x(x0, {0.0, 0.25, 0.5});
    REQUIRE(out.size() == 3);
    for (const auto& smp : out) {
        CHECK(sup(smp.phi - plane_wave(1, cplx(0.3, 0.2), -1, smp.x)) < 1e-8);
        for (Functional f : {Functional::H0, Functional::H1, Functional::H2})
            CHECK(std::abs(functional(f, smp.phi) - functional(f, x0)) < 1e-9);
    }
}

TEST_CASE("perturbed plane wave keeps its invariants") {
    std::mt19937_64 rng(47);
    const PhasePoint x0 = plane_wave(1, 0.4, -1, 0.0) + cplx(1e-3) * random_phase_point(1, 1.0, rng, false);
    const auto out = propagate_x(x0, {0.0, 0.5}, 1e-12);
    for (Functional f : {Functional::H0, Functional::H1, Functional::H2})
        CHECK(std::abs(functional(f, out.back().phi) - functional(f, x0)) < 1e-7);
}

TEST_CASE("x-propagation detects blow-up") {
    std::mt19937_64 rng(48);
    const PhasePoint x0 = random_phase_point(12, 1.0, rng, false);
    CHECK_THROWS_AS(propagate_x(x0, {0.0, 30.0}, 1e-8), BlowupDetected);
}

TEST_CASE("functional names") {
    for (Functional f : {Functional::H0, Functional::H1, Functional::H2}) CHECK(parse_functional(to_string(f)) == f);
    CHECK_THROWS_AS(parse_functional("H9"), ParseError);
}
