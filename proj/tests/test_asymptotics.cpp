#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "zst/asymptotics.hpp"
#include "zst/errors.hpp"
#include "zst/fundsol.hpp"
#include "zst/singleexp.hpp"

using namespace zst;

TEST_CASE("free solution") {
    CHECK(oracle::maxabs(free_solution(0.0, 0.7) - Mat2::Identity()) < 1e-15);
    CHECK(oracle::maxabs(free_solution(std::sqrt(pi / 2), 1.0) + Mat2::Identity()) < 1e-14);
    const Mat2 e = free_solution(cplx(1, 1), 0.5);
    CHECK(std::abs(e(0, 0) - std::exp(2.0)) < 1e-13);
    CHECK(std::abs(e(1, 1) - std::exp(-2.0)) < 1e-15);
}

TEST_CASE("Gamma") {
    CHECK(std::abs(gamma(Potential::zero(), 0.7)) == 0.0);
    std::mt19937_64 rng(3);
    const Potential p = Potential::random(3, 1.0, rng);
    CHECK(std::abs(gamma(p, 0.0)) < 1e-15);
    for (double t : {0.3, 1.0}) {
        const cplx ref = oracle::simpson(
            [&](double s) {
                const Quad q = p(s);
                return q[0] * q[3] - q[1] * q[2];
            },
            0, t);
        CHECK(std::abs(gamma(p, t) - ref) < 1e-10);
    }
    // single exponential: integrand sigma (alpha conj(c) - conj(alpha) c) is constant
    for (const char* id : {"1a", "3b", "3c"}) {
        const SingleExp s = figure_params(id);
        const cplx want = double(s.sigma) * (s.alpha * std::conj(s.c) - std::conj(s.alpha) * s.c) * 0.6;
        CHECK(std::abs(gamma(s.potential(), 0.6) - want) < 1e-13);
        CHECK(std::abs(gamma(s.potential(), 1.0).real()) < 1e-13);
    }
    CHECK(std::abs(gamma(figure_params("1a").potential(), 1.0) - cplx(0, 0.55)) < 1e-12);
}

TEST_CASE("approximant") {
    CHECK_THROWS_AS(approximant(Potential::zero(), 1e-9, 0.5), DegenerateLambda);
    for (cplx lam : {cplx(3, 0.2), cplx(-5, 1)})
        CHECK(oracle::maxabs(approximant(Potential::zero(), lam, 0.4) - free_solution(lam, 0.4)) < 1e-13 *
                                                                                                       oracle::scale(lam));

    std::mt19937_64 rng(4);
    const Potential p = Potential::random(2, 1.0, rng);
    const AsymptoticCoefficients a = asymptotic_coefficients(p, 0.37);
    CHECK(std::abs(a.Z1(0, 0) - a.Gamma / 2.0) < 1e-15);
    CHECK(std::abs(a.Z1(1, 1) + a.Gamma / 2.0) < 1e-15);
    CHECK(a.Z2od(0, 0) == cplx(0));
    CHECK(a.Z2od(1, 1) == cplx(0));
    CHECK(a.W3d(0, 1) == cplx(0));
    CHECK(a.W3d(1, 0) == cplx(0));

    // Z_p(0) + W_p(0) = I + O(lam^-2)
    std::vector<double> r, d;
    for (double R : {10.0, 20.0, 40.0}) {
        r.push_back(R);
        d.push_back(oracle::maxabs(approximant(p, cplx(R, 0), 0.0) - Mat2::Identity()));
    }
    CHECK(loglog_slope(r, d) < -1.8);

    // error against the closed form is O(lam^-2) with a stable constant
    const SingleExp s = figure_params("3c");
    auto C = [&](double R) {
        const cplx lam(R, 0.01 * R);
        double worst = 0;
        for (double t : {0.25, 0.5, 1.0})
            worst = std::max(worst, oracle::maxabs(closed_form_M(s, lam, t) - approximant(s.potential(), lam, t)) /
                                        std::exp(2 * std::abs((lam * lam).imag()) * t));
        return worst * R * R;
    };
    const double c20 = C(20), c40 = C(40);
    CHECK(c40 < 2 * c20);
    CHECK(c40 > 0.5 * c20);
}

TEST_CASE("decay along zeta sequences") {
    std::vector<double> t;
    for (int k = 1; k <= 16; ++k) t.push_back(k / 16.0);
    const DecayReport z = validate_decay(Potential::zero(), {zeta(1, 4), zeta(3, 9)}, t);
    for (const auto& row : z.rows) CHECK(row.residual < 1e-9);

    std::mt19937_64 rng(6);
    const Potential p = Potential::random(3, 1.0, rng);
    for (int i : {1, 3}) {
        std::vector<cplx> lams;
        std::vector<double> ns, sup;
        for (int n = 8; n <= 64; n *= 2) lams.push_back(zeta(i, n)), ns.push_back(n);
        const DecayReport rep = validate_decay(p, lams, t);
        CHECK(rep.bounded);
        for (const auto& row : rep.rows) sup.push_back(row.sup_diff);
        CHECK(loglog_slope(ns, sup) <= -0.4);
    }
    CHECK_THROWS(validate_decay(p, {cplx(3, 3)}, t));

    // lambda-derivative stays within O(1) of the free one on the natural scale
    for (int n : {8, 32}) {
        const cplx lam = zeta(1, n);
        const Jet j = monodromy_jet(p, lam, 1);
        Mat2 dE = Mat2::Zero();
        dE(0, 0) = -4.0 * I1 * lam * std::exp(-2.0 * I1 * lam * lam);
        dE(1, 1) = 4.0 * I1 * lam * std::exp(2.0 * I1 * lam * lam);
        CHECK(oracle::maxabs(j.dM - dE) < 10.0);
    }
}
