#include "zst/singleexp.hpp"

#include <cmath>

#include "zst/errors.hpp"

namespace zst {

int SingleExp::mode() const {
    const double m = omega / (2 * pi);
    const double r = std::round(m);
    if (std::abs(m - r) > 1e-12) throw Error("single exponential needs omega in 2 pi Z");
    return static_cast<int>(r);
}

Potential SingleExp::potential() const {
    const int m = mode();
    const int K = std::abs(m);
    Potential p;
    p.psi[0] = Fourier::mode(m, alpha, K);
    p.psi[1] = Fourier::mode(-m, double(sigma) * std::conj(alpha), K);
    p.psi[2] = Fourier::mode(m, c, K);
    p.psi[3] = Fourier::mode(-m, double(sigma) * std::conj(c), K);
    return p;
}

cplx omega_squared(const SingleExp& p, cplx lam) {
    const double s = p.sigma, a2 = std::norm(p.alpha);
    const double im = std::imag(std::conj(p.alpha) * p.c);
    const cplx l2 = lam * lam;
    const double k = p.omega / 2 + s * a2;
    return 4.0 * l2 * l2 + 2.0 * p.omega * l2 + 4.0 * s * im * lam + k * k - s * std::norm(p.c);
}

cplx omega_branch(const SingleExp& p, cplx lam) {
    auto pick = [&](cplx l, cplx ref) {
        const cplx r = std::sqrt(omega_squared(p, l));
        return std::abs(r - ref) <= std::abs(-r - ref) ? r : -r;
    };
    const double R = 10.0;
    if (std::abs(lam) >= R) return pick(lam, 2.0 * lam * lam + p.omega / 2);
    if (lam == cplx{}) lam = cplx(1e-300, 0);
    // continue inward along the ray from R lam/|lam|
    const cplx dir = lam / std::abs(lam);
    double r = R;
    cplx cur = pick(R * dir, 2.0 * R * R * dir * dir + p.omega / 2);
    const double target = std::abs(lam);
    double h = 0.05;
    while (r > target) {
        const double rn = std::max(target, r - h);
        const cplx sq = std::sqrt(omega_squared(p, rn * dir));
        const double d1 = std::abs(sq - cur), d2 = std::abs(-sq - cur);
        // ambiguous when both roots are about equally close
        if (std::abs(d1 - d2) < 0.25 * std::max(d1, d2) && std::abs(sq) > 1e-12) {
            h /= 2;
            if (h < 1e-6) throw BranchTrackingFailed("omega branch ambiguous near |lambda| = " + std::to_string(rn));
            continue;
        }
        cur = d1 <= d2 ? sq : -sq;
        r = rn;
        h = std::min(0.05, h * 2);
    }
    return cur;
}

Mat2 closed_form_M(const SingleExp& p, cplx lam, double t) {
    const cplx W = std::sqrt(omega_squared(p, lam));  // M is even in Omega
    const cplx wt = W * t;
    cplx S;  // sin(W t)/W
    if (std::abs(wt) < 1e-4) {
        const cplx w2 = wt * wt;
        S = t * (1.0 - w2 / 6.0 + w2 * w2 / 120.0);
    } else {
        S = std::sin(wt) / W;
    }
    const cplx C = std::cos(wt);
    const double s = p.sigma;
    const cplx a = (4.0 * lam * lam + 2.0 * s * std::norm(p.alpha) + p.omega) / (2.0 * I1);
    Mat2 U;
    U << C + a * S, (2.0 * p.alpha * lam + I1 * p.c) * S,
         s * (2.0 * std::conj(p.alpha) * lam - I1 * std::conj(p.c)) * S, C - a * S;
    const cplx ph = std::exp(I1 * p.omega * t / 2.0);
    U.row(0) *= ph;
    U.row(1) /= ph;
    return U;
}

SingleExp figure_params(const std::string& id) {
    SingleExp p;
    p.omega = -2 * pi;
    auto with_beta = [&](int sigma, double a) {
        p.sigma = sigma;
        p.alpha = a;
        const double beta = std::sqrt(-2.0 * sigma * a * a - p.omega);
        p.c = I1 * a * beta;
    };
    if (id == "1a" || id == "5") {
        p.sigma = 1;
        p.alpha = cplx(6.0 / 15.0, 11.0 / 4.0);
        p.c = 0.1;
    } else if (id == "1b" || id == "3d") {
        with_beta(-1, 0.5);
    } else if (id == "3a") {
        with_beta(1, 1.0 / 12.0);
    } else if (id == "3b") {
        with_beta(-1, 1.0 / 12.0);
    } else if (id == "3c") {
        with_beta(1, 0.5);
    } else {
        throw Error("unknown figure id '" + id + "'");
    }
    return p;
}

const std::vector<std::string>& figure_ids() {
    static const std::vector<std::string> ids{"1a", "1b", "3a", "3b", "3c", "3d", "5"};
    return ids;
}

}  // namespace zst
