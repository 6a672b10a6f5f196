#include "zst/potential.hpp"

#include <algorithm>
#include <cmath>

namespace zst {

std::string to_string(Symmetry s) {
    switch (s) {
        case Symmetry::RealType: return "real";
        case Symmetry::ImaginaryType: return "imaginary";
        default: return "general";
    }
}

Potential Potential::random(int K, double norm, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    Potential p;
    for (auto& f : p.psi) {
        f = Fourier(K);
        for (int k = -K; k <= K; ++k) f[k] = cplx(g(rng), g(rng)) / (1.0 + k * k);
    }
    const double h = p.h1_norm();
    if (h > 0)
        for (auto& f : p.psi) f *= norm / h;
    return p;
}

int Potential::order() const {
    int K = 0;
    for (auto& f : psi) K = std::max(K, f.order());
    return K;
}

Quad Potential::operator()(double t) const {
    const int K = order();
    Quad out{};
    if (K == 0) {
        for (int j = 0; j < 4; ++j) out[j] = psi[j][0];
        return out;
    }
    // powers of e^{2 pi i t} shared by the four components
    thread_local std::vector<cplx> zp;
    zp.resize(2 * K + 1);
    const cplx z = std::polar(1.0, 2 * pi * t);
    zp[K] = 1.0;
    for (int k = 1; k <= K; ++k) {
        zp[K + k] = zp[K + k - 1] * z;
        zp[K - k] = std::conj(zp[K + k]);
    }
    for (int j = 0; j < 4; ++j) {
        const Fourier& f = psi[j];
        const int Kj = f.order();
        cplx s{};
        for (int k = -Kj; k <= Kj; ++k) s += f[k] * zp[K + k];
        out[j] = s;
    }
    return out;
}

Potential Potential::shifted(double s) const {
    Potential p;
    for (int j = 0; j < 4; ++j) p.psi[j] = psi[j].shifted(s);
    return p;
}

double Potential::h1_norm() const {
    double s = 0;
    for (auto& f : psi) s += f.h1_norm_sq();
    return std::sqrt(s);
}

double Potential::max_coeff() const {
    double m = 0;
    for (auto& f : psi) m = std::max(m, f.max_coeff());
    return m;
}

Potential& Potential::operator+=(const Potential& o) {
    for (int j = 0; j < 4; ++j) psi[j] += o.psi[j];
    return *this;
}

Potential operator+(Potential a, const Potential& b) { return a += b; }

Potential operator*(cplx a, Potential p) {
    for (auto& f : p.psi) f *= a;
    return p;
}

Potential star_conjugate(const Potential& p) {
    Potential s;
    s.psi[0] = p.psi[1].conj();
    s.psi[1] = p.psi[0].conj();
    s.psi[2] = p.psi[3].conj();
    s.psi[3] = p.psi[2].conj();
    return s;
}

Symmetry classify(const Potential& p, double tol) {
    const Potential s = star_conjugate(p);
    double dr = 0, di = 0;
    for (int j = 0; j < 4; ++j) {
        dr = std::max(dr, (s.psi[j] - p.psi[j]).max_coeff());
        di = std::max(di, (s.psi[j] + p.psi[j]).max_coeff());
    }
    if (dr <= tol) return Symmetry::RealType;
    if (di <= tol) return Symmetry::ImaginaryType;
    return Symmetry::General;
}

Akns to_akns(const Potential& p) {
    const cplx h = 0.5, mih = cplx(0, -0.5);
    return {h * (p.psi[0] + p.psi[1]), mih * (p.psi[0] - p.psi[1]),
            h * (p.psi[2] + p.psi[3]), mih * (p.psi[2] - p.psi[3])};
}

Potential from_akns(const Akns& a) {
    Potential p;
    p.psi[0] = a.q0 + I1 * a.p0;
    p.psi[1] = a.q0 - I1 * a.p0;
    p.psi[2] = a.q1 + I1 * a.p1;
    p.psi[3] = a.q1 - I1 * a.p1;
    return p;
}

}  // namespace zst
