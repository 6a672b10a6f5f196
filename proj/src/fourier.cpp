#include "zst/fourier.hpp"

#include <algorithm>
#include <cmath>

#include "zst/errors.hpp"

namespace zst {

Fourier Fourier::mode(int k, cplx a, int K) {
    Fourier f(std::max(K, std::abs(k)));
    f[k] = a;
    return f;
}

cplx Fourier::operator()(double t) const {
    if (K_ == 0) return c_[0];
    const cplx z = std::polar(1.0, 2 * pi * t);
    // Horner in z from the top, then divide out z^K via the conjugate power
    cplx acc = c_[2 * K_];
    for (int j = 2 * K_ - 1; j >= 0; --j) acc = acc * z + c_[j];
    cplx zk = 1.0;
    const cplx zc = std::conj(z);
    for (int j = 0; j < K_; ++j) zk *= zc;
    return acc * zk;
}

Fourier Fourier::derivative() const {
    Fourier d(K_);
    for (int k = -K_; k <= K_; ++k) d[k] = cplx(0, 2 * pi * k) * (*this)[k];
    return d;
}

Fourier Fourier::antiderivative(double mean_tol) const {
    if (std::abs(mean()) > mean_tol)
        throw NonzeroMean("antiderivative of a function with mean " + std::to_string(std::abs(mean())));
    Fourier d(K_);
    for (int k = -K_; k <= K_; ++k)
        if (k != 0) d[k] = (*this)[k] / cplx(0, 2 * pi * k);
    return d;
}

Fourier Fourier::conj() const {
    Fourier d(K_);
    for (int k = -K_; k <= K_; ++k) d[k] = std::conj((*this)[-k]);
    return d;
}

Fourier Fourier::resized(int K) const {
    Fourier d(K);
    for (int k = -K; k <= K; ++k) d[k] = (*this)[k];
    return d;
}

Fourier Fourier::shifted(double s) const {
    Fourier d(K_);
    for (int k = -K_; k <= K_; ++k) d[k] = (*this)[k] * std::polar(1.0, 2 * pi * k * s);
    return d;
}

double Fourier::max_coeff() const {
    double m = 0;
    for (auto& a : c_) m = std::max(m, std::abs(a));
    return m;
}

double Fourier::h1_norm_sq() const {
    double s = 0;
    for (int k = -K_; k <= K_; ++k) s += (1 + 4 * pi * pi * k * k) * std::norm((*this)[k]);
    return s;
}

double Fourier::l2_norm_sq() const {
    double s = 0;
    for (auto& a : c_) s += std::norm(a);
    return s;
}

Fourier& Fourier::operator+=(const Fourier& o) {
    if (o.K_ > K_) *this = resized(o.K_);
    for (int k = -o.K_; k <= o.K_; ++k) (*this)[k] += o[k];
    return *this;
}

Fourier& Fourier::operator-=(const Fourier& o) {
    if (o.K_ > K_) *this = resized(o.K_);
    for (int k = -o.K_; k <= o.K_; ++k) (*this)[k] -= o[k];
    return *this;
}

Fourier& Fourier::operator*=(cplx a) {
    for (auto& x : c_) x *= a;
    return *this;
}

Fourier operator+(Fourier a, const Fourier& b) { return a += b; }
Fourier operator-(Fourier a, const Fourier& b) { return a -= b; }
Fourier operator-(Fourier a) { return a *= -1.0; }
Fourier operator*(cplx a, Fourier f) { return f *= a; }

Fourier operator*(const Fourier& a, const Fourier& b) {
    const int Ka = a.order(), Kb = b.order();
    Fourier p(Ka + Kb);
    for (int i = -Ka; i <= Ka; ++i) {
        const cplx ai = a[i];
        if (ai == cplx{}) continue;
        for (int j = -Kb; j <= Kb; ++j) p[i + j] += ai * b[j];
    }
    return p;
}

cplx integral_product(const Fourier& a, const Fourier& b) {
    const int K = std::min(a.order(), b.order());
    cplx s{};
    for (int k = -K; k <= K; ++k) s += a[k] * b[-k];
    return s;
}

}  // namespace zst
