#pragma once

#include <vector>

#include "zst/types.hpp"

namespace zst {

// Trigonometric polynomial sum_{|k|<=K} c_k e^{2 pi i k t} on the unit circle.
class Fourier {
public:
    Fourier() : Fourier(0) {}
    explicit Fourier(int K) : K_(K), c_(2 * K + 1, cplx{}) {}

    static Fourier mode(int k, cplx a, int K);
    static Fourier constant(cplx a) { Fourier f(0); f.c_[0] = a; return f; }

    int order() const { return K_; }
    cplx& operator[](int k) { return c_[k + K_]; }
    cplx operator[](int k) const { return (k < -K_ || k > K_) ? cplx{} : c_[k + K_]; }

    cplx operator()(double t) const;
    cplx mean() const { return (*this)[0]; }

    Fourier derivative() const;
    // zero-mean antiderivative; throws NonzeroMean when |mean| > mean_tol
    Fourier antiderivative(double mean_tol = 1e-10) const;
    // pointwise conjugate: coefficient k -> conj(c_{-k})
    Fourier conj() const;
    Fourier resized(int K) const;
    // shift: f(. + s)
    Fourier shifted(double s) const;

    double max_coeff() const;
    double h1_norm_sq() const;
    double l2_norm_sq() const;

    Fourier& operator+=(const Fourier& o);
    Fourier& operator-=(const Fourier& o);
    Fourier& operator*=(cplx a);

private:
    int K_;
    std::vector<cplx> c_;
};

Fourier operator+(Fourier a, const Fourier& b);
Fourier operator-(Fourier a, const Fourier& b);
Fourier operator-(Fourier a);
Fourier operator*(cplx a, Fourier f);
// exact product, order K1 + K2
Fourier operator*(const Fourier& a, const Fourier& b);
// integral over one period of a*b, exact
cplx integral_product(const Fourier& a, const Fourier& b);

}  // namespace zst
