#include "zst/quadrature.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/quadrature/gauss.hpp>

#include "zst/types.hpp"

namespace zst {

namespace {

template <unsigned N>
GaussRule make_gauss() {
    using Q = boost::math::quadrature::gauss<double, N>;
    const auto& a = Q::abscissa();
    const auto& w = Q::weights();
    GaussRule r;
    // boost stores the non-negative half; N even here so no zero node
    static_assert(N % 2 == 0);
    for (std::size_t i = a.size(); i-- > 0;) { r.x.push_back(-a[i]); r.w.push_back(w[i]); }
    for (std::size_t i = 0; i < a.size(); ++i) { r.x.push_back(a[i]); r.w.push_back(w[i]); }
    return r;
}

ChebPanel make_cheb(int p) {
    ChebPanel c;
    c.x.resize(p);
    for (int j = 0; j < p; ++j) c.x[j] = -std::cos(j * pi / (p - 1));
    Eigen::MatrixXd V(p, p), Q(p, p);
    auto T = [](int k, double x) { return std::cos(k * std::acos(std::clamp(x, -1.0, 1.0))); };
    auto intT = [&](int k, double x) {
        // int_{-1}^x T_k
        if (k == 0) return x + 1;
        if (k == 1) return (x * x - 1) / 2;
        auto F = [&](double y) { return T(k + 1, y) / (2.0 * (k + 1)) - T(k - 1, y) / (2.0 * (k - 1)); };
        return F(x) - F(-1.0);
    };
    for (int j = 0; j < p; ++j)
        for (int k = 0; k < p; ++k) {
            V(j, k) = T(k, c.x[j]);
            Q(j, k) = intT(k, c.x[j]);
        }
    c.S = Q * V.inverse();
    return c;
}

}  // namespace

const GaussRule& gauss16() {
    static const GaussRule r = make_gauss<16>();
    return r;
}

const GaussRule& gauss8() {
    static const GaussRule r = make_gauss<8>();
    return r;
}

GaussRule composite_gauss(double a, double b, int panels) {
    const GaussRule& g = gauss16();
    GaussRule r;
    const double h = (b - a) / panels;
    for (int p = 0; p < panels; ++p) {
        const double lo = a + p * h;
        for (std::size_t i = 0; i < g.x.size(); ++i) {
            r.x.push_back(lo + 0.5 * h * (g.x[i] + 1));
            r.w.push_back(0.5 * h * g.w[i]);
        }
    }
    return r;
}

const ChebPanel& cheb_panel16() {
    static const ChebPanel c = make_cheb(16);
    return c;
}

}  // namespace zst
