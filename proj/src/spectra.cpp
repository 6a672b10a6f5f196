#include "zst/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>

#include <Eigen/Eigenvalues>

#include "zst/errors.hpp"
#include "zst/parallel.hpp"
#include "zst/quadrature.hpp"

namespace zst {

std::string to_string(Kind k) {
    switch (k) {
        case Kind::Dirichlet: return "dirichlet";
        case Kind::Neumann: return "neumann";
        case Kind::Periodic: return "periodic";
        default: return "critical";
    }
}

Kind parse_kind(const std::string& s) {
    if (s == "dirichlet") return Kind::Dirichlet;
    if (s == "neumann") return Kind::Neumann;
    if (s == "periodic") return Kind::Periodic;
    if (s == "critical") return Kind::Critical;
    throw ParseError("unknown kind '" + s + "'");
}

cplx discriminant(const Potential& p, cplx lam, double tol) {
    return monodromy(p, lam, Method::OdeIntegration, tol).M.trace();
}

cplx anti_discriminant(const Potential& p, cplx lam, double tol) {
    const Mat2 M = monodromy(p, lam, Method::OdeIntegration, tol).M;
    return M(0, 1) + M(1, 0);
}

cplx discriminant_derivative(const Potential& p, cplx lam, double tol) {
    return monodromy_jet(p, lam, 1, tol).dM.trace();
}

CharValue characteristic_from_jet(Kind k, const Jet& j) {
    auto dir = [](const Mat2& m) { return (m(1, 1) + m(1, 0) - m(0, 1) - m(0, 0)) / (2.0 * I1); };
    auto neu = [](const Mat2& m) { return (m(1, 1) - m(1, 0) + m(0, 1) - m(0, 0)) / (2.0 * I1); };
    switch (k) {
        case Kind::Dirichlet: return {dir(j.M), dir(j.dM)};
        case Kind::Neumann: return {neu(j.M), neu(j.dM)};
        case Kind::Periodic: {
            const cplx D = j.M.trace();
            return {D * D - 4.0, 2.0 * D * j.dM.trace()};
        }
        default: return {j.dM.trace(), j.d2M.trace()};
    }
}

int jet_order(Kind k) { return k == Kind::Critical ? 2 : 1; }

cplx characteristic(Kind k, const Potential& p, cplx lam, double tol) {
    return characteristic_from_jet(k, monodromy_jet(p, lam, jet_order(k), tol)).f;
}

double growth_weight(Kind k, cplx lam) {
    const double g = 2 * std::abs(std::imag(lam * lam));
    switch (k) {
        case Kind::Periodic: return std::exp(2 * g);
        case Kind::Critical: return (1 + std::abs(lam)) * std::exp(g);
        default: return std::exp(g);
    }
}

// ---------------------------------------------------------------- evaluator

Jet Evaluator::jet(cplx lam, int order) {
    const auto key = std::make_pair(lam.real(), lam.imag());
    {
        std::lock_guard lk(mu_);
        auto it = cache_.find(key);
        if (it != cache_.end() && it->second.order >= order) return it->second;
    }
    Jet j = monodromy_jet(p_, lam, std::max(order, min_order_), tol_);
    std::lock_guard lk(mu_);
    cache_[key] = j;
    return j;
}

std::vector<Jet> Evaluator::jets(const std::vector<cplx>& lams, int order) {
    std::vector<Jet> out(lams.size());
    parallel_for(lams.size(), [&](std::size_t k) { out[k] = jet(lams[k], order); });
    return out;
}

std::vector<CharValue> Evaluator::chi(Kind k, const std::vector<cplx>& lams) {
    const auto js = jets(lams, jet_order(k));
    std::vector<CharValue> out;
    out.reserve(js.size());
    for (auto& j : js) out.push_back(characteristic_from_jet(k, j));
    return out;
}

// ---------------------------------------------------------------- discs

Disc Disc::Dn(int i, int n) {
    if (n == 0 || (i != 1 && i != 2)) throw Error("D^i_n needs i in {1,2} and n != 0");
    Disc d;
    d.type = DiscType::Dn;
    d.i = i;
    d.n = n;
    return d;
}

Disc Disc::BN(int N) {
    Disc d;
    d.type = DiscType::BN;
    d.N = N;
    return d;
}

double radius_BN(int N) { return std::sqrt((N + 0.25) * pi / 2); }

namespace {

// D^i_n lives around 2 lam^2 = w_c
double disc_wc(int i, int n) { return (i == 1 ? 1.0 : -1.0) * std::abs(n) * pi; }

cplx disc_lambda(int i, int n, cplx w) {
    const double s = n > 0 ? 1.0 : -1.0;
    return i == 1 ? s * std::sqrt(w / 2.0) : s * I1 * std::sqrt(-w / 2.0);
}

}  // namespace

cplx Disc::center() const {
    if (type == DiscType::Dn) return disc_lambda(i, n, disc_wc(i, n));
    return 0.0;
}

bool Disc::contains(cplx lam) const {
    if (type == DiscType::D0) return std::abs(lam) < radius_BN(0);
    if (type == DiscType::BN) return std::abs(lam) < radius_BN(N);
    if (std::abs(2.0 * lam * lam - disc_wc(i, n)) >= pi / 4) return false;
    const double side = i == 1 ? lam.real() : lam.imag();
    return n > 0 ? side > 0 : side < 0;
}

cplx Disc::boundary(double phi, double dil, cplx* dlam) const {
    const cplx e = std::polar(1.0, phi);
    if (type != DiscType::Dn) {
        const double R = radius_BN(type == DiscType::D0 ? 0 : N) * dil;
        if (dlam) *dlam = I1 * R * e;
        return R * e;
    }
    const double rho = pi / 4 * dil;
    const cplx w = disc_wc(i, n) + rho * e;
    const cplx lam = disc_lambda(i, n, w);
    // lam^2 = w/2  =>  dlam = dw / (4 lam)
    if (dlam) *dlam = I1 * rho * e / (4.0 * lam);
    return lam;
}

std::string Disc::name() const {
    if (type == DiscType::D0) return "D0";
    if (type == DiscType::BN) return "B" + std::to_string(N);
    return "D" + std::to_string(i) + "_" + std::to_string(n);
}

int expected_disc_count(Kind k) { return k == Kind::Periodic ? 2 : 1; }

int expected_BN_count(Kind k, int N) {
    switch (k) {
        case Kind::Periodic: return 4 * (2 * N + 1);
        case Kind::Critical: return 4 * N + 3;
        default: return 2 * (2 * N + 1);
    }
}

// ---------------------------------------------------------------- contours

namespace {

struct Contour {
    std::vector<cplx> z, dz;  // nodes and quadrature-weighted d lambda
    cplx center;
    double scale = 1;
};

Contour disc_contour(const Disc& d, int npts, double dil) {
    Contour c;
    c.z.resize(npts);
    c.dz.resize(npts);
    for (int k = 0; k < npts; ++k) {
        const double phi = 2 * pi * k / npts;
        cplx dl;
        c.z[k] = d.boundary(phi, dil, &dl);
        c.dz[k] = dl * (2 * pi / npts);
    }
    c.center = d.center();
    if (d.type == DiscType::Dn)
        c.scale = std::abs(d.boundary(0, dil, nullptr) - c.center);
    else
        c.scale = radius_BN(d.type == DiscType::D0 ? 0 : d.N) * dil;
    return c;
}

Contour circle_contour(cplx center, double r, int npts) {
    Contour c;
    c.center = center;
    c.scale = r;
    for (int k = 0; k < npts; ++k) {
        const cplx e = std::polar(1.0, 2 * pi * k / npts);
        c.z.push_back(center + r * e);
        c.dz.push_back(I1 * r * e * (2 * pi / npts));
    }
    return c;
}

struct Rect {
    double x0, y0, x1, y1;
    cplx center() const { return {(x0 + x1) / 2, (y0 + y1) / 2}; }
    double diam() const { return std::hypot(x1 - x0, y1 - y0); }
};

// counterclockwise boundary, composite Gauss on each side; nodes on a side are
// generated from its lexicographically smaller end so neighbours share them
Contour rect_contour(const Rect& r, int panels) {
    Contour c;
    c.center = r.center();
    c.scale = r.diam() / 2;
    const cplx corners[4] = {{r.x0, r.y0}, {r.x1, r.y0}, {r.x1, r.y1}, {r.x0, r.y1}};
    for (int s = 0; s < 4; ++s) {
        cplx a = corners[s], b = corners[(s + 1) % 4];
        double sgn = 1;
        if (lex_less(b, a, 0)) {
            std::swap(a, b);
            sgn = -1;
        }
        const GaussRule g = composite_gauss(0, 1, panels);
        for (std::size_t k = 0; k < g.x.size(); ++k) {
            c.z.push_back(a + (b - a) * g.x[k]);
            c.dz.push_back(sgn * (b - a) * g.w[k]);
        }
    }
    return c;
}

struct ContourData {
    std::vector<CharValue> v;
    double min_norm = 0, max_norm = 0;
};

ContourData sample(Kind k, Evaluator& ev, const Contour& c) {
    ContourData d;
    d.v = ev.chi(k, c.z);
    d.min_norm = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < c.z.size(); ++j) {
        const double a = std::abs(d.v[j].f) / growth_weight(k, c.z[j]);
        d.min_norm = std::min(d.min_norm, a);
        d.max_norm = std::max(d.max_norm, a);
    }
    return d;
}

// (1/2 pi i) sum dz ((z-c)/rho)^m chi'/chi  for m = 0..mmax
std::vector<cplx> moments(const Contour& c, const ContourData& d, int mmax) {
    std::vector<cplx> s(mmax + 1, cplx{});
    for (std::size_t j = 0; j < c.z.size(); ++j) {
        const cplx g = c.dz[j] * d.v[j].df / d.v[j].f;
        const cplx u = (c.z[j] - c.center) / c.scale;
        cplx up = 1.0;
        for (int m = 0; m <= mmax; ++m) {
            s[m] += up * g;
            up *= u;
        }
    }
    for (auto& x : s) x /= 2 * pi * I1;
    return s;
}

constexpr double guard_ratio = 1e-9;

struct Winding {
    bool ok = false;
    int count = 0;
    double raw = 0;
};

Winding winding_of(const Contour& c, const ContourData& d) {
    Winding w;
    if (!(d.min_norm > guard_ratio * d.max_norm)) return w;
    const cplx s = moments(c, d, 0)[0];
    w.raw = s.real();
    w.count = static_cast<int>(std::lround(w.raw));
    w.ok = std::abs(w.raw - w.count) <= 0.2 && std::abs(s.imag()) <= 0.2;
    return w;
}

// embedded coarse rule: every other node with doubled weights
Winding coarse_winding(const Contour& c, const ContourData& d) {
    Contour h;
    ContourData hd;
    h.center = c.center;
    h.scale = c.scale;
    for (std::size_t j = 0; j < c.z.size(); j += 2) {
        h.z.push_back(c.z[j]);
        h.dz.push_back(2.0 * c.dz[j]);
        hd.v.push_back(d.v[j]);
    }
    hd.min_norm = d.min_norm;
    hd.max_norm = d.max_norm;
    return winding_of(h, hd);
}

int disc_count(Kind k, Evaluator& ev, const Disc& d, int npts, double* dil_used = nullptr) {
    double dil = 1.0;
    for (int attempt = 0; attempt <= 3; ++attempt, dil *= 1.05) {
        bool guard = true;
        Winding prev = {};
        for (int n = npts; n <= 8 * npts; n *= 2) {
            const Contour c = disc_contour(d, n, dil);
            const ContourData data = sample(k, ev, c);
            if (!(data.min_norm > guard_ratio * data.max_norm)) {
                guard = false;
                break;
            }
            const Winding w = winding_of(c, data);
            if (n == npts) prev = coarse_winding(c, data);
            if (w.ok && prev.ok && w.count == prev.count) {
                if (dil_used) *dil_used = dil;
                return w.count;
            }
            prev = w;
        }
        if (guard) throw NonIntegerWinding("winding on " + d.name() + " did not settle");
    }
    throw ContourTooClose("root on or near the boundary of " + d.name() + " after 3 dilations");
}

// winding on a rectangle, empty when unreliable
std::optional<int> rect_winding(Kind k, Evaluator& ev, const Rect& r) {
    int prev = 0;
    bool have = false;
    for (int panels = 2; panels <= 32; panels *= 2) {
        const Contour c = rect_contour(r, panels);
        const ContourData d = sample(k, ev, c);
        if (!(d.min_norm > guard_ratio * d.max_norm)) return std::nullopt;
        const Winding w = winding_of(c, d);
        if (w.ok && have && w.count == prev) return w.count;
        have = w.ok;
        prev = w.count;
    }
    return std::nullopt;
}

// ---------------------------------------------------------------- root extraction

struct Cluster {
    cplx z;
    int mult;
};

// roots of the monic polynomial with power sums p_1..p_m
std::vector<cplx> roots_from_power_sums(const std::vector<cplx>& p, int m) {
    if (m == 1) return {p[1]};
    std::vector<cplx> e(m + 1, cplx{});
    e[0] = 1.0;
    for (int k = 1; k <= m; ++k) {
        cplx s{};
        for (int j = 1; j <= k; ++j) s += (j % 2 ? 1.0 : -1.0) * e[k - j] * p[j];
        e[k] = s / double(k);
    }
    // companion matrix of z^m - e1 z^{m-1} + e2 z^{m-2} - ...
    Eigen::MatrixXcd C = Eigen::MatrixXcd::Zero(m, m);
    for (int k = 1; k < m; ++k) C(k, k - 1) = 1.0;
    for (int k = 1; k <= m; ++k) C(m - k, m - 1) = (k % 2 ? 1.0 : -1.0) * e[k];
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(C, false);
    std::vector<cplx> r(m);
    for (int k = 0; k < m; ++k) r[k] = es.eigenvalues()(k);
    return r;
}

std::optional<cplx> newton(Kind k, Evaluator& ev, cplx z, double reach) {
    const cplx z0 = z;
    for (int it = 0; it < 50; ++it) {
        const CharValue v = ev.chi(k, z);
        if (v.f == cplx{}) return z;
        const cplx step = v.f / v.df;
        if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) return std::nullopt;
        z -= step;
        if (std::abs(z - z0) > reach) return std::nullopt;
        if (std::abs(step) <= 1e-14 * std::max(1.0, std::abs(z))) return z;
    }
    return std::nullopt;
}

// the mean of a root cluster from the first moment on a circle around it
std::optional<cplx> polish_cluster(Kind k, Evaluator& ev, cplx z, int m, double r) {
    const Contour c = circle_contour(z, r, 256);
    const ContourData d = sample(k, ev, c);
    const Winding w = winding_of(c, d);
    if (!w.ok || w.count != m) return std::nullopt;
    const auto s = moments(c, d, 1);
    return c.center + c.scale * s[1] / double(m);
}

// m roots enclosed by c; empty optional when they cannot be separated here
std::optional<std::vector<Cluster>> resolve(Kind k, Evaluator& ev, const Contour& c, const ContourData& d, int m,
                                            const std::function<bool(cplx)>& inside, double tol,
                                            bool polish) {
    if (m == 0) return std::vector<Cluster>{};
    const auto s = moments(c, d, m);
    auto est = roots_from_power_sums(s, m);
    for (auto& z : est) z = c.center + c.scale * z;

    // single-linkage grouping
    const double link = 1e-3 * std::max(1.0, c.scale);
    std::vector<int> grp(m, -1);
    int ng = 0;
    for (int a = 0; a < m; ++a) {
        if (grp[a] >= 0) continue;
        grp[a] = ng;
        for (bool grew = true; grew;) {
            grew = false;
            for (int b = 0; b < m; ++b)
                if (grp[b] < 0)
                    for (int q = 0; q < m; ++q)
                        if (grp[q] == ng && std::abs(est[q] - est[b]) < link) {
                            grp[b] = ng;
                            grew = true;
                            break;
                        }
        }
        ++ng;
    }

    std::vector<Cluster> out;
    for (int g = 0; g < ng; ++g) {
        std::vector<cplx> mem;
        for (int a = 0; a < m; ++a)
            if (grp[a] == g) mem.push_back(est[a]);
        const int km = static_cast<int>(mem.size());
        cplx mean{};
        for (auto z : mem) mean += z;
        mean /= double(km);
        double diam = 0;
        for (auto a : mem)
            for (auto b : mem) diam = std::max(diam, std::abs(a - b));

        if (km == 1) {
            auto z = newton(k, ev, mem[0], c.scale);
            if (!z || !inside(*z)) return std::nullopt;
            out.push_back({*z, 1});
            continue;
        }
        if (diam < std::pow(tol, 1.0 / km) * std::max(1.0, std::abs(mean))) {
            // separation to the nearest root outside this group
            double sep = c.scale;
            for (int a = 0; a < m; ++a)
                if (grp[a] != g) sep = std::min(sep, std::abs(est[a] - mean));
            for (auto& z : c.z) sep = std::min(sep, std::abs(z - mean));
            // rectangle moments are only algebraically accurate; re-take the mean on a circle
            auto z = polish ? polish_cluster(k, ev, mean, km, std::max(0.3 * sep, 1e-6)) : std::optional<cplx>(mean);
            if (!z || !inside(*z)) return std::nullopt;
            out.push_back({*z, km});
            continue;
        }
        // looks split: refine members one by one
        std::vector<cplx> found;
        for (auto z0 : mem) {
            auto z = newton(k, ev, z0, c.scale);
            if (!z || !inside(*z)) return std::nullopt;
            for (auto f : found)
                if (std::abs(f - *z) < 1e-8 * std::max(1.0, std::abs(f))) return std::nullopt;
            found.push_back(*z);
        }
        for (auto z : found) out.push_back({z, 1});
    }
    // Newton from two estimates may land on the same root
    for (std::size_t a = 0; a < out.size(); ++a)
        for (std::size_t b = a + 1; b < out.size(); ++b)
            if (std::abs(out[a].z - out[b].z) < 1e-8 * std::max(1.0, std::abs(out[a].z))) return std::nullopt;
    return out;
}

void quadtree(Kind k, Evaluator& ev, const Rect& r, int w, double tol, int depth, std::vector<Cluster>& out) {
    if (w == 0) return;
    auto inside = [&](cplx z) {
        const double e = 1e-9 * r.diam();
        return z.real() > r.x0 - e && z.real() < r.x1 + e && z.imag() > r.y0 - e && z.imag() < r.y1 + e;
    };
    if (r.diam() < 1e-9 || depth > 40) {
        out.push_back({r.center(), w});
        return;
    }
    if (w <= 4) {
        for (int panels : {8, 16}) {
            const Contour c = rect_contour(r, panels);
            const ContourData d = sample(k, ev, c);
            if (auto got = resolve(k, ev, c, d, w, inside, tol, true)) {
                out.insert(out.end(), got->begin(), got->end());
                return;
            }
        }
    }
    for (double f : {0.5, 0.47, 0.53, 0.44, 0.56, 0.41, 0.59}) {
        const double xm = r.x0 + f * (r.x1 - r.x0), ym = r.y0 + f * (r.y1 - r.y0);
        const Rect kids[4] = {{r.x0, r.y0, xm, ym}, {xm, r.y0, r.x1, ym}, {r.x0, ym, xm, r.y1}, {xm, ym, r.x1, r.y1}};
        int wk[4];
        bool ok = true;
        int sum = 0;
        for (int q = 0; q < 4 && ok; ++q) {
            auto x = rect_winding(k, ev, kids[q]);
            ok = x.has_value() && *x >= 0;
            if (ok) sum += wk[q] = *x;
        }
        if (!ok || sum != w) continue;
        for (int q = 0; q < 4; ++q) quadtree(k, ev, kids[q], wk[q], tol, depth + 1, out);
        return;
    }
    throw NonIntegerWinding("quadtree could not split a cell cleanly");
}

// roots inside a disc whose count is known
std::vector<Cluster> roots_in_disc(Kind k, Evaluator& ev, const Disc& disc, int m, double tol) {
    double dil = 1.0;
    disc_count(k, ev, disc, 256, &dil);
    auto inside = [&](cplx z) { return disc.contains(z) || dil > 1.0; };
    for (int npts : {256, 512}) {
        const Contour c = disc_contour(disc, npts, dil);
        const ContourData d = sample(k, ev, c);
        if (auto got = resolve(k, ev, c, d, m, inside, tol, false)) return *got;
    }
    // fall back to subdividing the bounding square of the disc
    double R = 0;
    const cplx c0 = disc.center();
    for (int j = 0; j < 64; ++j) R = std::max(R, std::abs(disc.boundary(2 * pi * j / 64, dil, nullptr) - c0));
    R *= 1.1;
    Rect box{c0.real() - R, c0.imag() - R, c0.real() + R, c0.imag() + R};
    auto w = rect_winding(k, ev, box);
    if (!w) throw NonIntegerWinding("bounding box of " + disc.name() + " unreliable");
    std::vector<Cluster> all, mine;
    quadtree(k, ev, box, *w, tol, 0, all);
    for (auto& cl : all)
        if (disc.contains(cl.z)) mine.push_back(cl);
    return mine;
}

std::vector<Cluster> roots_in_BN(Kind k, Evaluator& ev, int N, int m, double tol) {
    const Disc B = N == 0 ? Disc::D0() : Disc::BN(N);
    if (m <= 4) {
        const Contour c = disc_contour(B, 512, 1.0);
        const ContourData d = sample(k, ev, c);
        auto inside = [&](cplx z) { return B.contains(z); };
        if (auto got = resolve(k, ev, c, d, m, inside, tol, false)) return *got;
    }
    double R = radius_BN(N);
    for (int attempt = 0; attempt < 4; ++attempt, R *= 1.013) {
        const Rect box{-R, -R, R, R};
        auto w = rect_winding(k, ev, box);
        if (!w) continue;
        std::vector<Cluster> all, mine;
        quadtree(k, ev, box, *w, tol, 0, all);
        int total = 0;
        for (auto& cl : all)
            if (B.contains(cl.z)) {
                mine.push_back(cl);
                total += cl.mult;
            }
        if (total != m) throw CountMismatch("roots found in " + B.name() + " do not match its winding");
        return mine;
    }
    throw NonIntegerWinding("bounding box of " + B.name() + " unreliable");
}

std::vector<cplx> expand(const std::vector<Cluster>& cs) {
    std::vector<cplx> v;
    for (auto& c : cs)
        for (int j = 0; j < c.mult; ++j) v.push_back(c.z);
    lex_sort(v);
    return v;
}

int mult_of(const std::vector<Cluster>& cs, cplx z) {
    for (auto& c : cs)
        if (c.z == z) return c.mult;
    return 1;
}

// label sequence inside B_N in lexicographic order, (i, n); i = 0 marks the
// additional central critical point
std::vector<std::pair<int, int>> bn_labels(Kind k, int N) {
    std::vector<std::pair<int, int>> L;
    for (int n = -N; n <= -1; ++n) L.push_back({1, n});
    for (int n = -N; n <= -1; ++n) L.push_back({2, n});
    L.push_back({1, 0});
    if (k == Kind::Critical) L.push_back({0, 0});
    L.push_back({2, 0});
    for (int n = 1; n <= N; ++n) L.push_back({2, n});
    for (int n = 1; n <= N; ++n) L.push_back({1, n});
    return L;
}

}  // namespace

int count_roots(Kind k, Evaluator& ev, const Disc& d, int quad_points) { return disc_count(k, ev, d, quad_points); }

int count_roots(Kind k, const Potential& p, const Disc& d, int quad_points) {
    Evaluator ev(p);
    return count_roots(k, ev, d, quad_points);
}

bool lex_less(cplx a, cplx b, double eps) {
    const double e = eps * std::max(1.0, std::max(std::abs(a), std::abs(b)));
    if (a.real() < b.real() - e) return true;
    if (b.real() < a.real() - e) return false;
    return a.imag() < b.imag() - e;
}

void lex_sort(std::vector<cplx>& v) {
    // insertion sort: the tolerant comparator is not a strict weak order in general
    for (std::size_t a = 1; a < v.size(); ++a)
        for (std::size_t b = a; b > 0 && lex_less(v[b], v[b - 1]); --b) std::swap(v[b], v[b - 1]);
}

int Spectrum::count_in_BN() const {
    const double R = radius_BN(N);
    int c = 0;
    for (auto& e : eigenvalues)
        if (std::abs(e.value) < R) ++c;
    return c;
}

Spectrum locate_spectrum(Kind k, const Potential& p, int N_max, double tol) {
    Evaluator ev(p);
    return locate_spectrum(k, ev, N_max, tol);
}

Spectrum locate_spectrum(Kind k, Evaluator& ev, int N_max, double tol) {
    if (N_max < 1) throw Error("locate_spectrum needs N_max >= 1");
    const int per = expected_disc_count(k);

    // per-disc counts; a failing contour counts as a mismatch
    struct DiscJob {
        int i, n, count;
    };
    std::vector<DiscJob> jobs;
    for (int n = 1; n <= N_max; ++n)
        for (int s : {-1, 1})
            for (int i : {1, 2}) jobs.push_back({i, s * n, -1});
    for (auto& j : jobs) {
        try {
            j.count = disc_count(k, ev, Disc::Dn(j.i, j.n), 256);
        } catch (const Error&) {
            j.count = -1;
        }
    }
    int bad = 0;
    for (auto& j : jobs)
        if (j.count != per) bad = std::max(bad, std::abs(j.n));

    Spectrum sp;
    sp.kind = k;
    sp.N = -1;
    for (int N = bad; N <= N_max; ++N) {
        const Disc B = N == 0 ? Disc::D0() : Disc::BN(N);
        int c = -1;
        try {
            c = disc_count(k, ev, B, 256);
        } catch (const Error&) {
        }
        if (c == expected_BN_count(k, N)) {
            sp.N = N;
            break;
        }
    }
    if (sp.N < 0) throw CountMismatch("no N <= " + std::to_string(N_max) + " satisfies the counting lemma");
    const int N = sp.N;

    auto emit = [&](cplx z, int i, int n, int sign, int mult) {
        LabeledEigenvalue e;
        e.value = z;
        e.kind = k;
        e.i = i;
        e.n = n;
        e.sign = sign;
        e.mult = mult;
        e.residual = std::abs(ev.chi(k, z).f) / growth_weight(k, z);
        sp.eigenvalues.push_back(e);
    };

    // central disc
    const auto central = roots_in_BN(k, ev, N, expected_BN_count(k, N), tol);
    const auto cv = expand(central);
    if (k == Kind::Periodic && N == 0) {
        // B_0 convention: two labels per i, each pair ordered
        std::vector<cplx> one, two;
        if (central.size() == 2 && central[0].mult == 2 && central[1].mult == 2) {
            one = {central[0].z, central[1].z};
            two = one;
        } else {
            std::vector<cplx> v = cv;
            std::stable_sort(v.begin(), v.end(), [](cplx a, cplx b) {
                return std::abs(a.imag()) - std::abs(a.real()) > std::abs(b.imag()) - std::abs(b.real());
            });
            two = {v[0], v[1]};
            one = {v[2], v[3]};
        }
        lex_sort(one);
        lex_sort(two);
        emit(one[0], 1, 0, -1, mult_of(central, one[0]));
        emit(one[1], 1, 0, +1, mult_of(central, one[1]));
        emit(two[0], 2, 0, -1, mult_of(central, two[0]));
        emit(two[1], 2, 0, +1, mult_of(central, two[1]));
    } else {
        const auto labels = bn_labels(k, N);
        const int rep = k == Kind::Periodic ? 2 : 1;
        for (std::size_t a = 0; a < cv.size(); ++a) {
            const auto [i, n] = labels[a / rep];
            const int sign = k == Kind::Periodic ? (a % 2 ? +1 : -1) : 0;
            emit(cv[a], i, n, sign, mult_of(central, cv[a]));
        }
    }

    // outer discs, ordered by n then i
    for (int n = -N_max; n <= N_max; ++n) {
        if (std::abs(n) <= N) continue;
        for (int i : {1, 2}) {
            const Disc d = Disc::Dn(i, n);
            const auto cl = roots_in_disc(k, ev, d, per, tol);
            const auto v = expand(cl);
            if (static_cast<int>(v.size()) != per) throw CountMismatch("root extraction in " + d.name() + " incomplete");
            if (k == Kind::Periodic) {
                emit(v[0], i, n, -1, mult_of(cl, v[0]));
                emit(v[1], i, n, +1, mult_of(cl, v[1]));
            } else {
                emit(v[0], i, n, 0, 1);
            }
        }
    }
    return sp;
}

double verify_disc_identity(const Potential& p, cplx mu, double tol) {
    const Mat2 M = monodromy(p, mu, Method::OdeIntegration, tol).M;
    const cplx D = M.trace(), d = M(0, 1) + M(1, 0);
    return std::abs(D * D - 4.0 - d * d);
}

cplx sign_at_periodic(const Potential& p, cplx lam, int n, double tol) {
    const cplx D = discriminant(p, lam, tol);
    const double want = n % 2 == 0 ? 2.0 : -2.0;
    if (std::abs(D - want) > 1e-6)
        throw SignMismatch("Delta = (" + std::to_string(D.real()) + ", " + std::to_string(D.imag()) +
                           ") at a periodic eigenvalue with n = " + std::to_string(n));
    return D;
}

}  // namespace zst
