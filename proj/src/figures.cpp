#include "zst/figures.hpp"

#include "zst/errors.hpp"

namespace zst {

FigureDataset figure_dataset(const std::string& id, int arc_nmax, double tol) {
    FigureDataset f;
    f.id = id;
    f.params = figure_params(id);
    const Potential p = f.params.potential();
    f.symmetry = classify(p);
    f.periodic = locate_spectrum(Kind::Periodic, p, 16, tol);
    const int N = f.periodic.N;
    if (arc_nmax <= 0) arc_nmax = N + 1;

    f.discs.push_back(N == 0 ? Disc::D0() : Disc::BN(N));
    for (int n = -(N + 3); n <= N + 3; ++n)
        if (std::abs(n) > N)
            for (int i = 1; i <= 2; ++i) f.discs.push_back(Disc::Dn(i, n));

    if (f.symmetry == Symmetry::General) {
        f.warnings.push_back("potential is neither real nor imaginary type, no arcs traced");
        return f;
    }
    for (int n = -arc_nmax; n <= arc_nmax; ++n) {
        if (n == 0) continue;
        ArcPolyline arc;
        try {
            arc = trace_arc(p, n);
        } catch (const Error& e) {
            f.warnings.push_back("arc n=" + std::to_string(n) + ": " + e.what());
            continue;
        }
        for (const auto& w : arc.warnings) f.warnings.push_back("arc n=" + std::to_string(n) + ": " + w);
        f.arcs.push_back(arc);
        cplx lm, lp;
        int found = 0;
        for (const auto& e : f.periodic.eigenvalues)
            if (e.i == 1 && e.n == n) {
                (e.sign < 0 ? lm : lp) = e.value;
                ++found;
            }
        if (found != 2) continue;
        // inside B_N labels follow the lexicographic order, so a failed match is only reported
        try {
            f.gamma_star.push_back(extract_gamma_star(arc, p, lm, lp, 1e-7));
        } catch (const Error& e) {
            f.warnings.push_back("gamma* n=" + std::to_string(n) + ": " + e.what());
        }
    }
    return f;
}

Json to_json(const FigureDataset& f) {
    Json ev = Json::array();
    for (const auto& e : f.periodic.eigenvalues) ev.push_back(to_json(e));
    Json arcs = Json::array(), gs = Json::array(), discs = Json::array(), w = Json::array();
    for (const auto& a : f.arcs) arcs.push_back(to_json(a));
    for (const auto& a : f.gamma_star) gs.push_back(to_json(a));
    for (const auto& d : f.discs) discs.push_back(to_json(d));
    for (const auto& s : f.warnings) w.push_back(s);
    return Json{{"figure", f.id},
                {"params", to_json(f.params)},
                {"symmetry", to_string(f.symmetry)},
                {"N", f.periodic.N},
                {"eigenvalues", ev},
                {"zero_set", arcs},
                {"gamma_star", gs},
                {"discs", discs},
                {"warnings", w}};
}

}  // namespace zst
