#pragma once

#include <string>
#include <vector>

#include "zst/io.hpp"

namespace zst {

struct FigureDataset {
    std::string id;
    SingleExp params;
    Symmetry symmetry = Symmetry::General;
    Spectrum periodic;
    std::vector<ArcPolyline> arcs;        // traced gamma_n
    std::vector<ArcPolyline> gamma_star;  // trimmed to the periodic eigenvalues
    std::vector<Disc> discs;
    std::vector<std::string> warnings;
};

// spectrum, arcs for 1 <= |n| <= arc_nmax (real/imaginary type only) and disc outlines
FigureDataset figure_dataset(const std::string& id, int arc_nmax = 0, double tol = 1e-10);

Json to_json(const FigureDataset& f);

}  // namespace zst
