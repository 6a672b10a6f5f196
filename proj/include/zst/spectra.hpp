#pragma once

#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "zst/fundsol.hpp"

namespace zst {

enum class Kind { Dirichlet, Neumann, Periodic, Critical };
std::string to_string(Kind k);
Kind parse_kind(const std::string& s);

cplx discriminant(const Potential& p, cplx lam, double tol = default_tol);
cplx anti_discriminant(const Potential& p, cplx lam, double tol = default_tol);
cplx discriminant_derivative(const Potential& p, cplx lam, double tol = default_tol);
cplx characteristic(Kind k, const Potential& p, cplx lam, double tol = default_tol);

struct CharValue {
    cplx f, df;
};
CharValue characteristic_from_jet(Kind k, const Jet& j);
int jet_order(Kind k);
// natural growth of |chi| off the axes, used to normalise guards and residuals
double growth_weight(Kind k, cplx lam);

// monodromy jets for one potential, memoised by lambda
class Evaluator {
public:
    // min_order 2 lets one evaluator serve every kind without recomputing
    explicit Evaluator(Potential p, double ode_tol = default_tol, int min_order = 1)
        : p_(std::move(p)), tol_(ode_tol), min_order_(min_order) {}
    const Potential& potential() const { return p_; }

    Jet jet(cplx lam, int order);
    std::vector<Jet> jets(const std::vector<cplx>& lams, int order);
    CharValue chi(Kind k, cplx lam) { return characteristic_from_jet(k, jet(lam, jet_order(k))); }
    std::vector<CharValue> chi(Kind k, const std::vector<cplx>& lams);

private:
    Potential p_;
    double tol_;
    int min_order_;
    std::map<std::pair<double, double>, Jet> cache_;
    std::mutex mu_;
};

enum class DiscType { Dn, D0, BN };

struct Disc {
    DiscType type = DiscType::D0;
    int i = 0, n = 0, N = 0;

    static Disc Dn(int i, int n);
    static Disc D0() { return {}; }
    static Disc BN(int N);

    cplx center() const;
    bool contains(cplx lam) const;
    // boundary point at parameter phi in [0, 2pi) with the radius scaled by dil;
    // dlam receives d lambda / d phi
    cplx boundary(double phi, double dil, cplx* dlam) const;
    std::string name() const;
};

// radius of B_N
double radius_BN(int N);

int count_roots(Kind k, Evaluator& ev, const Disc& d, int quad_points = 256);
int count_roots(Kind k, const Potential& p, const Disc& d, int quad_points = 256);

// roots per disc D^i_n and in B_N predicted by the counting lemmas
int expected_disc_count(Kind k);
int expected_BN_count(Kind k, int N);

struct LabeledEigenvalue {
    cplx value;
    Kind kind = Kind::Periodic;
    int i = 0, n = 0;
    int sign = 0;  // -1, +1 for periodic, 0 otherwise
    int mult = 1;
    double residual = 0;
};

struct Spectrum {
    Kind kind = Kind::Periodic;
    int N = 0;  // minimal N for which the counting lemma holds
    std::vector<LabeledEigenvalue> eigenvalues;  // one entry per label
    int count_in_BN() const;
};

Spectrum locate_spectrum(Kind k, const Potential& p, int N_max = 16, double tol = 1e-10);
Spectrum locate_spectrum(Kind k, Evaluator& ev, int N_max = 16, double tol = 1e-10);

// lexicographic: real part first, then imaginary part; ties within eps
bool lex_less(cplx a, cplx b, double eps = 1e-8);
void lex_sort(std::vector<cplx>& v);

double verify_disc_identity(const Potential& p, cplx mu, double tol = default_tol);
// Delta at a labelled periodic eigenvalue; throws SignMismatch when it is not 2(-1)^n
cplx sign_at_periodic(const Potential& p, cplx lam, int n, double tol = default_tol);

}  // namespace zst
