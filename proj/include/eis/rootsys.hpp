#pragma once
// Root data for the small split groups: A1, A1xA1, A2, B2/C2, G2.
//
// Conventions
//  * roots live in simple-root coordinates (integer vectors);
//  * the character lattice is given by a basis lambda_j (rows of
//    lattice_basis, rational simple-root coordinates), and every root
//    also gets its integer coordinates in that basis (root_lam);
//  * a torus point is the vector y_j = x^{lambda_j};
//  * a cocharacter mu is recorded by its values alpha_i(mu) on simple roots.
// For G2 the lattice basis is (2a1+a6, a1+a6), so y = (x1, x2) are the
// usual GL(2)-torus coordinates with s6 (x1,x2) = (x1, x1/x2).

#include <complex>
#include <string>
#include <vector>

#include "eis/linalg.hpp"
#include "json.hpp"

namespace eis {

using cplx = std::complex<double>;
using Point = std::vector<cplx>;

enum class Lattice { adjoint, simply_connected };

Lattice parse_lattice(const std::string& s);
std::string lattice_name(Lattice l);

struct UnsupportedType : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct WeylElement {
    IntMat matrix;  // w(beta) = matrix * beta, simple-root coordinates
    IntMat lam;     // column j = lattice coordinates of w(lambda_j)
    std::vector<int> word;  // reduced word, leftmost letter applied last
    int length = 0;
    int inverse = 0;  // index of w^-1 in the enumeration
};

struct CenterGroup {
    std::vector<RatVec> elements;  // theta, x = exp(2 pi i theta) on the lattice basis
    IntVec invariants;             // nontrivial invariant factors of Lambda/Q
    int order() const { return (int)elements.size(); }
    RatVec mul(const RatVec& a, const RatVec& b) const;
    Point point(int k) const;
};

struct RootDatum {
    std::string type;
    Lattice lattice = Lattice::adjoint;
    int rank = 0;
    IntMat cartan;  // cartan[i][j] = <alpha_i, alpha_j^vee>
    RatMat gram;    // (alpha_i, alpha_j)
    std::vector<IntVec> roots;  // positives by height, then their negatives
    int npos = 0;
    std::vector<IntVec> coroots;  // simple-coroot coordinates, same order
    std::vector<std::string> labels;
    std::vector<int> heights;      // for all roots (negative heights for negatives)
    RatMat lattice_basis;          // rows
    std::vector<IntVec> root_lam;  // lattice coordinates of each root
    RatVec rho;                    // half sum of positive roots, simple coordinates
    IntVec rho_check;              // alpha_i(rho^vee) = 1
    IntVec exponents;

    int num_roots() const { return (int)roots.size(); }
    bool positive(int k) const { return k < npos; }
    int index_of(const IntVec& beta) const;  // -1 if not a root
    int negative_of(int k) const { return k < npos ? k + npos : k - npos; }
    Rat inner(const IntVec& a, const IntVec& b) const;
    // <a, b^vee> = 2 (a,b)/(b,b)
    Rat pair_coroot(const IntVec& a, const IntVec& b) const;
    // lambda(mu) for lambda in lattice coordinates, mu given on simple roots
    Rat eval_cochar(const IntVec& lam, const RatVec& mu) const;
    // lattice coordinates -> simple-root coordinates
    RatVec lam_to_simple(const IntVec& lam) const;
    IntVec simple_to_lam(const IntVec& beta) const;
    // y_j = q^{lambda_j(mu)}
    Point cochar_point(cplx q, const RatVec& mu) const;
};

RootDatum build_root_system(const std::string& type, Lattice lattice);
std::vector<WeylElement> enumerate_weyl(const RootDatum& rd);
IntVec exponents_from_heights(const RootDatum& rd);
CenterGroup center(const RootDatum& rd);

// exact check of (1 - 1/q) sum q^ht = sum q^m - r
bool heights_exponents_identity(const RootDatum& rd);

int longest_index(const std::vector<WeylElement>& W);
IntVec weyl_apply(const WeylElement& w, const IntVec& beta);
// (w.x)^lambda = x^{w^-1 lambda}
Point act(const std::vector<WeylElement>& W, int w, const Point& y);
cplx character(const Point& y, const IntVec& lam);

nlohmann::json to_json(const RootDatum& rd);

}  // namespace eis
