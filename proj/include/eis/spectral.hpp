#pragma once
// Both sides of the main identity: the Eisenstein pairing integrated over a
// shifted compact torus, and the sum over nilpotent orbits of projector and
// density integrals. Also the closed forms used for regression.

#include <map>
#include <string>
#include <vector>

#include "eis/genus.hpp"
#include "eis/liealg.hpp"
#include "eis/quad.hpp"

namespace eis {

struct Group {
    RootDatum rd;
    std::vector<WeylElement> W;
    LieAlgebra L;
    std::vector<OrbitRecord> orbits;
    CenterGroup center;
    std::vector<std::vector<int>> inversions;  // w -> {a > 0 : w^-1 a < 0}
    int w0 = 0;

    const OrbitRecord& orbit(const std::string& label) const;
    int orbit_index(const std::string& label) const;
    cplx root_value(const Point& x, int a) const { return character(x, rd.root_lam[a]); }
};

Group make_group(const std::string& type, Lattice lattice, const CatalogOptions& opt = {});

struct InadmissibleContour : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct NonRegularPoint : std::domain_error {
    using std::domain_error::domain_error;
};

// (1/z^r) sum_w f1(x) f2(w^-1 x) prod_{a>0, w^-1 a<0} Z(x^a)/Z(q x^a)
cplx eis_integrand(const Group& G, const EvalContext& ctx, const TestFunction& f1, const TestFunction& f2,
                   const Point& x);
// checks |shift^a| > |q| for every positive root before integrating
QuadResult eis_pairing(const Group& G, const EvalContext& ctx, const TestFunction& f1, const TestFunction& f2,
                       const ContourSpec& contour);
// the same integrand on the unit torus (zero-orbit term)
QuadResult zero_orbit_reduced(const Group& G, const EvalContext& ctx, const TestFunction& f1, const TestFunction& f2,
                              int nodes);

// sign +1: prod_{a<0} Psi(x^a)/Psi(x^a/q); sign -1: over a > 0
cplx pi_factor(const Group& G, const EvalContext& ctx, int sign, const Point& x);
// sum over w in `elements` (all of W if empty) of (Pi f)(w^-1 x); x must be regular
cplx projector_PB(const Group& G, const EvalContext& ctx, const TestFunction& f, int sign, const Point& x,
                  const std::vector<int>& elements = {});
// the same sum, with singular terms handled by a circle mean in a generic direction
cplx projector_limit(const Group& G, const EvalContext& ctx, const TestFunction& f, int sign, const Point& x,
                     const std::vector<int>& elements = {});
// radius used by projector_limit at x
double limit_radius(const Group& G, const EvalContext& ctx, const Point& x);
// Pi_-^-1 (1/|W|) sum_w w Pi_-
cplx langlands_projector(const Group& G, const EvalContext& ctx, const TestFunction& f, const Point& x);

// evaluation point q^{h/2} * class representative * t, t in T_phi
Point evaluation_point(const Group& G, cplx q, const OrbitRecord& rec, const ComponentClass& cls,
                       const std::vector<cplx>& t);

// Weyl elements contributing to the restricted projector: the cosets of W(e)
std::vector<int> restricted_elements(const Group& G, const OrbitRecord& rec, int sign);
cplx restrict_projector(const Group& G, const EvalContext& ctx, const OrbitRecord& rec, const TestFunction& f, int sign,
                        const ComponentClass& cls, const std::vector<cplx>& t);

struct DensityValue {
    cplx psi_form;    // Psi_e
    cplx z_form;      // Z_e from the multiplicity spaces
    cplx z_from_psi;  // Psi_e / prod_{a != 0} psi(x^a/q)^2
    cplx weyl;        // prod over roots of c_phi of (1 - t^gamma)
};
DensityValue orbit_density(const Group& G, const EvalContext& ctx, const OrbitRecord& rec, const ComponentClass& cls,
                           const std::vector<cplx>& t);

enum class ProjectorMethod { full_limit, restricted };

struct OrbitOptions {
    int nodes = 64;  // per T_phi dimension
    ProjectorMethod method = ProjectorMethod::full_limit;
    bool zero_orbit_general = false;  // use the general machinery on e = 0
    double density_scale = 1.0;       // deliberate corruption knob for sensitivity checks
    bool abs_form = false;            // integrate |P+ f1|^2 |Psi_e| instead (f2 unused)
};

struct OrbitContribution {
    std::string label;
    cplx value = 0;
    double error_estimate = 0;
    std::vector<std::string> class_names;
    std::vector<cplx> class_values;  // already weighted
    nlohmann::json diagnostics;
};

OrbitContribution orbit_contribution(const Group& G, const EvalContext& ctx, const OrbitRecord& rec,
                                     const TestFunction& f1, const TestFunction& f2, const OrbitOptions& opt = {});

struct SpectralSum {
    std::vector<OrbitContribution> orbits;
    cplx total = 0;
    double error_estimate = 0;
};
// per-orbit options by label override `opt`
SpectralSum spectral_sum(const Group& G, const EvalContext& ctx, const TestFunction& f1, const TestFunction& f2,
                         const OrbitOptions& opt = {}, const std::map<std::string, OrbitOptions>& per_orbit = {});

// regular orbit in closed form: center average of f1(q^rho x) f2(q^-rho x) / prod Z(q^{m_i+1})
cplx regular_closed_form(const Group& G, const EvalContext& ctx, const TestFunction& f1, const TestFunction& f2);
// (1/z) * contour integral of Z(u) du/(2 pi i u) around u = q, one value per simple root
std::vector<cplx> regular_residues(const Group& G, const EvalContext& ctx);

// G2 subregular: the identity, (12) and (123) class values
struct G2ClosedForms {
    cplx identity, transposition, three_cycle;
    cplx total() const { return identity + transposition + three_cycle; }
};
G2ClosedForms g2_subregular_closed_forms(const EvalContext& ctx, const LaurentPolynomial& f1,
                                         const LaurentPolynomial& f2);
// the D-operator value at (q, q)
cplx g2_d_operator(const EvalContext& ctx, const LaurentPolynomial& f);

struct HermitianNorm {
    double value = 0;
    std::vector<cplx> per_orbit;
    std::vector<double> per_orbit_abs_form;  // sum of |P+f|^2 |Psi_e| style values
    bool positive = true;
    double worst_imag_ratio = 0;
};
HermitianNorm hermitian_norm(const Group& G, const EvalContext& ctx, const LaurentPolynomial& f,
                             const OrbitOptions& opt = {}, const std::map<std::string, OrbitOptions>& per_orbit = {});

// additive mode, A1 with adjoint coordinate s (alpha(s) = s)
using AdditiveFunction = std::function<cplx(cplx)>;
struct CohomologySides {
    cplx lhs, rhs, zero_orbit, regular_orbit;
    double lhs_error = 0, rhs_error = 0;
};
CohomologySides cohomological_identity_sides(const EvalContext& additive, const AdditiveFunction& f, double s0 = 1.5,
                                             double step = 0.01, double trunc_height = 0);
// multiplicative A1 pairing of f_q(x) = f(log x / ln q) with its dual, divided by (ln q)^2
cplx bridge_value(double c, double q, const AdditiveFunction& f, int nodes = 8192, double s0 = 1.5);

// symbolic comparison of the additive subregular point formula with the template
struct SymbolicCheck {
    bool pole_cancels = false;
    bool matches = false;
    int sign = 0;  // emitted = sign * template
    std::string emitted, template_form, denominator;
    nlohmann::json coefficients;
};
SymbolicCheck g2_additive_symbolic(const Group& G);

}  // namespace eis
