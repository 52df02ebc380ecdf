#pragma once
// Genus functions psi and everything derived from them: Psi, Z, Z^1, the
// residue constant, pole data, hypothesis checks; Laurent polynomials.

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "eis/rootsys.hpp"

namespace eis {

enum class Mode { multiplicative, additive };

struct PoleError : std::domain_error {
    using std::domain_error::domain_error;
};

struct GenusFunction {
    Mode mode = Mode::multiplicative;
    std::function<cplx(cplx)> psi;
    std::vector<cplx> zeros;
    // multiplicative: analytic on 1/R < |x| < R; additive: on |Re s| < R
    double region = 1e300;
    cplx origin_value = 1.0;  // psi(1) resp. psi(0)
    bool critical_zeros_only = false;
    std::string kind;
    nlohmann::json spec;
};

struct EvalContext {
    cplx q = 2.0;  // |q| > 1 in multiplicative mode; unused (formally 1) in additive mode
    Mode mode = Mode::multiplicative;
    GenusFunction genus;
    double scale = 1.0;  // 1/ln q, only recorded for the q -> 1 bookkeeping
};

EvalContext make_context(GenusFunction g, cplx q);
EvalContext make_additive_context(GenusFunction g);

// canonical genera
GenusFunction constant_genus(cplx value = 1.0);
GenusFunction one_minus_c_over_x(cplx c);
GenusFunction s_plus_c(double c);
// psi_q(x) = (1 - q^{-c}/x)/ln q, so that psi_q(q^s) -> s + c as q -> 1
GenusFunction bridge_genus(double c, double q);
// frobenius eigenvalues, full list of 2g numbers closed under conjugation
GenusFunction function_field_genus(const std::vector<cplx>& alphas, double q);
// q is needed for the function-field kind
GenusFunction genus_from_json(const nlohmann::json& j, double q, const std::string& path = "genus");

struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

cplx psi(const EvalContext& c, cplx x);
cplx big_psi(const EvalContext& c, cplx x);
cplx z_of(const EvalContext& c, cplx x);
cplx z1_of(const EvalContext& c, cplx x);
cplx little_z(const EvalContext& c);

// f(x) = p_{-1}/(1 - x^{-1}) + p_0 + O(x - 1)   (additive: p_{-1}/s + p_0 + O(s))
struct PoleData {
    cplx m1, c0;
};
PoleData big_psi_pole(const EvalContext& c);
PoleData z_pole(const EvalContext& c);

// zeta of a curve with the given Frobenius eigenvalues, and the completed form
cplx curve_zeta(const std::vector<cplx>& alphas, double q, cplx x);
cplx curve_xi(const std::vector<cplx>& alphas, double q, cplx s);

struct HypothesisResult {
    std::string name;
    bool pass = false;
    std::string detail;
    std::vector<cplx> witnesses;
};
std::vector<HypothesisResult> check_hypotheses(const EvalContext& c);
bool hypotheses_pass(const std::vector<HypothesisResult>& r);
// Cauchy reconstruction of psi at a few points of the declared region
double cauchy_reconstruction_error(const EvalContext& c);
// zeros of psi inside r1 < |x| < r2 by the argument principle (multiplicative mode)
int count_zeros_in_annulus(const EvalContext& c, double r1, double r2);

nlohmann::json describe(const EvalContext& c);

// finitely supported functions on the character lattice
struct LaurentPolynomial {
    std::map<IntVec, cplx> terms;

    cplx operator()(const Point& y) const;
    // x_j d/dx_j applied termwise
    LaurentPolynomial euler(int j) const;
    // (w f)(x) = f(w^{-1} x)
    LaurentPolynomial act(const std::vector<WeylElement>& W, int w) const;
    LaurentPolynomial operator+(const LaurentPolynomial& o) const;
    LaurentPolynomial scaled(cplx s) const;
    bool operator==(const LaurentPolynomial& o) const { return terms == o.terms; }
};

using TestFunction = std::function<cplx(const Point&)>;
TestFunction as_function(const LaurentPolynomial& f);

LaurentPolynomial monomial(const IntVec& lam, cplx c = 1.0);
LaurentPolynomial dual_star(const LaurentPolynomial& f);
// f*(x) = conj(f(1/conj(x))) for a general callable
TestFunction dual_star(const TestFunction& f);
nlohmann::json to_json(const LaurentPolynomial& f);
LaurentPolynomial laurent_from_json(const nlohmann::json& j, int rank, const std::string& path = "f");

}  // namespace eis
