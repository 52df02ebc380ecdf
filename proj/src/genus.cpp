#include "eis/genus.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace eis {

namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;

cplx cauchy_derivative(const std::function<cplx(cplx)>& f, cplx x0, double rho, int M = 64) {
    cplx s = 0;
    for (int k = 0; k < M; ++k) {
        cplx u = std::polar(rho, kTwoPi * (k + 0.5) / M);
        s += f(x0 + u) / u;
    }
    return s / double(M);
}

nlohmann::json cjson(cplx z) { return nlohmann::json::array({z.real(), z.imag()}); }

cplx parse_complex(const nlohmann::json& j, const std::string& path) {
    if (j.is_number()) return j.get<double>();
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
        return {j[0].get<double>(), j[1].get<double>()};
    throw ConfigError(path + ": expected a number or [re, im]");
}

// winding number of psi along the circle |x| = r
double winding(const EvalContext& c, double r, double& minabs, int M = 4096) {
    double total = 0;
    cplx prev = psi(c, cplx(r, 0));
    minabs = std::abs(prev);
    for (int k = 1; k <= M; ++k) {
        cplx v = psi(c, std::polar(r, kTwoPi * k / M));
        minabs = std::min(minabs, std::abs(v));
        total += std::arg(v / prev);
        prev = v;
    }
    return total / kTwoPi;
}

// winding along a closed polygon (additive-mode rectangles)
double winding_path(const EvalContext& c, const std::vector<cplx>& corners, double& minabs, int per_edge = 2000) {
    double total = 0;
    cplx prev = psi(c, corners[0]);
    minabs = std::abs(prev);
    for (size_t e = 0; e < corners.size(); ++e) {
        cplx a = corners[e], b = corners[(e + 1) % corners.size()];
        for (int k = 1; k <= per_edge; ++k) {
            cplx v = psi(c, a + (b - a) * (double(k) / per_edge));
            minabs = std::min(minabs, std::abs(v));
            total += std::arg(v / prev);
            prev = v;
        }
    }
    return total / kTwoPi;
}

}  // namespace

EvalContext make_context(GenusFunction g, cplx q) {
    if (g.mode != Mode::multiplicative) throw std::invalid_argument("make_context: additive genus");
    if (std::abs(q) <= 1) throw std::invalid_argument("need |q| > 1");
    EvalContext c;
    c.q = q;
    c.mode = Mode::multiplicative;
    c.genus = std::move(g);
    c.scale = 1.0 / std::log(std::abs(q));
    return c;
}

EvalContext make_additive_context(GenusFunction g) {
    if (g.mode != Mode::additive) throw std::invalid_argument("make_additive_context: multiplicative genus");
    EvalContext c;
    c.q = 1.0;
    c.mode = Mode::additive;
    c.genus = std::move(g);
    c.scale = 0;
    return c;
}

GenusFunction constant_genus(cplx value) {
    GenusFunction g;
    g.psi = [value](cplx) { return value; };
    g.origin_value = value;
    g.kind = "constant";
    g.critical_zeros_only = true;
    g.spec = {{"kind", "constant"}, {"value", cjson(value)}};
    return g;
}

GenusFunction one_minus_c_over_x(cplx cc) {
    GenusFunction g;
    g.psi = [cc](cplx x) { return 1.0 - cc / x; };
    g.zeros = {cc};
    g.origin_value = 1.0 - cc;
    g.kind = "one_minus_c_over_x";
    g.critical_zeros_only = std::abs(cc) < 1;  // the lower bound depends on q, see check_hypotheses
    g.spec = {{"kind", g.kind}, {"c", cjson(cc)}};
    return g;
}

GenusFunction s_plus_c(double cc) {
    GenusFunction g;
    g.mode = Mode::additive;
    g.psi = [cc](cplx s) { return s + cc; };
    g.zeros = {-cc};
    g.origin_value = cc;
    g.kind = "s_plus_c";
    g.critical_zeros_only = cc > 0 && cc < 1;
    g.spec = {{"kind", g.kind}, {"c", cc}};
    return g;
}

GenusFunction bridge_genus(double cc, double q) {
    double L = std::log(q), cm = std::pow(q, -cc);
    GenusFunction g;
    g.psi = [L, cm](cplx x) { return (1.0 - cm / x) / L; };
    g.zeros = {cm};
    g.origin_value = (1.0 - cm) / L;
    g.kind = "bridge";
    g.critical_zeros_only = cc > 0 && cc < 1;
    g.spec = {{"kind", "bridge"}, {"c", cc}, {"q", q}};
    return g;
}

GenusFunction function_field_genus(const std::vector<cplx>& alphas, double q) {
    double sq = std::sqrt(q);
    for (auto& a : alphas)
        if (std::abs(std::abs(a) - sq) > 1e-9 * sq) {
            std::ostringstream os;
            os << "Frobenius eigenvalue " << a << " does not have absolute value sqrt(q)";
            throw std::invalid_argument(os.str());
        }
    // closed under conjugation; keep one of each pair
    std::vector<cplx> rest = alphas, half;
    std::vector<cplx> reals;
    while (!rest.empty()) {
        cplx a = rest.back();
        rest.pop_back();
        if (std::abs(a.imag()) < 1e-12 * sq) {
            reals.push_back(a);
            continue;
        }
        auto it = std::min_element(rest.begin(), rest.end(),
                                   [&](cplx u, cplx v) { return std::abs(u - std::conj(a)) < std::abs(v - std::conj(a)); });
        if (it == rest.end() || std::abs(*it - std::conj(a)) > 1e-9 * sq)
            throw std::invalid_argument("Frobenius eigenvalues not closed under conjugation");
        half.push_back(a.imag() > 0 ? a : *it);
        rest.erase(it);
    }
    std::sort(reals.begin(), reals.end(), [](cplx u, cplx v) { return u.real() < v.real(); });
    if (reals.size() % 2) throw std::invalid_argument("odd number of real Frobenius eigenvalues");
    for (size_t k = 0; k < reals.size(); k += 2) {
        if (std::abs(reals[k] - reals[k + 1]) > 1e-9 * sq)
            throw std::invalid_argument("real Frobenius eigenvalues must come in equal pairs");
        half.push_back(reals[k]);
    }
    int gg = half.size();
    cplx prod = 1.0;
    for (auto& a : half) prod *= a;
    cplx K = (gg % 2 == 1 ? 1.0 : -1.0) / prod;  // (-1)^{g-1} / prod
    cplx k = std::sqrt(K);                          // principal branch
    GenusFunction g;
    g.psi = [k, half](cplx y) {
        cplx out = k;
        for (auto& a : half) out *= a - 1.0 / y;
        return out;
    };
    for (auto& a : half) g.zeros.push_back(1.0 / a);
    g.origin_value = g.psi(1.0);
    g.kind = "function_field";
    g.critical_zeros_only = true;
    nlohmann::json al = nlohmann::json::array();
    for (auto& a : alphas) al.push_back(cjson(a));
    g.spec = {{"kind", g.kind}, {"alphas", al}, {"q", q}, {"genus", gg}, {"prefactor_branch", "principal"}};
    return g;
}

GenusFunction genus_from_json(const nlohmann::json& j, double q, const std::string& path) {
    if (!j.is_object()) throw ConfigError(path + ": expected an object");
    if (!j.contains("kind") || !j["kind"].is_string()) throw ConfigError(path + ".kind: missing or not a string");
    std::string kind = j["kind"];
    auto need = [&](const char* key) -> const nlohmann::json& {
        if (!j.contains(key)) throw ConfigError(path + "." + key + ": missing");
        return j[key];
    };
    if (kind == "constant") return constant_genus(j.contains("value") ? parse_complex(j["value"], path + ".value") : 1.0);
    if (kind == "one_minus_c_over_x") return one_minus_c_over_x(parse_complex(need("c"), path + ".c"));
    if (kind == "s_plus_c") {
        if (!need("c").is_number()) throw ConfigError(path + ".c: expected a number");
        return s_plus_c(j["c"].get<double>());
    }
    if (kind == "bridge") {
        if (!need("c").is_number()) throw ConfigError(path + ".c: expected a number");
        return bridge_genus(j["c"].get<double>(), j.contains("q") ? j["q"].get<double>() : q);
    }
    if (kind == "function_field") {
        std::vector<cplx> al;
        if (j.contains("alphas")) {
            if (!j["alphas"].is_array()) throw ConfigError(path + ".alphas: expected an array");
            for (size_t k = 0; k < j["alphas"].size(); ++k)
                al.push_back(parse_complex(j["alphas"][k], path + ".alphas[" + std::to_string(k) + "]"));
        } else if (j.contains("angles")) {
            if (!j["angles"].is_array()) throw ConfigError(path + ".angles: expected an array");
            for (size_t k = 0; k < j["angles"].size(); ++k) {
                if (!j["angles"][k].is_number()) throw ConfigError(path + ".angles[" + std::to_string(k) + "]: expected a number");
                double t = j["angles"][k].get<double>();
                al.push_back(std::polar(std::sqrt(q), t));
                al.push_back(std::polar(std::sqrt(q), -t));
            }
        }
        try {
            return function_field_genus(al, q);
        } catch (const std::invalid_argument& e) {
            throw ConfigError(path + ": " + e.what());
        }
    }
    throw ConfigError(path + ".kind: unknown genus kind '" + kind + "'");
}

cplx psi(const EvalContext& c, cplx x) { return c.genus.psi(x); }

cplx big_psi(const EvalContext& c, cplx x) {
    if (c.mode == Mode::additive) {
        if (x == 0.0) throw PoleError("Psi evaluated at its pole s = 0");
        return c.genus.psi(x) / x;
    }
    if (x == 1.0) throw PoleError("Psi evaluated at its pole x = 1");
    return c.genus.psi(x) / (1.0 - 1.0 / x);
}

cplx z_of(const EvalContext& c, cplx x) {
    if (c.mode == Mode::additive) {
        if (x == 0.0 || x == 1.0) throw PoleError("Z evaluated at a pole");
        return big_psi(c, -x) * big_psi(c, x - 1.0);
    }
    if (x == 1.0 || x == c.q) throw PoleError("Z evaluated at a pole");
    return big_psi(c, 1.0 / x) * big_psi(c, x / c.q);
}

cplx z1_of(const EvalContext& c, cplx x) {
    if (c.mode == Mode::additive) return -c.genus.psi(-x) * c.genus.psi(x - 1.0);
    return -c.genus.psi(1.0 / x) * c.genus.psi(x / c.q) / x;
}

cplx little_z(const EvalContext& c) {
    if (c.mode == Mode::additive) return -c.genus.psi(0.0) * c.genus.psi(-1.0);
    return c.genus.psi(1.0) * big_psi(c, 1.0 / c.q);
}

namespace {

double pole_radius(const EvalContext& c) {
    if (c.mode == Mode::additive) return std::min(0.25, 0.5 * c.genus.region);
    double r = std::min(0.25, 0.5 * (std::abs(c.q) - 1));
    return std::min(r, 0.5 * (1 - 1 / c.genus.region));
}

}  // namespace

PoleData big_psi_pole(const EvalContext& c) {
    double rho = pole_radius(c);
    cplx x0 = c.mode == Mode::additive ? 0.0 : 1.0;
    auto f = [&](cplx x) { return c.genus.psi(x); };
    return {f(x0), cauchy_derivative(f, x0, rho)};
}

PoleData z_pole(const EvalContext& c) {
    double rho = pole_radius(c);
    if (c.mode == Mode::additive) {
        auto g = [&](cplx s) { return -c.genus.psi(-s) * big_psi(c, s - 1.0); };
        return {g(0.0), cauchy_derivative(g, 0.0, rho)};
    }
    auto g = [&](cplx x) { return -c.genus.psi(1.0 / x) * big_psi(c, x / c.q) / x; };
    return {g(1.0), cauchy_derivative(g, 1.0, rho)};
}

cplx curve_zeta(const std::vector<cplx>& alphas, double q, cplx x) {
    cplx num = 1.0;
    for (auto& a : alphas) num *= 1.0 - a * x;
    return num / ((1.0 - x) * (1.0 - q * x));
}

cplx curve_xi(const std::vector<cplx>& alphas, double q, cplx s) {
    double g = alphas.size() / 2.0;
    return std::pow(cplx(q), (g - 1) * s) * curve_zeta(alphas, q, std::pow(cplx(q), -s));
}

int count_zeros_in_annulus(const EvalContext& c, double r1, double r2) {
    double m1, m2;
    double w = winding(c, r2, m2) - winding(c, r1, m1);
    return (int)std::lround(w);
}

double cauchy_reconstruction_error(const EvalContext& c) {
    std::vector<cplx> pts;
    if (c.mode == Mode::additive)
        pts = {cplx(0.3, 0.2), cplx(-0.5, 0), cplx(1.2, -1.0), cplx(-1.7, 2.5)};
    else
        pts = {std::polar(1.3, 0.4), std::polar(0.8, 2.0), cplx(2.5, 0), std::polar(std::abs(c.q), -1.0)};
    double worst = 0;
    for (auto& x0 : pts) {
        double rho;
        if (c.mode == Mode::additive) {
            if (std::abs(x0.real()) >= c.genus.region) continue;
            rho = std::min(0.3, 0.5 * (c.genus.region - std::abs(x0.real())));
        } else {
            double a = std::abs(x0);
            if (a <= 1 / c.genus.region || a >= c.genus.region) continue;
            rho = std::min({0.2 * a, 0.5 * (c.genus.region - a), 0.5 * (a - 1 / c.genus.region)});
        }
        const int M = 128;
        cplx s = 0;
        for (int k = 0; k < M; ++k) s += c.genus.psi(x0 + std::polar(rho, kTwoPi * (k + 0.5) / M));
        s /= double(M);
        cplx v = c.genus.psi(x0);
        worst = std::max(worst, std::abs(s - v) / std::max(1.0, std::abs(v)));
    }
    return worst;
}

std::vector<HypothesisResult> check_hypotheses(const EvalContext& c) {
    std::vector<HypothesisResult> out;
    HypothesisResult an{"analytic", false, "", {}};
    double err = cauchy_reconstruction_error(c);
    an.pass = err <= 1e-10;
    an.detail = "Cauchy reconstruction error " + std::to_string(err);
    out.push_back(an);

    if (c.mode == Mode::multiplicative) {
        double aq = std::abs(c.q);
        HypothesisResult z{"zeros_in_critical_annulus", true, "", {}};
        for (auto& zz : c.genus.zeros) {
            double a = std::abs(zz);
            z.witnesses.push_back(zz);
            if (!(a > 1 / aq && a < 1)) {
                z.pass = false;
                z.detail += "declared zero outside 1/|q| < |x| < 1; ";
            }
        }
        double R = std::min(c.genus.region * 0.99, 10 * aq), m_in, m_out, m_a, m_b;
        double w_out = winding(c, R, m_out), w1 = winding(c, 1.0, m_a), wq = winding(c, 1 / aq, m_b),
               w_in = winding(c, 1 / R, m_in);
        int outer = (int)std::lround(w_out - w1), inner = (int)std::lround(wq - w_in),
            crit = (int)std::lround(w1 - wq);
        double scale = std::max(1.0, std::abs(c.genus.origin_value));
        if (m_a < 1e-9 * scale || m_b < 1e-9 * scale) {
            z.pass = false;
            z.detail += "zero on the boundary of the critical annulus; ";
        }
        if (outer != 0 || inner != 0) {
            z.pass = false;
            z.detail += "zeros found outside the critical annulus by the argument principle; ";
        }
        z.detail += "argument-principle counts (inner, critical, outer) = (" + std::to_string(inner) + ", " +
                    std::to_string(crit) + ", " + std::to_string(outer) + ")";
        out.push_back(z);

        HypothesisResult p{"positivity_beyond_q", true, "", {}};
        if (std::abs(c.q.imag()) > 0) {
            p.pass = false;
            p.detail = "q not real; condition not applicable";
        } else {
            double q = c.q.real();
            for (int k = 1; k <= 60; ++k) {
                double x = q * std::exp(0.08 * k);
                cplx v = -c.genus.psi(1.0 / x) * c.genus.psi(x / q);
                if (!(std::abs(v.imag()) <= 1e-12 * std::abs(v) && v.real() > 0)) {
                    p.pass = false;
                    p.witnesses.push_back(x);
                }
            }
            p.detail = p.pass ? "-psi(1/x) psi(x/q) > 0 at 60 sample points x > q" : "sign or reality fails";
        }
        out.push_back(p);
    } else {
        HypothesisResult z{"zeros_in_critical_strip", true, "", {}};
        for (auto& zz : c.genus.zeros) {
            z.witnesses.push_back(zz);
            if (!(zz.real() > -1 && zz.real() < 0)) {
                z.pass = false;
                z.detail += "declared zero outside -1 < Re s < 0; ";
            }
        }
        double R = std::min(0.99 * c.genus.region, 6.0), T = 30, m1, m2;
        int right = (int)std::lround(winding_path(c, {{0, -T}, {R, -T}, {R, T}, {0, T}}, m1));
        int left = (int)std::lround(winding_path(c, {{-R, -T}, {-1, -T}, {-1, T}, {-R, T}}, m2));
        if (m1 < 1e-9 || m2 < 1e-9) {
            z.pass = false;
            z.detail += "zero on a boundary line; ";
        }
        if (left != 0 || right != 0) {
            z.pass = false;
            z.detail += "zeros found outside the strip; ";
        }
        z.detail += "argument-principle counts (left, right) = (" + std::to_string(left) + ", " + std::to_string(right) + ")";
        out.push_back(z);

        HypothesisResult p{"positivity_beyond_1", true, "", {}};
        for (int k = 1; k <= 60; ++k) {
            double s = 1 + 0.05 * k * k;
            cplx v = -c.genus.psi(-s) * c.genus.psi(s - 1.0);
            if (!(std::abs(v.imag()) <= 1e-12 * std::abs(v) && v.real() > 0)) {
                p.pass = false;
                p.witnesses.push_back(s);
            }
        }
        p.detail = p.pass ? "-psi(-s) psi(s-1) > 0 at 60 sample points s > 1" : "sign or reality fails";
        out.push_back(p);
    }
    return out;
}

bool hypotheses_pass(const std::vector<HypothesisResult>& r) {
    return std::all_of(r.begin(), r.end(), [](const HypothesisResult& h) { return h.pass; });
}

nlohmann::json describe(const EvalContext& c) {
    nlohmann::json j;
    j["mode"] = c.mode == Mode::additive ? "additive" : "multiplicative";
    if (c.mode == Mode::multiplicative) j["q"] = cjson(c.q);
    j["genus"] = c.genus.spec;
    j["little_z"] = cjson(little_z(c));
    return j;
}

cplx LaurentPolynomial::operator()(const Point& y) const {
    cplx s = 0;
    for (auto& [lam, c] : terms) s += c * character(y, lam);
    return s;
}

LaurentPolynomial LaurentPolynomial::euler(int j) const {
    LaurentPolynomial out;
    for (auto& [lam, c] : terms)
        if (lam[j] != 0) out.terms[lam] = c * double(lam[j]);
    return out;
}

LaurentPolynomial LaurentPolynomial::act(const std::vector<WeylElement>& W, int w) const {
    // f(w^{-1} x) = sum c x^{w lam}
    LaurentPolynomial out;
    for (auto& [lam, c] : terms) out.terms[matvec(W[w].lam, lam)] += c;
    return out;
}

LaurentPolynomial LaurentPolynomial::operator+(const LaurentPolynomial& o) const {
    LaurentPolynomial out = *this;
    for (auto& [lam, c] : o.terms) out.terms[lam] += c;
    return out;
}

LaurentPolynomial LaurentPolynomial::scaled(cplx s) const {
    LaurentPolynomial out;
    for (auto& [lam, c] : terms) out.terms[lam] = c * s;
    return out;
}

TestFunction as_function(const LaurentPolynomial& f) {
    return [f](const Point& y) { return f(y); };
}

LaurentPolynomial monomial(const IntVec& lam, cplx c) {
    LaurentPolynomial f;
    f.terms[lam] = c;
    return f;
}

LaurentPolynomial dual_star(const LaurentPolynomial& f) {
    LaurentPolynomial out;
    for (auto& [lam, c] : f.terms) {
        IntVec m = lam;
        for (auto& v : m) v = -v;
        out.terms[m] += std::conj(c);
    }
    return out;
}

TestFunction dual_star(const TestFunction& f) {
    return [f](const Point& y) {
        Point z(y.size());
        for (size_t j = 0; j < y.size(); ++j) z[j] = 1.0 / std::conj(y[j]);
        return std::conj(f(z));
    };
}

nlohmann::json to_json(const LaurentPolynomial& f) {
    nlohmann::json t = nlohmann::json::array();
    for (auto& [lam, c] : f.terms) t.push_back({{"exp", lam}, {"coef", cjson(c)}});
    return {{"terms", t}};
}

LaurentPolynomial laurent_from_json(const nlohmann::json& j, int rank, const std::string& path) {
    const nlohmann::json* terms = &j;
    if (j.is_object()) {
        if (!j.contains("terms")) throw ConfigError(path + ".terms: missing");
        terms = &j["terms"];
    }
    if (!terms->is_array()) throw ConfigError(path + ": expected an array of terms");
    LaurentPolynomial f;
    for (size_t k = 0; k < terms->size(); ++k) {
        std::string p = path + ".terms[" + std::to_string(k) + "]";
        const auto& t = (*terms)[k];
        if (!t.is_object() || !t.contains("exp")) throw ConfigError(p + ".exp: missing");
        if (!t["exp"].is_array() || (int)t["exp"].size() != rank) throw ConfigError(p + ".exp: expected " + std::to_string(rank) + " integers");
        IntVec lam;
        for (auto& v : t["exp"]) {
            if (!v.is_number_integer()) throw ConfigError(p + ".exp: expected integers");
            lam.push_back(v.get<long long>());
        }
        f.terms[lam] += t.contains("coef") ? parse_complex(t["coef"], p + ".coef") : 1.0;
    }
    return f;
}

}  // namespace eis
