// G2 subregular orbit in closed form, and the symbolic additive version of
// its identity-class point.

#include <numbers>

#include "eis/spectral.hpp"

namespace eis {

namespace {

// the s6 stratum term of the identity class: coefficient, Z argument q^k, point
struct StratumTerm {
    int coefficient = 3;
    int z_power = 2;  // Z(q^2)
};

LaurentPolynomial negate_exponents(const LaurentPolynomial& f) {
    LaurentPolynomial g;
    for (auto& [lam, c] : f.terms) {
        IntVec m = lam;
        for (auto& v : m) v = -v;
        g.terms[m] += c;
    }
    return g;
}

}  // namespace

cplx g2_d_operator(const EvalContext& ctx, const LaurentPolynomial& f) {
    cplx q = ctx.q;
    auto p = z_pole(ctx);
    Point x = {q, q};
    cplx der = 0;
    for (auto& [k, c] : f.terms) der += c * double(k[0] - k[1]) * character(x, k);
    return (p.m1 + 2.0 * p.c0) * f(x) + p.m1 * der;
}

G2ClosedForms g2_subregular_closed_forms(const EvalContext& ctx, const LaurentPolynomial& f1,
                                         const LaurentPolynomial& f2) {
    cplx q = ctx.q, nu = std::polar(1.0, 2 * std::numbers::pi / 3);
    auto Z = [&](cplx x) { return z_of(ctx, x); };
    StratumTerm st;
    auto E1 = [&](const LaurentPolynomial& f) {
        return g2_d_operator(ctx, f) + double(st.coefficient) * Z(std::pow(q, st.z_power)) * f({q, 1.0});
    };
    auto E2 = [&](const LaurentPolynomial& f) {
        return Z(-1.0) * (f({-q, q}) + f({q, -q})) + Z(-q * q) * f({-q, -1.0});
    };
    auto E3 = [&](const LaurentPolynomial& f) {
        return Z(1.0 / nu) * f({q * nu, q * nu * nu}) + Z(nu) * f({q * nu * nu, q * nu});
    };
    // w0 = -1 on the G2 torus
    LaurentPolynomial g = negate_exponents(f2);
    G2ClosedForms out;
    cplx q2 = q * q, q3 = q2 * q;
    out.identity = E1(f1) * E1(g) / (6.0 * std::pow(Z(q2), 3) * Z(q3));
    out.transposition = E2(f1) * E2(g) / (2.0 * Z(q2) * Z(q2) * Z(-q2) * Z(-q3));
    out.three_cycle = E3(f1) * E3(g) / (3.0 * Z(q2) * Z(q2 * nu) * Z(q2 * nu * nu) * Z(q3));
    return out;
}

namespace {

// polynomials over named symbols with rational coefficients
using Mono = std::map<std::string, int>;
using Poly = std::map<Mono, Rat>;

Poly sym(const std::string& s, Rat c = 1) { return {{{{s, 1}}, c}}; }
Poly cnst(Rat c) { return {{Mono{}, c}}; }

void clean(Poly& p) {
    for (auto it = p.begin(); it != p.end();) it = it->second == 0 ? p.erase(it) : std::next(it);
}

Poly add(Poly a, const Poly& b, Rat s = 1) {
    for (auto& [m, c] : b) a[m] += s * c;
    clean(a);
    return a;
}

Poly mul(const Poly& a, const Poly& b) {
    Poly out;
    for (auto& [ma, ca] : a)
        for (auto& [mb, cb] : b) {
            Mono m = ma;
            for (auto& [s, e] : mb) m[s] += e;
            out[m] += ca * cb;
        }
    clean(out);
    return out;
}

std::string str(const Poly& p) {
    if (p.empty()) return "0";
    std::string out;
    for (auto& [m, c] : p) {
        std::string mono;
        for (auto& [s, e] : m) mono += (mono.empty() ? "" : "*") + s + (e > 1 ? "^" + std::to_string(e) : "");
        std::string cs = to_string(c);
        bool neg = c < 0;
        if (neg) cs = to_string(-c);
        std::string term = mono.empty() ? cs : (cs == "1" ? mono : cs + "*" + mono);
        out += out.empty() ? (neg ? "-" : "") + term : (neg ? " - " : " + ") + term;
    }
    return out;
}

// truncated Laurent series in d = x1 - x2
using Series = std::map<int, Poly>;

Series smul(const Series& a, const Series& b, int max_power) {
    Series out;
    for (auto& [pa, ca] : a)
        for (auto& [pb, cb] : b)
            if (pa + pb <= max_power) out[pa + pb] = add(out[pa + pb], mul(ca, cb));
    return out;
}

// (12): x1 <-> x2 sends d to -d
Series swap12(const Series& s) {
    Series out;
    for (auto& [p, c] : s) out[p] = p % 2 ? add({}, c, -1) : c;
    return out;
}

}  // namespace

SymbolicCheck g2_additive_symbolic(const Group& G) {
    if (G.rd.type != "G2") throw std::invalid_argument("g2_additive_symbolic: needs G2");
    const auto& rec = G.orbit("G2(a1)");
    SymbolicCheck out;

    // xi(d) = -1/d + a + O(d); f at (x + d/2, x - d/2) = f(1,1) + (d/2) D1 f + O(d^2), D1 = d1 - d2
    Series xi = {{-1, cnst(-1)}, {0, sym("a")}};
    Series f = {{0, sym("f(1,1)")}, {1, sym("D1f(1,1)", Rat(1, 2))}};
    Series term = smul(xi, f, 0);
    Series sw = swap12(term);
    Series D;
    for (auto& [p, c] : term) D[p] = add(D[p], c);
    for (auto& [p, c] : sw) D[p] = add(D[p], c);
    out.pole_cancels = D[-1].empty();

    // stratum point: the nontrivial element of W(e) applied to h/2 in additive coordinates
    int w = -1;
    for (int v : rec.W_e)
        if (v != 0) w = v;
    if (w < 0) throw std::logic_error("g2_additive_symbolic: W(e) has no stratum element");
    IntVec s(G.rd.rank);
    {
        RatVec h(G.rd.rank);
        for (int i = 0; i < G.rd.rank; ++i) h[i] = Rat(rec.h[i], 2);
        IntVec half(G.rd.rank);
        for (int j = 0; j < G.rd.rank; ++j) {
            IntVec e(G.rd.rank, 0);
            e[j] = 1;
            half[j] = G.rd.eval_cochar(e, h).numerator();
        }
        const IntMat& L = G.W[G.W[w].inverse].lam;
        for (int j = 0; j < G.rd.rank; ++j) {
            long long v = 0;
            for (int k = 0; k < G.rd.rank; ++k) v += L[k][j] * half[k];
            s[j] = v;
        }
    }
    std::string point = "f(" + std::to_string(s[0]) + "," + std::to_string(s[1]) + ")";
    StratumTerm st;
    Poly E = add(D[0], mul(sym("xi(" + std::to_string(st.z_power) + ")", Rat(st.coefficient)), sym(point)));

    // denominator from the identity-class multiplicity spaces: prod xi(i/2 + 1)^n
    Poly den = cnst(1);
    Rat weight = 0;
    for (auto& cls : rec.classes)
        if (cls.name == "1") {
            weight = cls.weight;
            for (auto& e : cls.entries)
                for (int m = 0; m < e.mult; ++m) den = mul(den, sym("xi(" + std::to_string(e.i / 2 + 1) + ")"));
        }

    // template: the Langlands matrix entry, D1 f(1,1) - 2a f(1,1) - 3 xi(2) f(1,0)
    Poly T = add(add(sym("D1f(1,1)"), mul(sym("a"), sym("f(1,1)")), -2), mul(sym("xi(2)"), sym("f(1,0)")), -3);
    Poly Tden = mul(mul(mul(sym("xi(2)"), sym("xi(2)")), sym("xi(2)")), sym("xi(3)"));

    if (E == T)
        out.sign = 1;
    else if (E == add({}, T, -1))
        out.sign = -1;
    out.emitted = "(" + to_string(weight) + ") |" + str(E) + "|^2 / (" + str(den) + ")";
    out.template_form = "(1/6) |" + str(T) + "|^2 / (" + str(Tden) + ")";
    out.denominator = str(den);
    out.matches = out.pole_cancels && out.sign != 0 && den == Tden && weight == Rat(1, 6);
    nlohmann::json co;
    for (auto& [m, c] : E) {
        std::string key;
        for (auto& [sname, e] : m) key += (key.empty() ? "" : "*") + sname + (e > 1 ? "^" + std::to_string(e) : "");
        co[key.empty() ? "1" : key] = to_string(c);
    }
    out.coefficients = co;
    return out;
}

}  // namespace eis
