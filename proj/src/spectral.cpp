#include "eis/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

namespace eis {

namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;
const double kDirection[3] = {0.7548776662466927, 0.5698402909980532, 0.4301597090019468};

int weyl_product(const std::vector<WeylElement>& W, int a, int b) {
    IntMat m = matmul(W[a].matrix, W[b].matrix);
    for (size_t k = 0; k < W.size(); ++k)
        if (W[k].matrix == m) return k;
    throw std::logic_error("weyl_product: not closed");
}

Point perturbed(const Point& x, cplx eps) {
    Point y = x;
    for (size_t j = 0; j < y.size(); ++j) y[j] *= std::exp(eps * kDirection[j]);
    return y;
}

cplx ipow(cplx b, long long n) {
    cplx out = 1.0;
    if (n < 0) {
        b = 1.0 / b;
        n = -n;
    }
    for (long long k = 0; k < n; ++k) out *= b;
    return out;
}

}  // namespace

const OrbitRecord& Group::orbit(const std::string& label) const { return orbits.at(orbit_index(label)); }

int Group::orbit_index(const std::string& label) const {
    for (size_t k = 0; k < orbits.size(); ++k)
        if (orbits[k].label == label) return k;
    throw std::out_of_range("no orbit labelled '" + label + "'");
}

Group make_group(const std::string& type, Lattice lattice, const CatalogOptions& opt) {
    Group G;
    G.rd = build_root_system(type, lattice);
    G.W = enumerate_weyl(G.rd);
    G.L = build_lie_algebra(G.rd);
    G.orbits = orbit_catalog(G.L, opt);
    G.center = center(G.rd);
    G.w0 = longest_index(G.W);
    for (auto& w : G.W) {
        std::vector<int> inv;
        for (int a = 0; a < G.rd.npos; ++a)
            if (!G.rd.positive(G.rd.index_of(weyl_apply(G.W[w.inverse], G.rd.roots[a])))) inv.push_back(a);
        G.inversions.push_back(inv);
    }
    return G;
}

cplx eis_integrand(const Group& G, const EvalContext& ctx, const TestFunction& f1, const TestFunction& f2,
                   const Point& x) {
    cplx tot = 0;
    for (size_t w = 0; w < G.W.size(); ++w) {
        cplx term = f2(act(G.W, G.W[w].inverse, x));
        for (int a : G.inversions[w]) {
            cplx u = G.root_value(x, a);
            term *= z_of(ctx, u) / z_of(ctx, ctx.q * u);
        }
        tot += term;
    }
    return f1(x) * tot / std::pow(little_z(ctx), G.rd.rank);
}

QuadResult eis_pairing(const Group& G, const EvalContext& ctx, const TestFunction& f1, const TestFunction& f2,
                       const ContourSpec& contour) {
    if ((int)contour.shift.size() != G.rd.rank) throw std::invalid_argument("eis_pairing: shift has wrong length");
    std::string bad;
    for (int a = 0; a < G.rd.npos; ++a)
        if (std::abs(character(contour.shift, G.rd.root_lam[a])) <= std::abs(ctx.q)) bad += " " + G.rd.labels[a];
    if (!bad.empty()) throw InadmissibleContour("contour shift needs |shift^a| > |q| for all positive roots; violated by" + bad);
    return torus_integral([&](const std::vector<cplx>& x) { return eis_integrand(G, ctx, f1, f2, x); }, contour);
}

QuadResult zero_orbit_reduced(const Group& G, const EvalContext& ctx, const TestFunction& f1, const TestFunction& f2,
                              int nodes) {
    ContourSpec c;
    c.rank = G.rd.rank;
    c.shift.assign(c.rank, 1.0);
    c.nodes = nodes;
    return torus_integral([&](const std::vector<cplx>& x) { return eis_integrand(G, ctx, f1, f2, x); }, c);
}

cplx pi_factor(const Group& G, const EvalContext& ctx, int sign, const Point& x) {
    cplx out = 1.0;
    for (int k = 0; k < G.rd.npos; ++k) {
        int a = sign > 0 ? G.rd.negative_of(k) : k;
        cplx u = G.root_value(x, a);
        out *= big_psi(ctx, u) / big_psi(ctx, u / ctx.q);
    }
    return out;
}

namespace {

cplx projector_sum(const Group& G, const EvalContext& ctx, const TestFunction& f, int sign, const Point& x,
                   const std::vector<int>& elements) {
    cplx tot = 0;
    auto term = [&](int w) {
        Point y = act(G.W, G.W[w].inverse, x);
        return pi_factor(G, ctx, sign, y) * f(y);
    };
    if (elements.empty())
        for (size_t w = 0; w < G.W.size(); ++w) tot += term(w);
    else
        for (int w : elements) tot += term(w);
    return tot;
}

}  // namespace

cplx projector_PB(const Group& G, const EvalContext& ctx, const TestFunction& f, int sign, const Point& x,
                  const std::vector<int>& elements) {
    for (int a = 0; a < G.rd.num_roots(); ++a)
        if (std::abs(G.root_value(x, a) - 1.0) < 1e-12)
            throw NonRegularPoint("projector_PB: x is not regular (x^" + G.rd.labels[a] + " = 1)");
    return projector_sum(G, ctx, f, sign, x, elements);
}

double limit_radius(const Group& G, const EvalContext& ctx, const Point& x) {
    const auto& rd = G.rd;
    double dmin = 1e300;
    for (int b = 0; b < rd.num_roots(); ++b) {
        double bv = 0;
        for (int j = 0; j < rd.rank; ++j) bv += rd.root_lam[b][j] * kDirection[j];
        bv = std::abs(bv);
        if (bv == 0) continue;
        cplx xb = G.root_value(x, b);
        for (auto& z : ctx.genus.zeros) dmin = std::min(dmin, std::abs(std::log(xb / (ctx.q * z))) / bv);
    }
    return std::min(1e-2, 0.25 * dmin);
}

cplx projector_limit(const Group& G, const EvalContext& ctx, const TestFunction& f, int sign, const Point& x,
                     const std::vector<int>& elements) {
    double rho = limit_radius(G, ctx, x);
    return circle_limit([&](cplx e) { return projector_sum(G, ctx, f, sign, perturbed(x, e), elements); }, rho);
}

cplx langlands_projector(const Group& G, const EvalContext& ctx, const TestFunction& f, const Point& x) {
    return projector_PB(G, ctx, f, -1, x) / (double(G.W.size()) * pi_factor(G, ctx, -1, x));
}

Point evaluation_point(const Group& G, cplx q, const OrbitRecord& rec, const ComponentClass& cls,
                       const std::vector<cplx>& t) {
    const auto& rd = G.rd;
    int r = rd.rank;
    if ((int)t.size() != rec.tphi_dim) throw std::invalid_argument("evaluation_point: T_phi point has wrong length");
    RatVec h(r);
    for (int i = 0; i < r; ++i) h[i] = Rat(rec.h[i], 2);
    Point x(r);
    for (int j = 0; j < r; ++j) {
        IntVec e(r, 0);
        e[j] = 1;
        x[j] = std::pow(q, rd.eval_cochar(e, h).to_double()) * std::polar(1.0, kTwoPi * cls.theta[j].to_double());
        for (int k = 0; k < rec.tphi_dim; ++k) x[j] *= ipow(t[k], rec.tphi_cochars[k][j]);
    }
    return x;
}

std::vector<int> restricted_elements(const Group& G, const OrbitRecord& rec, int sign) {
    std::set<int> out;
    for (int w : rec.W_e)
        for (int u : coset_elements(rec, G.W, w)) out.insert(sign > 0 ? u : weyl_product(G.W, u, G.w0));
    return {out.begin(), out.end()};
}

cplx restrict_projector(const Group& G, const EvalContext& ctx, const OrbitRecord& rec, const TestFunction& f, int sign,
                        const ComponentClass& cls, const std::vector<cplx>& t) {
    Point x = evaluation_point(G, ctx.q, rec, cls, t);
    return projector_limit(G, ctx, f, sign, x, restricted_elements(G, rec, sign));
}

DensityValue orbit_density(const Group& G, const EvalContext& ctx, const OrbitRecord& rec, const ComponentClass& cls,
                           const std::vector<cplx>& t) {
    const auto& rd = G.rd;
    int r = rd.rank;
    cplx q = ctx.q;
    DensityValue d;
    cplx num = 1.0, den = 1.0, zn = 1.0, zd = 1.0, weyl = 1.0;
    int dim_ge = 0;
    for (auto& e : cls.entries) {
        cplx u = std::polar(1.0, kTwoPi * e.angle.to_double());
        for (int k = 0; k < (int)e.tphi_weight.size(); ++k) u *= ipow(t[k], e.tphi_weight[k]);
        double half = e.i / 2.0;
        dim_ge += e.mult;
        for (int m = 0; m < e.mult; ++m) {
            num *= big_psi(ctx, std::pow(q, -1 - half) * u);
            den *= e.i == 0 ? psi(ctx, u) : big_psi(ctx, std::pow(q, half) * u);
            if (e.i > 0) zn *= 1.0 - std::pow(q, -half) * u;
            zd *= 1.0 - std::pow(q, -half - 1) * u;
            bool root = false;
            for (auto v : e.tphi_weight) root = root || v != 0;
            if (e.i == 0 && root) weyl *= 1.0 - u;
        }
    }
    d.psi_form = num / den / std::pow(big_psi(ctx, 1.0 / q), 2 * r);
    d.weyl = weyl;

    Point x = evaluation_point(G, q, rec, cls, t);
    cplx z1g = std::pow(z1_of(ctx, 1.0), r), psi2 = 1.0;
    for (int a = 0; a < rd.num_roots(); ++a) {
        cplx u = G.root_value(x, a);
        z1g *= z1_of(ctx, u);
        psi2 *= psi(ctx, u / q) * psi(ctx, u / q);
    }
    d.z_form = std::pow(q, -(rec.dim_g + dim_ge) / 2.0) * std::pow(1.0 - q, 2 * r) / z1g * zn / zd;
    d.z_from_psi = d.psi_form / psi2;
    return d;
}

namespace {

cplx orbit_integrand(const Group& G, const EvalContext& ctx, const OrbitRecord& rec, const ComponentClass& cls,
                     const TestFunction& f1, const TestFunction& f2, const std::vector<cplx>& t, const OrbitOptions& opt) {
    Point x = evaluation_point(G, ctx.q, rec, cls, t);
    std::vector<int> e1, e2;
    if (opt.method == ProjectorMethod::restricted) {
        e1 = restricted_elements(G, rec, +1);
        e2 = restricted_elements(G, rec, -1);
    }
    cplx p1 = projector_limit(G, ctx, f1, +1, x, e1);
    auto d = orbit_density(G, ctx, rec, cls, t);
    if (opt.abs_form) return std::norm(p1) * std::abs(d.psi_form * d.weyl) * opt.density_scale;
    cplx p2 = projector_limit(G, ctx, f2, -1, x, e2);
    return p1 * p2 * d.psi_form * d.weyl * opt.density_scale;
}

}  // namespace

OrbitContribution orbit_contribution(const Group& G, const EvalContext& ctx, const OrbitRecord& rec,
                                     const TestFunction& f1, const TestFunction& f2, const OrbitOptions& opt) {
    OrbitContribution oc;
    oc.label = rec.label;
    bool zero = rec.support.empty();
    if (zero && !opt.zero_orbit_general && !opt.abs_form) {
        auto res = zero_orbit_reduced(G, ctx, f1, f2, opt.nodes);
        oc.value = res.value * opt.density_scale;
        oc.error_estimate = res.error_estimate;
        oc.class_names = {"1"};
        oc.class_values = {oc.value};
        oc.diagnostics = {{"method", "reduced"}, {"nodes", opt.nodes}};
        return oc;
    }
    if (rec.component_external) oc.diagnostics["component_note"] = rec.component_note;
    for (auto& cls : rec.classes) {
        cplx v;
        double err = 0;
        if (rec.tphi_dim == 0) {
            v = orbit_integrand(G, ctx, rec, cls, f1, f2, {}, opt);
        } else {
            ContourSpec c;
            c.rank = rec.tphi_dim;
            c.shift.assign(c.rank, 1.0);
            c.nodes = opt.nodes;
            auto res = torus_integral([&](const std::vector<cplx>& t) { return orbit_integrand(G, ctx, rec, cls, f1, f2, t, opt); }, c);
            v = res.value / double(rec.weyl_phi_order);
            err = res.error_estimate / rec.weyl_phi_order;
        }
        double w = cls.weight.to_double();
        oc.class_names.push_back(cls.name);
        oc.class_values.push_back(w * v);
        oc.value += w * v;
        oc.error_estimate += w * err;
    }
    oc.diagnostics["method"] = opt.method == ProjectorMethod::restricted ? "restricted" : "full_limit";
    oc.diagnostics["nodes"] = rec.tphi_dim == 0 ? 0 : opt.nodes;
    oc.diagnostics["t_phi_dim"] = rec.tphi_dim;
    oc.diagnostics["weyl_phi_order"] = rec.weyl_phi_order;
    return oc;
}

SpectralSum spectral_sum(const Group& G, const EvalContext& ctx, const TestFunction& f1, const TestFunction& f2,
                         const OrbitOptions& opt, const std::map<std::string, OrbitOptions>& per_orbit) {
    SpectralSum s;
    for (auto& rec : G.orbits) {
        auto it = per_orbit.find(rec.label);
        auto oc = orbit_contribution(G, ctx, rec, f1, f2, it == per_orbit.end() ? opt : it->second);
        s.total += oc.value;
        s.error_estimate += oc.error_estimate;
        s.orbits.push_back(std::move(oc));
    }
    return s;
}

cplx regular_closed_form(const Group& G, const EvalContext& ctx, const TestFunction& f1, const TestFunction& f2) {
    const auto& rd = G.rd;
    RatVec rho(rd.rank), mrho(rd.rank);
    for (int i = 0; i < rd.rank; ++i) {
        rho[i] = Rat(rd.rho_check[i]);
        mrho[i] = -rho[i];
    }
    Point up = rd.cochar_point(ctx.q, rho), down = rd.cochar_point(ctx.q, mrho);
    cplx s = 0;
    for (int k = 0; k < G.center.order(); ++k) {
        Point c = G.center.point(k), a = up, b = down;
        for (int j = 0; j < rd.rank; ++j) {
            a[j] *= c[j];
            b[j] *= c[j];
        }
        s += f1(a) * f2(b);
    }
    cplx den = double(G.center.order());
    for (auto m : rd.exponents) den *= z_of(ctx, std::pow(ctx.q, double(m + 1)));
    return s / den;
}

std::vector<cplx> regular_residues(const Group& G, const EvalContext& ctx) {
    std::vector<cplx> out;
    cplx q = ctx.q;
    double rho = 0.5 * std::abs(q - 1.0);
    const int M = 128;
    for (int i = 0; i < G.rd.rank; ++i) {
        // x^{alpha_i} is the local coordinate u; Z(u) du/(2 pi i u) around u = q
        cplx s = 0;
        for (int k = 0; k < M; ++k) {
            cplx e = std::polar(1.0, kTwoPi * (k + 0.5) / M), u = q + rho * e;
            s += z_of(ctx, u) * rho * e / u;
        }
        out.push_back(s / double(M) / little_z(ctx));
    }
    return out;
}

HermitianNorm hermitian_norm(const Group& G, const EvalContext& ctx, const LaurentPolynomial& f, const OrbitOptions& opt,
                             const std::map<std::string, OrbitOptions>& per_orbit) {
    HermitianNorm h;
    auto s = spectral_sum(G, ctx, as_function(f), as_function(dual_star(f)), opt, per_orbit);
    for (auto& oc : s.orbits) {
        OrbitOptions o = per_orbit.count(oc.label) ? per_orbit.at(oc.label) : opt;
        o.abs_form = true;
        const auto& rec = G.orbit(oc.label);
        h.per_orbit_abs_form.push_back(orbit_contribution(G, ctx, rec, as_function(f), as_function(f), o).value.real());
        h.per_orbit.push_back(oc.value);
        double mag = std::abs(oc.value);
        double ratio = mag > 0 ? std::abs(oc.value.imag()) / mag : 0;
        h.worst_imag_ratio = std::max(h.worst_imag_ratio, ratio);
        if (oc.value.real() < -1e-10 * std::max(1.0, std::abs(s.total))) h.positive = false;
    }
    h.value = s.total.real();
    return h;
}

CohomologySides cohomological_identity_sides(const EvalContext& a, const AdditiveFunction& f, double s0, double step,
                                             double trunc_height) {
    if (a.mode != Mode::additive) throw std::invalid_argument("cohomological_identity_sides: needs an additive context");
    auto fbar = [&](cplx s) { return std::conj(f(std::conj(s))); };
    cplx zz = little_z(a);
    CohomologySides out;
    ContourSpec c;
    c.rank = 1;
    c.re_shift = {s0};
    c.step = step;
    c.trunc_height = trunc_height;
    auto lhs = line_integral(
        [&](const std::vector<cplx>& v) {
            cplx s = v[0];
            return (f(s) * fbar(-s) + f(s) * fbar(s) * z_of(a, s) / z_of(a, 1.0 + s)) / zz;
        },
        c);
    out.lhs = lhs.value;
    out.lhs_error = lhs.error_estimate;

    auto P = [&](cplx s) { return big_psi(a, -s) / big_psi(a, -s - 1.0) * f(s) + big_psi(a, s) / big_psi(a, s - 1.0) * f(-s); };
    auto dens = [&](cplx s) {
        cplx p0 = std::pow(psi(a, -1.0), -2) * big_psi(a, -1.0) * big_psi(a, s - 1.0) * big_psi(a, -s - 1.0) /
                  (psi(a, 0.0) * psi(a, s) * psi(a, -s));
        return std::abs(p0 * s * (-s));
    };
    ContourSpec z = c;
    z.re_shift = {0.0};
    z.im_offset = 0.381966011250105;
    auto zero = line_integral(
        [&](const std::vector<cplx>& v) {
            cplx p = P(v[0]);
            return cplx(0.5 * std::norm(p) * dens(v[0]));
        },
        z);
    out.zero_orbit = zero.value;
    out.regular_orbit = std::norm(big_psi(a, -1.0) / big_psi(a, -2.0) * f(1.0)) *
                        std::abs(big_psi(a, -2.0) / (std::pow(psi(a, -1.0), 2) * big_psi(a, 1.0)));
    out.rhs = out.zero_orbit + out.regular_orbit;
    out.rhs_error = zero.error_estimate;
    return out;
}

cplx bridge_value(double c, double q, const AdditiveFunction& f, int nodes, double s0) {
    static const Group G = make_group("A1", Lattice::adjoint);
    auto ctx = make_context(bridge_genus(c, q), q);
    double L = std::log(q);
    TestFunction fm = [&](const Point& x) { return f(std::log(x[0]) / L); };
    ContourSpec spec;
    spec.rank = 1;
    spec.shift = {std::pow(q, s0)};
    spec.nodes = nodes;
    auto r = eis_pairing(G, ctx, fm, dual_star(fm), spec);
    return r.value / (L * L);
}

}  // namespace eis
