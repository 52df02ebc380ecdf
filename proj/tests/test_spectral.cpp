#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "eis/spectral.hpp"

using namespace eis;

namespace {

const double kQ = 1.5;

EvalContext psi_c(double q = kQ) { return make_context(one_minus_c_over_x(0.8 / q + 0.2), q); }

EvalContext genus_one(double q) {
    double s = std::sqrt(q);
    return make_context(function_field_genus({std::polar(s, 1.1), std::polar(s, -1.1)}, q), q);
}

const Group& group(const std::string& type, Lattice l = Lattice::adjoint) {
    static std::map<std::pair<std::string, Lattice>, Group> cache;
    auto key = std::make_pair(type, l);
    if (!cache.count(key)) cache.emplace(key, make_group(type, l));
    return cache.at(key);
}

LaurentPolynomial sample_f(int rank, int seed) {
    std::mt19937 gen(seed);
    std::uniform_int_distribution<int> ex(-2, 2);
    std::normal_distribution<double> nd;
    LaurentPolynomial f;
    for (int k = 0; k < 3; ++k) {
        IntVec lam(rank);
        for (auto& v : lam) v = ex(gen);
        f.terms[lam] += cplx(nd(gen), nd(gen));
    }
    return f;
}

ContourSpec shifted(const Group& G, double q, int nodes, Rat s = Rat(3, 2)) {
    ContourSpec c;
    c.rank = G.rd.rank;
    c.nodes = nodes;
    c.shift = G.rd.cochar_point(q, RatVec(c.rank, s));
    return c;
}

Point random_point(int rank, std::mt19937& gen, double spread = 0.3) {
    std::uniform_real_distribution<double> u(-1, 1);
    Point x(rank);
    for (auto& v : x) v = std::exp(cplx(spread * u(gen), 3 * u(gen)));
    return x;
}

double rel(cplx a, cplx b) { return std::abs(a - b) / (1 + std::abs(b)); }

}  // namespace

TEST_CASE("pairing integrand") {
    const auto& G = group("A1");
    auto ctx = psi_c();
    auto one = [](const Point&) { return cplx(1.0); };
    Point x = {cplx(2.3, 0.4)};
    cplx u = G.root_value(x, 0);
    cplx want = (1.0 + z_of(ctx, u) / z_of(ctx, kQ * u)) / little_z(ctx);
    CHECK(std::abs(eis_integrand(G, ctx, one, one, x) - want) < 1e-13 * std::abs(want));

    const auto& G2 = group("G2");
    CHECK(G2.inversions[0].empty());
    CHECK(G2.inversions[G2.w0].size() == 6);
    CHECK(G.inversions[G.w0].size() == 1);
}

TEST_CASE("inadmissible contour") {
    const auto& G = group("A2");
    auto ctx = psi_c();
    auto one = [](const Point&) { return cplx(1.0); };
    ContourSpec c = shifted(G, kQ, 16, Rat(1, 4));
    CHECK_THROWS_AS(eis_pairing(G, ctx, one, one, c), InadmissibleContour);
    try {
        eis_pairing(G, ctx, one, one, c);
    } catch (const InadmissibleContour& e) {
        CHECK(std::string(e.what()).find(G.rd.labels[0]) != std::string::npos);
    }
}

TEST_CASE("psi = 1 pairing against residues") {
    // simply connected A1, y = x^alpha = x^2: the w-sum is 1 + (q y - 1)/(y - q); for |y| > q the
    // residues of (q y - 1)/((y - q) y) at y = 0 and y = q add to q, and z = 1/(1 - q)
    const auto& G = group("A1", Lattice::simply_connected);
    for (double q : {2.0, 1.7}) {
        auto ctx = make_context(constant_genus(), q);
        auto one = [](const Point&) { return cplx(1.0); };
        ContourSpec c;
        c.rank = 1;
        c.shift = {2.0};
        c.nodes = 256;
        double res0 = 1 / q, resq = (q * q - 1) / q;
        cplx want = (1 + res0 + resq) * (1 - q);
        auto got = eis_pairing(G, ctx, one, one, c);
        CHECK(std::abs(got.value - want) < 1e-12);
    }
}

TEST_CASE("shift invariance") {
    for (auto& [type, lat] : std::vector<std::pair<std::string, Lattice>>{
             {"A1", Lattice::adjoint}, {"A1", Lattice::simply_connected}, {"A2", Lattice::adjoint}}) {
        const auto& G = group(type, lat);
        for (auto ctx : {psi_c(), genus_one(kQ)}) {
            auto f1 = sample_f(G.rd.rank, 3), f2 = sample_f(G.rd.rank, 4);
            int N = G.rd.rank == 1 ? 256 : 160;
            auto a = eis_pairing(G, ctx, as_function(f1), as_function(f2), shifted(G, kQ, N, Rat(3, 2)));
            auto b = eis_pairing(G, ctx, as_function(f1), as_function(f2), shifted(G, kQ, N, Rat(5, 2)));
            CHECK(rel(a.value, b.value) < 1e-10);
        }
    }
}

TEST_CASE("projector symmetry and the Langlands projector") {
    std::mt19937 gen(11);
    for (std::string type : {"A2", "G2"}) {
        const auto& G = group(type);
        auto ctx = psi_c();
        auto f = as_function(sample_f(G.rd.rank, 5));
        for (int trial = 0; trial < 5; ++trial) {
            Point x = random_point(G.rd.rank, gen);
            for (int sign : {+1, -1}) {
                cplx base = projector_PB(G, ctx, f, sign, x);
                for (size_t w = 0; w < G.W.size(); ++w)
                    CHECK(rel(projector_PB(G, ctx, f, sign, act(G.W, w, x)), base) < 1e-10);
            }
            // idempotent
            TestFunction once = [&](const Point& y) { return langlands_projector(G, ctx, f, y); };
            cplx a = langlands_projector(G, ctx, once, x), b = once(x);
            CHECK(rel(a, b) < 1e-10);
            CHECK(rel(langlands_projector(G, ctx, f, x) * double(G.W.size()) * pi_factor(G, ctx, -1, x),
                      projector_PB(G, ctx, f, -1, x)) < 1e-12);
        }
    }
    const auto& G = group("A1");
    auto ctx = psi_c();
    auto one = [](const Point&) { return cplx(1.0); };
    Point x = {cplx(0.7, 0.9)};
    cplx a = x[0];
    cplx want = big_psi(ctx, 1.0 / a) / big_psi(ctx, 1.0 / (a * kQ)) + big_psi(ctx, a) / big_psi(ctx, a / kQ);
    CHECK(rel(projector_PB(G, ctx, one, +1, x), want) < 1e-13);
    CHECK_THROWS_AS(projector_PB(G, ctx, one, +1, Point{1.0}), NonRegularPoint);
}

TEST_CASE("restricted and full projector limits") {
    std::mt19937 gen(2);
    std::uniform_real_distribution<double> u(0, 1);
    for (std::string type : {"A2", "G2"}) {
        const auto& G = group(type);
        auto ctx = psi_c();
        auto f = as_function(sample_f(G.rd.rank, 8));
        for (auto& rec : G.orbits) {
            if (rec.support.empty()) continue;
            for (auto& cls : rec.classes) {
                std::vector<cplx> t(rec.tphi_dim);
                for (auto& v : t) v = std::polar(1.0, 2 * std::numbers::pi * u(gen));
                Point x = evaluation_point(G, kQ, rec, cls, t);
                for (int sign : {+1, -1}) {
                    cplx full = projector_limit(G, ctx, f, sign, x);
                    cplx part = restrict_projector(G, ctx, rec, f, sign, cls, t);
                    CHECK_MESSAGE(rel(part, full) < 1e-9, type, " ", rec.label, " ", cls.name);
                }
            }
        }
    }
}

TEST_CASE("G2 subregular three-cycle stratum vanishes") {
    const auto& G = group("G2");
    auto ctx = psi_c();
    const auto& rec = G.orbit("G2(a1)");
    int s6 = -1;
    for (int w : rec.W_e)
        if (w != 0) s6 = w;
    REQUIRE(s6 > 0);
    auto f = as_function(sample_f(2, 1));
    for (auto& cls : rec.classes) {
        Point x = evaluation_point(G, kQ, rec, cls, {});
        cplx part = projector_limit(G, ctx, f, +1, x, coset_elements(rec, G.W, s6));
        if (cls.name == "(123)") CHECK(std::abs(part) < 1e-9);
        if (cls.name == "1") CHECK(std::abs(part) > 1e-3);
    }
}

TEST_CASE("density forms agree") {
    std::mt19937 gen(7);
    std::uniform_real_distribution<double> u(0, 1);
    for (std::string type : {"A1", "A2", "G2"}) {
        const auto& G = group(type);
        auto ctx = psi_c();
        for (auto& rec : G.orbits) {
            std::uniform_int_distribution<int> pick(0, rec.classes.size() - 1);
            for (int k = 0; k < 100; ++k) {
                const auto& cls = rec.classes[pick(gen)];
                std::vector<cplx> t(rec.tphi_dim);
                for (auto& v : t) v = std::polar(1.0, 2 * std::numbers::pi * u(gen));
                auto d = orbit_density(G, ctx, rec, cls, t);
                CHECK(rel(d.z_form, d.z_from_psi) < 1e-10 * (1 + std::abs(d.z_from_psi)) + 1e-10);
            }
        }
    }
    // zero orbit value at t = 1: Psi(q^-1 g)/psi(g) with the rank-many Cartan weights
    const auto& G = group("A1");
    auto ctx = psi_c();
    const auto& rec = G.orbits[0];
    std::vector<cplx> t(rec.tphi_dim, std::polar(1.0, 0.4));
    Point x = evaluation_point(G, kQ, rec, rec.classes[0], t);
    cplx a = G.root_value(x, 0);
    cplx want = big_psi(ctx, 1 / kQ) * big_psi(ctx, a / kQ) * big_psi(ctx, 1.0 / (a * kQ)) /
                (psi(ctx, 1.0) * psi(ctx, a) * psi(ctx, 1.0 / a)) / std::pow(big_psi(ctx, 1 / kQ), 2);
    CHECK(rel(orbit_density(G, ctx, rec, rec.classes[0], t).psi_form, want) < 1e-13);
}

TEST_CASE("regular orbit closed form and residues") {
    for (auto& [type, lat] : std::vector<std::pair<std::string, Lattice>>{{"A1", Lattice::adjoint},
                                                                         {"A1", Lattice::simply_connected},
                                                                         {"A2", Lattice::adjoint},
                                                                         {"A2", Lattice::simply_connected},
                                                                         {"G2", Lattice::adjoint}}) {
        const auto& G = group(type, lat);
        for (auto ctx : {psi_c(), genus_one(1.7)}) {
            auto f1 = as_function(sample_f(G.rd.rank, 21)), f2 = as_function(sample_f(G.rd.rank, 22));
            auto oc = orbit_contribution(G, ctx, G.orbits.back(), f1, f2);
            CHECK(rel(oc.value, regular_closed_form(G, ctx, f1, f2)) < 1e-10);
            for (auto r : regular_residues(G, ctx)) CHECK(std::abs(r - 1.0) < 1e-10);
        }
    }
}

TEST_CASE("main identity, A1 and A2") {
    for (auto& [type, lat] : std::vector<std::pair<std::string, Lattice>>{
             {"A1", Lattice::adjoint}, {"A1", Lattice::simply_connected}, {"A2", Lattice::adjoint}}) {
        const auto& G = group(type, lat);
        auto ctx = psi_c();
        int N = G.rd.rank == 1 ? 512 : 256;
        auto f1 = sample_f(G.rd.rank, 31), f2 = sample_f(G.rd.rank, 32);
        auto lhs = eis_pairing(G, ctx, as_function(f1), as_function(f2), shifted(G, kQ, N));
        OrbitOptions o;
        o.nodes = N;
        auto rhs = spectral_sum(G, ctx, as_function(f1), as_function(f2), o);
        CHECK(rhs.orbits.size() == G.orbits.size());
        CHECK_MESSAGE(rel(lhs.value, rhs.total) < 1e-8, type);
        // a 1% error in one density is visible
        std::map<std::string, OrbitOptions> bad = {{G.orbits.back().label, o}};
        bad.begin()->second.density_scale = 1.01;
        auto off = spectral_sum(G, ctx, as_function(f1), as_function(f2), o, bad);
        CHECK(rel(lhs.value, off.total) > 1e-6);
    }
    CHECK(group("A1").orbits.size() == 2);
    CHECK(group("A2").orbits.size() == 3);
}

TEST_CASE("G2 subregular closed forms") {
    const auto& G = group("G2");
    auto ctx = psi_c();
    const auto& rec = G.orbit("G2(a1)");
    for (int seed : {41, 42}) {
        auto f1 = sample_f(2, seed), f2 = sample_f(2, seed + 100);
        auto cf = g2_subregular_closed_forms(ctx, f1, f2);
        auto oc = orbit_contribution(G, ctx, rec, as_function(f1), as_function(f2));
        CHECK(rel(oc.value, cf.total()) < 1e-9);
        REQUIRE(oc.class_values.size() == 3);
        CHECK(rel(oc.class_values[0], cf.identity) < 1e-9);
    }
    // f = 1: the D-operator reduces to m1 + 2 c0
    LaurentPolynomial one = monomial({0, 0});
    auto p = z_pole(ctx);
    CHECK(std::abs(g2_d_operator(ctx, one) - (p.m1 + 2.0 * p.c0)) < 1e-12);
}

TEST_CASE("zero orbit: reduced and general forms") {
    for (std::string type : {"A1", "A2"}) {
        const auto& G = group(type);
        auto ctx = psi_c();
        auto f1 = as_function(sample_f(G.rd.rank, 51)), f2 = as_function(sample_f(G.rd.rank, 52));
        OrbitOptions o;
        o.nodes = 256;
        auto red = orbit_contribution(G, ctx, G.orbits[0], f1, f2, o);
        o.zero_orbit_general = true;
        auto gen = orbit_contribution(G, ctx, G.orbits[0], f1, f2, o);
        CHECK(rel(red.value, gen.value) < 1e-9);
    }
}

TEST_CASE("rescaling the representative") {
    for (std::string type : {"A2", "G2"}) {
        const auto& G = group(type);
        auto ctx = psi_c();
        auto f1 = as_function(sample_f(G.rd.rank, 61)), f2 = as_function(sample_f(G.rd.rank, 62));
        OrbitOptions o;
        o.nodes = 32;
        for (auto& rec : G.orbits) {
            if (rec.support.empty()) continue;
            RatVec e = rec.triple.e;
            Rat k = 3;
            for (auto& v : e) {
                v *= k;
                k = -k / 2;
            }
            OrbitRecord other = orbit_record(G.L, complete_sl2(G.L, e), rec.label);
            other.classes = rec.classes;
            auto a = orbit_contribution(G, ctx, rec, f1, f2, o), b = orbit_contribution(G, ctx, other, f1, f2, o);
            CHECK(rel(a.value, b.value) < 1e-10);
        }
    }
}

TEST_CASE("hermitian norm") {
    const auto& G = group("A1");
    auto ctx = psi_c();
    OrbitOptions o;
    o.nodes = 512;
    auto zero = hermitian_norm(G, ctx, LaurentPolynomial{}, o);
    CHECK(zero.value == 0.0);
    LaurentPolynomial f = monomial({1});
    f.terms[{-1}] = 1.0;
    auto h = hermitian_norm(G, ctx, f, o);
    CHECK(h.positive);
    CHECK(h.value > 0);
    CHECK(h.worst_imag_ratio < 1e-10);
    for (size_t k = 0; k < h.per_orbit.size(); ++k) CHECK(rel(h.per_orbit[k], h.per_orbit_abs_form[k]) < 1e-10);
}

TEST_CASE("additive identity and the bridge") {
    auto ac = make_additive_context(s_plus_c(0.4));
    auto f = [](cplx s) { return (1.0 + s * s) * std::exp(s * s); };
    auto cs = cohomological_identity_sides(ac, f);
    CHECK(std::abs(cs.lhs - cs.rhs) < 1e-8 * std::abs(cs.lhs));
    CHECK(std::abs(cs.rhs - cs.zero_orbit - cs.regular_orbit) < 1e-14 * std::abs(cs.rhs));
    double last = 1e300;
    for (double d : {0.1, 0.05, 0.025}) {
        double err = std::abs(bridge_value(0.4, 1 + d, f) - cs.lhs);
        CHECK(err < last);
        last = err;
    }
    // e^{s^2}: regular orbit is the point value at s = 1
    auto g = [](cplx s) { return std::exp(s * s); };
    auto cg = cohomological_identity_sides(ac, g);
    CHECK(std::abs(cg.lhs - cg.rhs) < 1e-8 * std::abs(cg.lhs));
}

TEST_CASE("symbolic subregular point formula") {
    auto sc = g2_additive_symbolic(group("G2"));
    CHECK(sc.pole_cancels);
    CHECK(sc.matches);
    CHECK(std::abs(sc.sign) == 1);
    CHECK(sc.denominator == "xi(2)^3*xi(3)");
    CHECK_THROWS(g2_additive_symbolic(group("A2")));
}
