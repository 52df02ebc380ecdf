#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>

#include "eis/liealg.hpp"

using namespace eis;

namespace {

const OrbitRecord& find(const std::vector<OrbitRecord>& c, const std::string& name) {
    for (auto& r : c)
        if (r.label == name) return r;
    throw std::runtime_error("no orbit " + name);
}

int reflection_index(const RootDatum& rd, const std::vector<WeylElement>& W, const IntVec& beta) {
    int r = rd.rank;
    IntMat m(r, IntVec(r, 0));
    for (int k = 0; k < r; ++k) {
        IntVec e(r, 0);
        e[k] = 1;
        Rat p = rd.pair_coroot(e, beta);
        for (int a = 0; a < r; ++a) m[a][k] = e[a] - p.numerator() * beta[a];
    }
    for (size_t w = 0; w < W.size(); ++w)
        if (W[w].matrix == m) return w;
    return -1;
}

int word_index(const std::vector<WeylElement>& W, std::vector<int> word) {
    for (size_t w = 0; w < W.size(); ++w)
        if (W[w].word == word) return w;
    return -1;
}

const std::vector<std::string> kTypes = {"A1", "A1xA1", "A2", "B2", "C2", "G2"};

}  // namespace

TEST_CASE("A1 defining sl2") {
    auto L = build_lie_algebra(build_root_system("A1", Lattice::adjoint));
    CHECK(L.dim == 3);
    RatVec h = L.basis(0), e = L.root_vector(0), f = L.root_vector(1);
    RatVec two_e = e;
    for (auto& v : two_e) v *= 2;
    CHECK(L.bracket(h, e) == two_e);
    CHECK(L.bracket(e, f) == h);
}

TEST_CASE("Jacobi and dimension for every type") {
    for (auto& t : kTypes) {
        CAPTURE(t);
        auto rd = build_root_system(t, Lattice::adjoint);
        auto L = build_lie_algebra(rd);
        CHECK(L.dim == rd.rank + rd.num_roots());
        CHECK(L.jacobi_holds());
        // |N_{a,b}| = p + 1
        for (int a = 0; a < rd.num_roots(); ++a)
            for (int b = 0; b < rd.num_roots(); ++b) {
                long long N = L.structure_constant(a, b);
                if (N == 0) continue;
                long long p = 0;
                IntVec v = rd.roots[b];
                while (true) {
                    for (int i = 0; i < rd.rank; ++i) v[i] -= rd.roots[a][i];
                    if (rd.index_of(v) < 0) break;
                    ++p;
                }
                CHECK(std::llabs(N) == p + 1);
            }
    }
    CHECK(build_lie_algebra(build_root_system("G2", Lattice::adjoint)).dim == 14);
}

TEST_CASE("A2 highest root vector") {
    auto rd = build_root_system("A2", Lattice::adjoint);
    auto L = build_lie_algebra(rd);
    RatMat a = L.ad(L.root_vector(rd.index_of({1, 1})));
    RatMat a2 = matmul(a, a);
    RatMat a3 = matmul(a2, a);
    bool z2 = true, z3 = true;
    for (auto& row : a2) z2 = z2 && is_zero(row);
    for (auto& row : a3) z3 = z3 && is_zero(row);
    CHECK(!z2);
    CHECK(z3);
}

TEST_CASE("complete_sl2 examples") {
    auto rdA = build_root_system("A1", Lattice::adjoint);
    auto LA = build_lie_algebra(rdA);
    auto t = complete_sl2(LA, LA.root_vector(0));
    CHECK(triple_holds(LA, t));
    CHECK(t.h == LA.basis(0));

    auto rd = build_root_system("G2", Lattice::adjoint);
    auto L = build_lie_algebra(rd);
    RatVec e = L.zero();
    e[L.e_index(rd.index_of({3, 1}))] = 1;  // a2
    e[L.e_index(rd.index_of({1, 1}))] = 1;  // a5
    auto sub = complete_sl2(L, e);
    CHECK(triple_holds(L, sub));
    // 2 h_{a4}: a1 -> 0, a6 -> 2
    int a4 = rd.index_of({3, 2});
    IntVec expect;
    for (int i = 0; i < 2; ++i) {
        IntVec ai(2, 0);
        ai[i] = 1;
        expect.push_back(2 * rd.pair_coroot(ai, rd.roots[a4]).numerator());
    }
    CHECK(sub.h_dominant == expect);
    CHECK(sub.h_dominant == IntVec{0, 2});

    auto z = complete_sl2(L, L.zero());
    CHECK(is_zero(z.h));
    CHECK(is_zero(z.f));
    CHECK_THROWS(complete_sl2(L, L.basis(0)));
}

TEST_CASE("complete_sl2 on a non-dominant and a non-Cartan representative") {
    auto rd = build_root_system("A2", Lattice::adjoint);
    auto L = build_lie_algebra(rd);
    // e_{-a1}: h = -h_1, not dominant
    auto t = complete_sl2(L, L.root_vector(rd.index_of({-1, 0})));
    CHECK(triple_holds(L, t));
    CHECK(t.h_dominant == IntVec{1, 1});
    // e_{a1} + e_{a1+a2}: a minimal-orbit element whose natural h is outside the ansatz
    RatVec e = L.root_vector(rd.index_of({1, 0}));
    e[L.e_index(rd.index_of({1, 1}))] = 1;
    auto u = complete_sl2(L, e);
    CHECK(triple_holds(L, u));
    CHECK(u.h_dominant == IntVec{1, 1});
}

TEST_CASE("catalog sizes and orbit dimensions") {
    auto cat = [](const std::string& t) {
        return orbit_catalog(build_lie_algebra(build_root_system(t, Lattice::adjoint)));
    };
    CHECK(cat("A1").size() == 2);
    auto dims = [](const std::vector<OrbitRecord>& c) {
        std::vector<int> d;
        for (auto& r : c) d.push_back(r.orbit_dim);
        std::sort(d.begin(), d.end());
        return d;
    };
    CHECK(dims(cat("A2")) == std::vector<int>{0, 4, 6});
    CHECK(dims(cat("G2")) == std::vector<int>{0, 6, 8, 10, 12});
    CHECK(dims(cat("B2")) == std::vector<int>{0, 4, 6, 8});
    CHECK(dims(cat("C2")) == std::vector<int>{0, 4, 6, 8});
}

TEST_CASE("G2 subregular record") {
    auto rd = build_root_system("G2", Lattice::adjoint);
    auto L = build_lie_algebra(rd);
    auto c = orbit_catalog(L);
    auto& sr = find(c, "G2(a1)");
    CHECK(sr.h == IntVec{0, 2});
    CHECK(sr.c_e_dim == 4);
    CHECK(sr.ge_dims == std::map<int, int>{{2, 3}, {4, 1}});
    CHECK(sr.tphi_dim == 0);
    CHECK(sr.c_phi_dim == 0);
    REQUIRE(sr.classes.size() == 3);
    CHECK(sr.classes[0].weight == Rat(1, 6));
    CHECK(sr.classes[1].weight == Rat(1, 2));
    CHECK(sr.classes[2].weight == Rat(1, 3));

    auto W = enumerate_weyl(rd);
    int s6 = word_index(W, {1});
    std::vector<int> we = sr.W_e;
    std::sort(we.begin(), we.end());
    CHECK(we == std::vector<int>{0, s6});
    CHECK(sr.dclp.at(0) == 1);
    CHECK(sr.dclp.at(s6) == 0);
    // the coset of the reflection in a2 does not meet the fibre
    int s2 = reflection_index(rd, W, {3, 1});
    REQUIRE(s2 >= 0);
    for (int rep : sr.coset_reps) {
        auto els = coset_elements(sr, W, rep);
        if (std::find(els.begin(), els.end(), s2) != els.end()) CHECK(!dclp_dimension(L, sr, W, rep).has_value());
    }

    // catalog eigenvalues of 1 and (12) agree with the torus part computed from D
    Sl2Triple t = sr.triple;
    auto raw = orbit_record(L, t, "raw");
    REQUIRE(raw.classes.size() == 2);
    auto ev = [](const ComponentClass& cl) {
        std::vector<std::pair<int, Rat>> v;
        for (auto& e : cl.entries)
            for (int k = 0; k < e.mult; ++k) v.push_back({e.i, e.angle});
        std::sort(v.begin(), v.end());
        return v;
    };
    for (auto& rc : raw.classes) {
        bool matched = false;
        for (auto& cc : sr.classes)
            if (cc.theta == rc.theta) {
                CHECK(ev(cc) == ev(rc));
                matched = true;
            }
        CHECK(matched);
    }
}

TEST_CASE("regular and zero orbits") {
    for (auto& t : kTypes)
        for (auto lat : {Lattice::adjoint, Lattice::simply_connected}) {
            CAPTURE(t);
            auto rd = build_root_system(t, lat);
            auto L = build_lie_algebra(rd);
            auto W = enumerate_weyl(rd);
            auto c = orbit_catalog(L);
            auto& zero = c.front();
            CHECK(zero.coset_reps == std::vector<int>{0});
            CHECK(zero.W_e == std::vector<int>{0});
            CHECK(coset_elements(zero, W, 0).size() == W.size());
            CHECK(zero.weyl_phi_order == (int)W.size());
            auto& reg = c.back();
            CHECK(reg.W_e == std::vector<int>{0});
            CHECK(reg.c_phi_dim == 0);
            CHECK(reg.tphi_dim == 0);
            CHECK((int)reg.classes.size() == center(rd).order());
            CHECK(reg.orbit_dim == rd.num_roots());
        }
    auto rd = build_root_system("A1", Lattice::simply_connected);
    auto c = orbit_catalog(build_lie_algebra(rd));
    CHECK(c.back().classes.size() == 2);
}

TEST_CASE("A2 minimal orbit") {
    auto L = build_lie_algebra(build_root_system("A2", Lattice::adjoint));
    auto cat = orbit_catalog(L);
    auto& m = find(cat, "[2,1]");
    CHECK(m.tphi_dim == 1);
    CHECK(m.classes.size() == 1);
    CHECK(m.orbit_dim == 4);
    CHECK(m.h == IntVec{1, 1});
    CHECK(m.weyl_phi_order == 1);
}

TEST_CASE("structural invariants for every catalogued orbit") {
    for (auto& t : kTypes)
        for (auto lat : {Lattice::adjoint, Lattice::simply_connected}) {
            auto L = build_lie_algebra(build_root_system(t, lat));
            for (auto& rec : orbit_catalog(L)) {
                auto chk = check_orbit(L, rec);
                CAPTURE(t);
                CAPTURE(rec.label);
                for (auto& f : chk.failures) MESSAGE(f);
                CHECK(chk.ok());
                for (auto& s : rec.slice) CHECK(s.h_weight <= 0);
            }
        }
}

TEST_CASE("orbit data do not depend on the scale of the root vectors") {
    auto rd = build_root_system("G2", Lattice::adjoint);
    auto L = build_lie_algebra(rd);
    RatVec e = L.zero();
    e[L.e_index(rd.index_of({3, 1}))] = 1;
    e[L.e_index(rd.index_of({1, 1}))] = 1;
    RatVec e2 = L.zero();
    e2[L.e_index(rd.index_of({3, 1}))] = Rat(-3);
    e2[L.e_index(rd.index_of({1, 1}))] = Rat(5, 7);
    auto a = orbit_record(L, complete_sl2(L, e));
    auto b = orbit_record(L, complete_sl2(L, e2));
    CHECK(a.h == b.h);
    CHECK(a.ge_dims == b.ge_dims);
    CHECK(a.W_e == b.W_e);
    REQUIRE(a.weights.size() == b.weights.size());
    for (size_t k = 0; k < a.weights.size(); ++k) {
        CHECK(a.weights[k].mult == b.weights[k].mult);
        CHECK(a.weights[k].gamma == b.weights[k].gamma);
    }
}

TEST_CASE("cyclotomic zero test") {
    CHECK(cyclotomic_zero({{Rat(0), 1}, {Rat(1, 3), 1}, {Rat(2, 3), 1}}));
    CHECK(!cyclotomic_zero({{Rat(0), 1}, {Rat(1, 3), 1}}));
    CHECK(cyclotomic_zero({{Rat(1, 2), 1}, {Rat(0), 1}}));
    CHECK(cyclotomic_zero({{Rat(1, 4), 2}, {Rat(3, 4), 2}}));
    CHECK(!cyclotomic_zero({{Rat(1, 6), 1}}));
}
