#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "eis/genus.hpp"

using namespace eis;

namespace {

bool close(cplx a, cplx b, double tol = 1e-12) { return std::abs(a - b) <= tol * (1 + std::abs(b)); }

std::vector<cplx> genus1_alphas(double q, double theta) {
    return {std::polar(std::sqrt(q), theta), std::polar(std::sqrt(q), -theta)};
}

std::vector<cplx> random_points(int n, double rlo, double rhi, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> r(rlo, rhi), t(0, 2 * std::numbers::pi);
    std::vector<cplx> out;
    for (int k = 0; k < n; ++k) out.push_back(std::polar(r(rng), t(rng)));
    return out;
}

}  // namespace

TEST_CASE("big_psi examples") {
    auto one = make_context(constant_genus(), 2.0);
    CHECK(close(big_psi(one, 2.0), 2.0));
    CHECK_THROWS_AS(big_psi(one, 1.0), PoleError);

    auto c = make_context(one_minus_c_over_x(0.7), 2.0);
    CHECK(std::abs(big_psi(c, 0.7)) < 1e-15);

    auto a = make_additive_context(s_plus_c(0.3));
    CHECK(close(big_psi(a, 1.0), 1.3));
    CHECK_THROWS_AS(big_psi(a, 0.0), PoleError);
}

TEST_CASE("Z for the constant genus") {
    auto one = make_context(constant_genus(), 2.0);
    CHECK(close(z_of(one, 3.0), -1.5));
    for (auto x : random_points(8, 0.3, 4.0, 1)) {
        cplx want = (1.0 / (1.0 - x)) * (x / (x - 2.0));
        CHECK(close(z_of(one, x), want));
        CHECK(close(z1_of(one, x), -1.0 / x));
    }
    CHECK_THROWS_AS(z_of(one, 1.0), PoleError);
    CHECK_THROWS_AS(z_of(one, 2.0), PoleError);
    CHECK(close(little_z(one), -1.0));
}

TEST_CASE("Z for psi_c and s + c") {
    double q = 2.3, c = 0.8 / q + 0.2;
    auto ctx = make_context(one_minus_c_over_x(c), q);
    CHECK(close(little_z(ctx), (1 - c) * (1 - c * q) / (1 - q)));
    CHECK(close(z1_of(ctx, 1.0), -(1 - c) * (1 - c * q)));
    for (double x : {2.5, 3.0, 7.0, 40.0}) {
        cplx v = z1_of(ctx, x);
        CHECK(close(v, -(1 - c * x) * (1 - c * q / x) / x));
        CHECK(v.real() > 0);
    }
    for (auto x : random_points(8, 0.3, 4.0, 2)) CHECK(close(z1_of(ctx, x), (1.0 - 1.0 / x) * (1.0 - q / x) * z_of(ctx, x)));

    double cc = 0.35;
    auto a = make_additive_context(s_plus_c(cc));
    CHECK(close(little_z(a), -cc * (cc - 1)));
    for (auto s : random_points(8, 0.2, 3.0, 3)) CHECK(close(z_of(a, s), (cc - s) * (s - 1.0 + cc) / (-s * (s - 1.0))));
}

TEST_CASE("functional equation") {
    std::vector<EvalContext> ms = {make_context(constant_genus(), 2.0), make_context(one_minus_c_over_x(0.6), 2.0),
                                   make_context(function_field_genus(genus1_alphas(3.0, 0.9), 3.0), 3.0),
                                   make_context(one_minus_c_over_x(cplx(0.5, 0.2)), cplx(1.5, 0.4))};
    for (auto& c : ms)
        for (auto x : random_points(10, 0.4, 3.0, 4)) CHECK(close(z_of(c, x), z_of(c, c.q / x), 1e-11));
    auto a = make_additive_context(s_plus_c(0.4));
    for (auto s : random_points(10, 0.3, 3.0, 5)) CHECK(close(z_of(a, s), z_of(a, 1.0 - s), 1e-12));
}

TEST_CASE("residue at q and pole data at 1") {
    for (auto& ctx : {make_context(one_minus_c_over_x(0.7), 2.0),
                      make_context(function_field_genus(genus1_alphas(2.0, 1.3), 2.0), 2.0)}) {
        cplx z = little_z(ctx), q = ctx.q;
        double prev = 1e300;
        for (double eps : {1e-2, 1e-3, 1e-4, 1e-5}) {
            cplx v = z_of(ctx, q * (1 + eps)) * (1 - 1 / (1 + eps));
            double err = std::abs(v - z);
            CHECK(err < prev);
            prev = err;
        }
        CHECK(prev < 1e-4 * std::abs(z));

        auto p = z_pole(ctx);
        CHECK(close(p.m1, -z, 1e-12));
        double eps = 1e-6;
        cplx x = 1.0 + eps;
        cplx fd = z_of(ctx, x) - p.m1 / (1.0 - 1.0 / x);
        CHECK(std::abs(fd - p.c0) < 1e-4 * (1 + std::abs(p.c0)));

        auto bp = big_psi_pole(ctx);
        CHECK(close(bp.m1, psi(ctx, 1.0)));
        cplx fd2 = big_psi(ctx, x) - bp.m1 / (1.0 - 1.0 / x);
        CHECK(std::abs(fd2 - bp.c0) < 1e-4 * (1 + std::abs(bp.c0)));
    }
    auto a = make_additive_context(s_plus_c(0.3));
    auto p = z_pole(a);
    // Z(s) = (0.3 - s)(s - 0.7)/(s(1 - s)): residue -0.21, constant term by expansion
    CHECK(close(p.m1, -0.21, 1e-12));
    double eps = 1e-6;
    CHECK(std::abs((z_of(a, eps) - p.m1 / eps) - p.c0) < 1e-4);
    CHECK(close(p.m1, -little_z(a), 1e-12));
}

TEST_CASE("mode limit q -> 1") {
    double c = 0.4;
    auto a = make_additive_context(s_plus_c(c));
    cplx s(0.3, 0.7);
    double prev = 1e300;
    for (double d : {0.1, 0.01, 0.001}) {
        double q = 1 + d, L = std::log(q);
        auto m = make_context(bridge_genus(c, q), q);
        cplx v = z_of(m, std::exp(s * L)) * L * L;
        double err = std::abs(v - z_of(a, s));
        CHECK(err < prev);
        prev = err;
    }
    CHECK(prev < 1e-2);
}

TEST_CASE("function field factorization") {
    for (double q : {2.0, 3.0, 5.0}) {
        std::vector<std::vector<cplx>> lists = {{}, genus1_alphas(q, 0.7),
                                                {std::polar(std::sqrt(q), 0.4), std::polar(std::sqrt(q), -0.4),
                                                 std::polar(std::sqrt(q), 2.1), std::polar(std::sqrt(q), -2.1)},
                                                {cplx(std::sqrt(q), 0), cplx(std::sqrt(q), 0)},
                                                {cplx(-std::sqrt(q), 0), cplx(-std::sqrt(q), 0)}};
        for (auto& al : lists) {
            auto g = function_field_genus(al, q);
            auto ctx = make_context(g, q);
            std::mt19937 rng(7);
            std::uniform_real_distribution<double> u(-2, 2);
            for (int k = 0; k < 10; ++k) {
                cplx s(u(rng) * 0.5 + 0.5, u(rng));
                cplx qs = std::pow(cplx(q), s);
                cplx rhs = psi(ctx, 1.0 / qs) * psi(ctx, qs / q) / ((1.0 - qs) * (1.0 - q / qs));
                CHECK(close(curve_xi(al, q, s), rhs, 1e-10));
            }
            CHECK(hypotheses_pass(check_hypotheses(ctx)));
        }
    }
    CHECK(function_field_genus({}, 2.0).zeros.empty());
    CHECK(function_field_genus(genus1_alphas(2.0, 0.7), 2.0).zeros.size() == 1);
    CHECK_THROWS(function_field_genus({cplx(1.0, 0)}, 2.0));
    CHECK_THROWS(function_field_genus({std::polar(std::sqrt(2.0), 0.3), std::polar(std::sqrt(2.0), 0.5)}, 2.0));
}

TEST_CASE("zeros of Z on the critical circle") {
    double q = 3.0;
    auto ctx = make_context(function_field_genus(genus1_alphas(q, 1.1), q), q);
    // Newton on the entire part Z^1 from a spread of starting points
    int found = 0;
    for (auto x0 : random_points(24, 0.5, 4.0, 11)) {
        cplx x = x0;
        bool ok = false;
        for (int it = 0; it < 60; ++it) {
            cplx f = z1_of(ctx, x), h = 1e-7 * std::max(1.0, std::abs(x));
            cplx df = (z1_of(ctx, x + h) - z1_of(ctx, x - h)) / (2.0 * h);
            cplx step = f / df;
            x -= step;
            if (std::abs(step) < 1e-14 * std::abs(x)) {
                ok = true;
                break;
            }
        }
        if (ok && std::abs(z1_of(ctx, x)) < 1e-10) {
            ++found;
            CHECK(std::abs(std::abs(x) - std::sqrt(q)) < 1e-9);
        }
    }
    CHECK(found > 0);
    CHECK(count_zeros_in_annulus(ctx, 1 / q + 1e-3, 1 - 1e-3) == 1);
}

TEST_CASE("hypothesis examples") {
    double q = 2.0;
    CHECK(hypotheses_pass(check_hypotheses(make_context(one_minus_c_over_x(0.8 / q + 0.2), q))));
    CHECK(hypotheses_pass(check_hypotheses(make_context(one_minus_c_over_x(0.55), q))));

    auto one = check_hypotheses(make_context(constant_genus(), q));
    bool pos_failed = false;
    for (auto& h : one)
        if (h.name == "positivity_beyond_q") pos_failed = !h.pass;
    CHECK(pos_failed);

    // zero outside the critical annulus
    CHECK_FALSE(hypotheses_pass(check_hypotheses(make_context(one_minus_c_over_x(0.3), q))));
    CHECK_FALSE(hypotheses_pass(check_hypotheses(make_context(one_minus_c_over_x(1.5), q))));

    CHECK(hypotheses_pass(check_hypotheses(make_additive_context(s_plus_c(0.3)))));
    CHECK(hypotheses_pass(check_hypotheses(make_additive_context(s_plus_c(0.9)))));
    CHECK_FALSE(hypotheses_pass(check_hypotheses(make_additive_context(s_plus_c(1.4)))));

    // an evaluator that is not analytic
    GenusFunction bad = constant_genus();
    bad.psi = [](cplx x) { return std::norm(x); };
    CHECK(cauchy_reconstruction_error(make_context(bad, q)) > 1e-3);
}

TEST_CASE("genus from json") {
    auto g = genus_from_json(nlohmann::json::parse(R"({"kind":"one_minus_c_over_x","c":0.6})"), 2.0);
    CHECK(close(g.psi(2.0), 0.7));
    auto h = genus_from_json(nlohmann::json::parse(R"({"kind":"function_field","angles":[0.5]})"), 2.0);
    CHECK(h.zeros.size() == 1);
    CHECK(genus_from_json(nlohmann::json::parse(R"({"kind":"constant"})"), 2.0).kind == "constant");
    try {
        genus_from_json(nlohmann::json::parse(R"({"kind":"one_minus_c_over_x"})"), 2.0);
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("genus.c") != std::string::npos);
    }
    CHECK_THROWS_AS(genus_from_json(nlohmann::json::parse(R"({"kind":"nope"})"), 2.0), ConfigError);
    CHECK_THROWS_AS(genus_from_json(nlohmann::json::parse(R"({"kind":"function_field","alphas":[[1,0]]})"), 2.0),
                    ConfigError);
}

TEST_CASE("dual star") {
    auto one = monomial({0, 0});
    CHECK(dual_star(one) == one);
    auto f = monomial({1, -2}, cplx(0, 1));
    auto fs = dual_star(f);
    CHECK(fs.terms.size() == 1);
    CHECK(close(fs.terms.at({-1, 2}), cplx(0, -1)));

    std::mt19937 rng(3);
    std::uniform_int_distribution<int> e(-3, 3);
    std::normal_distribution<double> n;
    LaurentPolynomial r;
    for (int k = 0; k < 6; ++k) r.terms[{e(rng), e(rng)}] += cplx(n(rng), n(rng));
    CHECK(dual_star(dual_star(r)) == r);

    // callable form agrees with the coefficient form
    auto fc = dual_star(as_function(r));
    Point y = {std::polar(1.3, 0.2), std::polar(0.7, -1.1)};
    CHECK(close(fc(y), dual_star(r)(y)));

    auto j = to_json(r);
    CHECK(laurent_from_json(j, 2) == r);
}
