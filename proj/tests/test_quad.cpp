#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "eis/genus.hpp"
#include "eis/quad.hpp"

using namespace eis;

namespace {

ContourSpec circle(cplx r, int N = 64) {
    ContourSpec s;
    s.rank = 1;
    s.shift = {r};
    s.nodes = N;
    return s;
}

}  // namespace

TEST_CASE("characters are orthonormal") {
    for (cplx r : {cplx(1.0), cplx(2.0), cplx(0.5, 0.3)})
        for (int k = -4; k <= 4; ++k) {
            auto res = torus_integral([k](const std::vector<cplx>& x) { return std::pow(x[0], k); }, circle(r, 16));
            CHECK(std::abs(res.value - (k == 0 ? 1.0 : 0.0)) < 1e-13);
        }
    ContourSpec s;
    s.rank = 3;
    s.shift = {1.5, 0.7, 2.0};
    s.nodes = 8;
    auto res = torus_integral([](const std::vector<cplx>& x) { return 2.0 + x[0] * x[1] / x[2]; }, s);
    CHECK(std::abs(res.value - 2.0) < 1e-13);
}

TEST_CASE("geometric series and the scissor contrast") {
    auto f = [](const std::vector<cplx>& x) { return 1.0 / (1.0 - 1.0 / x[0]); };
    auto out = torus_integral(f, circle(2.0, 128));
    CHECK(std::abs(out.value - 1.0) < 1e-14);
    auto in = torus_integral(f, circle(0.5, 128));
    CHECK(std::abs(in.value) < 1e-14);
    // error estimate shrinks with N for an analytic integrand
    auto a = torus_integral(f, circle(1.2, 16)), b = torus_integral(f, circle(1.2, 64));
    CHECK(b.error_estimate < a.error_estimate);
    CHECK(std::abs(a.value - 1.0) <= 2 * a.error_estimate + 1e-15);
}

TEST_CASE("offset invariance and pole collision") {
    auto f = [](const std::vector<cplx>& x) { return std::exp(x[0]) / x[0] / x[0]; };  // constant term 1/2
    auto s = circle(1.0, 64);
    auto r1 = torus_integral(f, s);
    s.offsets = {0.123};
    auto r2 = torus_integral(f, s);
    CHECK(std::abs(r1.value - r2.value) < 1e-13);
    CHECK(std::abs(r1.value - 0.5) < 1e-13);

    auto g = [](const std::vector<cplx>& x) { return 1.0 / (x[0] - 1.0); };
    auto c = circle(1.0, 8);
    c.offsets = {0.0};
    CHECK_THROWS_AS(torus_integral(g, c), QuadError);
}

TEST_CASE("gaussian line integrals") {
    const double want = 1 / (2 * std::sqrt(std::numbers::pi));
    for (double sigma : {0.0, 0.7, 1.5}) {
        ContourSpec s;
        s.rank = 1;
        s.re_shift = {sigma};
        s.step = 0.05;
        auto r = line_integral([](const std::vector<cplx>& x) { return std::exp(x[0] * x[0]); }, s);
        CHECK(std::abs(r.value - want) < 1e-12);
        // Hermite moments: s^2 and s^4 against the sigma = 0 closed forms
        auto m2 = line_integral([](const std::vector<cplx>& x) { return x[0] * x[0] * std::exp(x[0] * x[0]); }, s);
        CHECK(std::abs(m2.value + want / 2) < 1e-12);
        auto m4 = line_integral([](const std::vector<cplx>& x) { return std::pow(x[0], 4) * std::exp(x[0] * x[0]); }, s);
        CHECK(std::abs(m4.value - 3 * want / 4) < 1e-12);
    }
    ContourSpec s;
    s.rank = 1;
    s.re_shift = {0.3};
    s.trunc_height = 3;
    CHECK_THROWS_AS(line_integral([](const std::vector<cplx>& x) { return std::exp(x[0] * x[0] / 4.0); }, s), QuadError);
    s.trunc_height = 0;
    CHECK_THROWS_AS(line_integral([](const std::vector<cplx>&) { return cplx(1.0); }, s), QuadError);
}

TEST_CASE("two-dimensional line integral") {
    ContourSpec s;
    s.rank = 2;
    s.re_shift = {0.4, -0.2};
    s.trunc_height = 8;
    s.step = 0.1;
    auto r = line_integral([](const std::vector<cplx>& x) { return std::exp(x[0] * x[0] + x[1] * x[1]); }, s);
    CHECK(std::abs(r.value - 1 / (4 * std::numbers::pi)) < 1e-12);
}

TEST_CASE("cancellation limit") {
    auto lin = cancellation_limit([](double e) { return cplx(2.0 + 3.0 * e); });
    CHECK(std::abs(lin.value - 2.0) < 1e-12);
    const double c = 1.7;
    auto canc = cancellation_limit([c](double e) { return (1 / e) - (1 / e) + c * e * e; });
    CHECK(std::abs(canc.value) < 1e-12);
    CHECK_THROWS_AS(cancellation_limit([](double e) { return cplx(1 / e); }), QuadError);

    // A1 with psi = 1: Psi(y) f(y) + Psi(1/y) f(1/y) at y = 1 + eps, f(y) = y; series oracle gives 3
    auto ctx = make_context(constant_genus(), 2.0);
    auto sum = [&](cplx y) { return big_psi(ctx, y) * y + big_psi(ctx, 1.0 / y) / y; };
    auto r = cancellation_limit([&](double e) { return sum(1.0 + e); });
    CHECK(std::abs(r.value - 3.0) < 1e-9);
    CHECK(std::abs(circle_limit([&](cplx e) { return sum(1.0 + e); }, 1e-2) - 3.0) < 1e-12);
}

TEST_CASE("weyl average") {
    cplx a = 1.0, b = cplx(0, 2), c = -0.5;
    CHECK(std::abs(weyl_average({a, b, c}, {1.0 / 6, 1.0 / 2, 1.0 / 3}) - (a / 6.0 + b / 2.0 + c / 3.0)) < 1e-15);
    CHECK(weyl_average({cplx(4.2)}, {1.0}) == cplx(4.2));
    auto u1 = torus_integral([](const std::vector<cplx>&) { return cplx(3.5); }, circle(1.0, 8));
    CHECK(std::abs(u1.value - 3.5) < 1e-15);
    CHECK_THROWS(weyl_average({a}, {0.5, 0.5}));
}
