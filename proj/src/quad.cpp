#include "eis/quad.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <thread>

namespace eis {

namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;
constexpr long long kBlocks = 256;

int thread_count(const ContourSpec& spec, long long work) {
    int t = spec.threads > 0 ? spec.threads : (int)std::max(1u, std::thread::hardware_concurrency());
    if (work < 4096) t = 1;
    return std::min<long long>(t, work);
}

// evaluates f on a product grid; returns the full-grid sum and the even-subgrid sum
struct GridSums {
    cplx full = 0, half = 0;
};

GridSums grid_sums(const TorusIntegrand& f, int k, int N, const std::function<cplx(int, int)>& coord,
                   int nthreads) {
    long long total = 1;
    for (int j = 0; j < k; ++j) total *= N;
    // fixed blocks summed in order, so the result does not depend on the thread count
    const long long nblocks = std::min<long long>(kBlocks, total);
    std::vector<GridSums> part(nblocks);
    std::vector<std::string> errors(nblocks);
    auto block = [&](long long b) {
        std::vector<cplx> x(k);
        std::vector<int> idx(k);
        long long lo = total * b / nblocks, hi = total * (b + 1) / nblocks;
        try {
            for (long long n = lo; n < hi; ++n) {
                long long m = n;
                bool even = true;
                for (int j = k - 1; j >= 0; --j) {
                    idx[j] = m % N;
                    m /= N;
                    x[j] = coord(j, idx[j]);
                    even = even && idx[j] % 2 == 0;
                }
                cplx v = f(x);
                if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
                    throw QuadError("non-finite integrand value at a quadrature node (pole collision; perturb the offset)");
                part[b].full += v;
                if (even) part[b].half += v;
            }
        } catch (const std::exception& e) {
            errors[b] = e.what();
        }
    };
    if (nthreads == 1) {
        for (long long b = 0; b < nblocks; ++b) block(b);
    } else {
        std::atomic<long long> next{0};
        std::vector<std::thread> th;
        for (int t = 0; t < nthreads; ++t)
            th.emplace_back([&] {
                for (long long b; (b = next++) < nblocks;) block(b);
            });
        for (auto& t : th) t.join();
    }
    GridSums out;
    for (long long b = 0; b < nblocks; ++b) {
        if (!errors[b].empty()) throw QuadError(errors[b]);
        out.full += part[b].full;
        out.half += part[b].half;
    }
    return out;
}

}  // namespace

const std::vector<double>& default_offsets() {
    static const std::vector<double> o = {0.6180339887498949, 0.41421356237309515, 0.7320508075688772};
    return o;
}

QuadResult torus_integral(const TorusIntegrand& f, const ContourSpec& spec) {
    int k = spec.rank, N = spec.nodes;
    if (k < 0 || k > 3) throw std::invalid_argument("torus_integral: rank must be 0..3");
    if (N < 2 || N % 2) throw std::invalid_argument("torus_integral: node count must be even and >= 2");
    if ((int)spec.shift.size() != k) throw std::invalid_argument("torus_integral: shift has wrong length");
    if (k == 0) {
        cplx v = f({});
        return {v, 0, 1};
    }
    const auto& off = spec.offsets.empty() ? default_offsets() : spec.offsets;
    if ((int)off.size() < k) throw std::invalid_argument("torus_integral: too few offsets");
    std::vector<std::vector<cplx>> nodes(k, std::vector<cplx>(N));
    for (int j = 0; j < k; ++j)
        for (int m = 0; m < N; ++m) nodes[j][m] = spec.shift[j] * std::polar(1.0, kTwoPi * (double(m) / N + off[j]));
    long long total = 1;
    for (int j = 0; j < k; ++j) total *= N;
    auto s = grid_sums(f, k, N, [&](int j, int m) { return nodes[j][m]; }, thread_count(spec, total));
    double half_total = double(total) / std::pow(2.0, k);
    QuadResult r;
    r.value = s.full / double(total);
    r.error_estimate = std::abs(r.value - s.half / half_total);
    r.N_used = N;
    return r;
}

QuadResult line_integral(const TorusIntegrand& f, const ContourSpec& spec) {
    int k = spec.rank;
    if (k < 1 || k > 3) throw std::invalid_argument("line_integral: rank must be 1..3");
    if ((int)spec.re_shift.size() != k) throw std::invalid_argument("line_integral: re_shift has wrong length");
    double h = spec.step, T = spec.trunc_height;
    if (T <= 0) {
        if (k != 1) throw std::invalid_argument("line_integral: automatic truncation needs rank 1");
        // grow until the samples have decayed below 1e-14 of the running maximum
        double mx = 0;
        int quiet = 0;
        for (int m = 0;; ++m) {
            double t = (m + spec.im_offset) * h;
            double a = std::max(std::abs(f({cplx(spec.re_shift[0], t)})), std::abs(f({cplx(spec.re_shift[0], -t)})));
            if (!std::isfinite(a)) throw QuadError("line_integral: non-finite sample");
            mx = std::max(mx, a);
            quiet = a < 1e-14 * mx ? quiet + 1 : 0;
            if (quiet >= int(1.0 / h)) {
                T = t;
                break;
            }
            if (t > 1e3) throw QuadError("line_integral: integrand does not decay along the line");
        }
    }
    int M = (int)std::ceil(T / h);
    if (M % 2) ++M;
    int N = 2 * M + 1;  // nodes -M..M; even offsets from the centre form the coarse grid
    long long total = 1;
    for (int j = 0; j < k; ++j) total *= N;
    std::vector<cplx> x(k);
    auto coord = [&](int j, int m) { return cplx(spec.re_shift[j], (m - M + spec.im_offset) * h); };
    // boundary decay check
    if (k == 1) {
        double edge = std::max(std::abs(f({coord(0, 0)})), std::abs(f({coord(0, N - 1)})));
        double mid = std::abs(f({coord(0, M)}));
        if (edge > 1e-10 * std::max(1.0, mid)) throw QuadError("line_integral: integrand has not decayed at the truncation height");
    }
    // even-index subgrid (relative to -M, M even) is the step-2h rule
    auto s = grid_sums(f, k, N, coord, thread_count(spec, total));
    double w = std::pow(h / kTwoPi, k), w2 = std::pow(2 * h / kTwoPi, k);
    QuadResult r;
    r.value = s.full * w;
    r.error_estimate = std::abs(r.value - s.half * w2);
    r.N_used = N;
    return r;
}

LimitResult cancellation_limit(const std::function<cplx(double)>& fn, double eps0, int levels) {
    if (levels < 2) throw std::invalid_argument("cancellation_limit: need at least 2 levels");
    std::vector<cplx> v(levels);
    std::vector<double> e(levels);
    for (int m = 0; m < levels; ++m) {
        e[m] = eps0 * std::pow(2.0, -m);
        v[m] = fn(e[m]);
        if (!std::isfinite(v[m].real()) || !std::isfinite(v[m].imag())) throw QuadError("cancellation_limit: non-finite sample");
    }
    auto neville = [&](std::vector<cplx> p, cplx& prev) {
        prev = p[levels - 1];
        for (int d = 1; d < levels; ++d) {
            prev = p[levels - 1];
            for (int m = levels - 1; m >= d; --m) p[m] = (p[m] * e[m - d] - p[m - 1] * e[m]) / (e[m - d] - e[m]);
        }
        return p[levels - 1];
    };
    // a genuine pole shows up as a nonzero limit of eps * fn(eps)
    std::vector<cplx> ev(levels);
    double scale = 0;
    for (int m = 0; m < levels; ++m) {
        ev[m] = e[m] * v[m];
        scale = std::max(scale, std::abs(ev[m]));
    }
    cplx dummy;
    if (std::abs(neville(ev, dummy)) > 1e-6 * scale) throw QuadError("cancellation_limit: samples diverge (genuine pole)");
    cplx prev;
    cplx val = neville(v, prev);
    return {val, std::abs(val - prev)};
}

cplx circle_limit(const std::function<cplx(cplx)>& fn, double radius, int M) {
    cplx s = 0;
    for (int k = 0; k < M; ++k) s += fn(std::polar(radius, kTwoPi * (k + 0.5) / M));
    return s / double(M);
}

cplx weyl_average(const std::vector<cplx>& class_values, const std::vector<double>& class_weights) {
    if (class_values.size() != class_weights.size()) throw std::invalid_argument("weyl_average: size mismatch");
    cplx s = 0;
    for (size_t k = 0; k < class_values.size(); ++k) s += class_weights[k] * class_values[k];
    return s;
}

}  // namespace eis
