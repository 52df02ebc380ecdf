#pragma once
// Trapezoid rules on shifted compact tori and on vertical affine subspaces,
// plus the limit helpers used where individual terms are singular.

#include <complex>
#include <functional>
#include <stdexcept>
#include <vector>

namespace eis {

using cplx = std::complex<double>;

struct QuadError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// default phase offsets, one per dimension, as fractions of a full turn
const std::vector<double>& default_offsets();

struct ContourSpec {
    int rank = 1;
    std::vector<cplx> shift;       // multiplicative: circle radii (complex allowed)
    std::vector<double> re_shift;  // additive: real parts of the vertical line
    int nodes = 64;                // per dimension; must be even
    std::vector<double> offsets;   // fractions of 2 pi; empty = default_offsets()
    double trunc_height = 0;       // additive: |Im s| <= T, 0 = automatic (rank 1 only)
    double step = 0.05;            // additive grid step
    double im_offset = 0;          // additive: node shift along the line, as a fraction of the step
    int threads = 0;               // 0 = hardware concurrency
};

struct QuadResult {
    cplx value = 0;
    double error_estimate = 0;
    int N_used = 0;
};

using TorusIntegrand = std::function<cplx(const std::vector<cplx>&)>;

// Haar-normalized: mean over nodes shift_j * exp(i(2 pi m/N + offset_j))
QuadResult torus_integral(const TorusIntegrand& f, const ContourSpec& spec);
// int f(s) prod ds_j/(2 pi i) over Re s = re_shift
QuadResult line_integral(const TorusIntegrand& f, const ContourSpec& spec);

// Richardson extrapolation of eps -> 0 from eps_m = eps0 2^-m
struct LimitResult {
    cplx value = 0;
    double error_estimate = 0;
};
LimitResult cancellation_limit(const std::function<cplx(double)>& fn, double eps0 = 1e-2, int levels = 6);
// mean of fn over |eps| = radius; the constant Laurent coefficient of fn at 0
cplx circle_limit(const std::function<cplx(cplx)>& fn, double radius, int M = 24);

// Haar average over a disconnected compact group: sum of class weight * class value
cplx weyl_average(const std::vector<cplx>& class_values, const std::vector<double>& class_weights);

}  // namespace eis
