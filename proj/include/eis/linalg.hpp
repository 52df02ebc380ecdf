#pragma once
// Exact rational / integer matrix helpers. Matrices are row-major
// vectors of rows; sizes are tiny (dim g <= 14) so nothing clever here.

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace eis {

// Exact rationals backed by GMP. (boost::rational<long long> was tried first:
// its mixed comparisons recurse under C++20, and 64 bits overflow in the
// eliminations on 14x14 matrices with generic coefficients.)
class Rat {
public:
    Rat() = default;
    Rat(long long n) : v_(std::to_string(n)) {}
    Rat(int n) : v_(n) {}
    Rat(long long n, long long d) {
        if (d == 0) throw std::domain_error("rational with zero denominator");
        v_ = mpq_class(mpz_class(std::to_string(n)), mpz_class(std::to_string(d)));
        v_.canonicalize();
    }

    long long numerator() const { return to_ll(v_.get_num()); }
    long long denominator() const { return to_ll(v_.get_den()); }
    double to_double() const { return v_.get_d(); }
    const mpq_class& raw() const { return v_; }

    friend Rat operator+(const Rat& a, const Rat& b) { return Rat(mpq_class(a.v_ + b.v_)); }
    friend Rat operator-(const Rat& a, const Rat& b) { return Rat(mpq_class(a.v_ - b.v_)); }
    friend Rat operator*(const Rat& a, const Rat& b) { return Rat(mpq_class(a.v_ * b.v_)); }
    friend Rat operator/(const Rat& a, const Rat& b) {
        if (sgn(b.v_) == 0) throw std::domain_error("rational division by zero");
        return Rat(mpq_class(a.v_ / b.v_));
    }
    Rat operator-() const { return Rat(mpq_class(-v_)); }
    Rat& operator+=(const Rat& b) { v_ += b.v_; return *this; }
    Rat& operator-=(const Rat& b) { v_ -= b.v_; return *this; }
    Rat& operator*=(const Rat& b) { v_ *= b.v_; return *this; }
    Rat& operator/=(const Rat& b) { return *this = *this / b; }

    friend bool operator==(const Rat& a, const Rat& b) { return cmp(a.v_, b.v_) == 0; }
    friend std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
        int c = cmp(a.v_, b.v_);
        return c < 0 ? std::strong_ordering::less : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

private:
    explicit Rat(mpq_class v) : v_(std::move(v)) {}
    static long long to_ll(const mpz_class& z) {
        if (!z.fits_slong_p()) throw std::overflow_error("rational component exceeds 64 bits");
        return z.get_si();
    }
    mpq_class v_;
};

inline Rat abs(const Rat& x) { return x < Rat(0) ? -x : x; }

using RatVec = std::vector<Rat>;
using RatMat = std::vector<RatVec>;
using IntVec = std::vector<long long>;
using IntMat = std::vector<IntVec>;

RatMat rat_zero(int rows, int cols);
RatMat rat_identity(int n);
RatMat to_rat(const IntMat& m);
RatMat transpose(const RatMat& m);
IntMat transpose(const IntMat& m);
RatMat matmul(const RatMat& a, const RatMat& b);
IntMat matmul(const IntMat& a, const IntMat& b);
RatVec matvec(const RatMat& a, const RatVec& x);
IntVec matvec(const IntMat& a, const IntVec& x);

// reduced row echelon form in place, returns pivot columns
std::vector<int> rref(RatMat& m);
int rank(RatMat m);
// basis of {x : m x = 0}; ncols needed when m has no rows
std::vector<RatVec> nullspace(const RatMat& m, int ncols);
// one solution of a x = b, false if inconsistent
bool solve(const RatMat& a, const RatVec& b, RatVec& x);
RatMat inverse(const RatMat& m);
Rat det(const RatMat& m);

bool is_zero(const RatVec& v);
bool is_integral(const RatVec& v);
IntVec to_int(const RatVec& v);

// Smith form: left * a * right = d, left/right unimodular, d diagonal
// with d[i][i] | d[i+1][i+1] and nonnegative entries.
struct Smith {
    IntMat left, right, d;
    IntVec diag() const;
};
Smith smith(const IntMat& a);

Rat frac_part(Rat x);  // x mod 1 in [0,1)

std::string to_string(const Rat& r);

}  // namespace eis
