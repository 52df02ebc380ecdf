#include "eis/linalg.hpp"

#include <algorithm>
#include <cstdlib>
#include <utility>

namespace eis {

RatMat rat_zero(int rows, int cols) { return RatMat(rows, RatVec(cols, Rat(0))); }

RatMat rat_identity(int n) {
    RatMat m = rat_zero(n, n);
    for (int i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

RatMat to_rat(const IntMat& m) {
    RatMat out;
    for (auto& row : m) {
        RatVec r;
        for (auto v : row) r.emplace_back(v);
        out.push_back(r);
    }
    return out;
}

RatMat transpose(const RatMat& m) {
    if (m.empty()) return {};
    RatMat t = rat_zero(m[0].size(), m.size());
    for (size_t i = 0; i < m.size(); ++i)
        for (size_t j = 0; j < m[0].size(); ++j) t[j][i] = m[i][j];
    return t;
}

IntMat transpose(const IntMat& m) {
    if (m.empty()) return {};
    IntMat t(m[0].size(), IntVec(m.size(), 0));
    for (size_t i = 0; i < m.size(); ++i)
        for (size_t j = 0; j < m[0].size(); ++j) t[j][i] = m[i][j];
    return t;
}

RatMat matmul(const RatMat& a, const RatMat& b) {
    size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
    RatMat c = rat_zero(n, m);
    for (size_t i = 0; i < n; ++i)
        for (size_t l = 0; l < k; ++l) {
            if (a[i][l] == 0) continue;
            for (size_t j = 0; j < m; ++j) c[i][j] += a[i][l] * b[l][j];
        }
    return c;
}

IntMat matmul(const IntMat& a, const IntMat& b) {
    size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
    IntMat c(n, IntVec(m, 0));
    for (size_t i = 0; i < n; ++i)
        for (size_t l = 0; l < k; ++l)
            for (size_t j = 0; j < m; ++j) c[i][j] += a[i][l] * b[l][j];
    return c;
}

RatVec matvec(const RatMat& a, const RatVec& x) {
    RatVec y(a.size(), Rat(0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < x.size(); ++j)
            if (a[i][j] != 0 && x[j] != 0) y[i] += a[i][j] * x[j];
    return y;
}

IntVec matvec(const IntMat& a, const IntVec& x) {
    IntVec y(a.size(), 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < x.size(); ++j) y[i] += a[i][j] * x[j];
    return y;
}

std::vector<int> rref(RatMat& m) {
    std::vector<int> piv;
    if (m.empty()) return piv;
    int rows = m.size(), cols = m[0].size();
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int p = -1;
        for (int i = r; i < rows; ++i)
            if (m[i][c] != 0) { p = i; break; }
        if (p < 0) continue;
        std::swap(m[r], m[p]);
        Rat inv = Rat(1) / m[r][c];
        for (int j = c; j < cols; ++j) m[r][j] *= inv;
        for (int i = 0; i < rows; ++i) {
            if (i == r || m[i][c] == 0) continue;
            Rat f = m[i][c];
            for (int j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
        }
        piv.push_back(c);
        ++r;
    }
    return piv;
}

int rank(RatMat m) { return (int)rref(m).size(); }

std::vector<RatVec> nullspace(const RatMat& m, int ncols) {
    RatMat a = m;
    std::vector<int> piv = rref(a);
    std::vector<bool> is_piv(ncols, false);
    for (int p : piv) is_piv[p] = true;
    std::vector<RatVec> basis;
    for (int free = 0; free < ncols; ++free) {
        if (is_piv[free]) continue;
        RatVec v(ncols, Rat(0));
        v[free] = 1;
        for (size_t k = 0; k < piv.size(); ++k) v[piv[k]] = -a[k][free];
        basis.push_back(v);
    }
    return basis;
}

bool solve(const RatMat& a, const RatVec& b, RatVec& x) {
    int rows = a.size();
    int cols = rows ? a[0].size() : 0;
    RatMat aug = a;
    for (int i = 0; i < rows; ++i) aug[i].push_back(b[i]);
    std::vector<int> piv = rref(aug);
    if (!piv.empty() && piv.back() == cols) return false;
    x.assign(cols, Rat(0));
    for (size_t k = 0; k < piv.size(); ++k) x[piv[k]] = aug[k][cols];
    return true;
}

RatMat inverse(const RatMat& m) {
    int n = m.size();
    RatMat aug = m;
    for (int i = 0; i < n; ++i) {
        aug[i].resize(2 * n, Rat(0));
        aug[i][n + i] = 1;
    }
    std::vector<int> piv = rref(aug);
    if ((int)piv.size() < n || piv[n - 1] >= n) throw std::runtime_error("inverse: singular matrix");
    RatMat inv = rat_zero(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) inv[i][j] = aug[i][n + j];
    return inv;
}

Rat det(const RatMat& m) {
    RatMat a = m;
    int n = a.size();
    Rat d = 1;
    for (int c = 0; c < n; ++c) {
        int p = -1;
        for (int i = c; i < n; ++i)
            if (a[i][c] != 0) { p = i; break; }
        if (p < 0) return 0;
        if (p != c) { std::swap(a[p], a[c]); d = -d; }
        d *= a[c][c];
        for (int i = c + 1; i < n; ++i) {
            Rat f = a[i][c] / a[c][c];
            for (int j = c; j < n; ++j) a[i][j] -= f * a[c][j];
        }
    }
    return d;
}

bool is_zero(const RatVec& v) {
    for (auto& x : v)
        if (x != 0) return false;
    return true;
}

bool is_integral(const RatVec& v) {
    for (auto& x : v)
        if (x.denominator() != 1) return false;
    return true;
}

IntVec to_int(const RatVec& v) {
    IntVec out;
    for (auto& x : v) {
        if (x.denominator() != 1) throw std::runtime_error("to_int: non-integral entry");
        out.push_back(x.numerator());
    }
    return out;
}

IntVec Smith::diag() const {
    IntVec out;
    for (size_t i = 0; i < d.size() && i < (d.empty() ? 0 : d[0].size()); ++i) out.push_back(d[i][i]);
    return out;
}

namespace {

long long floordiv(long long a, long long b) {
    long long q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

}  // namespace

Smith smith(const IntMat& a) {
    int m = a.size();
    int n = m ? a[0].size() : 0;
    Smith s;
    s.d = a;
    s.left.assign(m, IntVec(m, 0));
    s.right.assign(n, IntVec(n, 0));
    for (int i = 0; i < m; ++i) s.left[i][i] = 1;
    for (int i = 0; i < n; ++i) s.right[i][i] = 1;
    auto& D = s.d;
    auto row_swap = [&](int i, int j) { std::swap(D[i], D[j]); std::swap(s.left[i], s.left[j]); };
    auto col_swap = [&](int i, int j) {
        for (int r = 0; r < m; ++r) std::swap(D[r][i], D[r][j]);
        for (int r = 0; r < n; ++r) std::swap(s.right[r][i], s.right[r][j]);
    };
    auto row_add = [&](int dst, int src, long long f) {  // row dst += f row src
        for (int c = 0; c < n; ++c) D[dst][c] += f * D[src][c];
        for (int c = 0; c < m; ++c) s.left[dst][c] += f * s.left[src][c];
    };
    auto col_add = [&](int dst, int src, long long f) {
        for (int r = 0; r < m; ++r) D[r][dst] += f * D[r][src];
        for (int r = 0; r < n; ++r) s.right[r][dst] += f * s.right[r][src];
    };

    for (int t = 0; t < std::min(m, n); ++t) {
        while (true) {
            // smallest nonzero in the trailing block goes to the pivot
            int pi = -1, pj = -1;
            for (int i = t; i < m; ++i)
                for (int j = t; j < n; ++j)
                    if (D[i][j] != 0 && (pi < 0 || std::llabs(D[i][j]) < std::llabs(D[pi][pj]))) { pi = i; pj = j; }
            if (pi < 0) return s;
            row_swap(t, pi);
            col_swap(t, pj);
            bool clean = true;
            for (int i = t + 1; i < m; ++i) {
                if (D[i][t] == 0) continue;
                row_add(i, t, -floordiv(D[i][t], D[t][t]));
                if (D[i][t] != 0) clean = false;
            }
            for (int j = t + 1; j < n; ++j) {
                if (D[t][j] == 0) continue;
                col_add(j, t, -floordiv(D[t][j], D[t][t]));
                if (D[t][j] != 0) clean = false;
            }
            if (!clean) continue;
            // divisibility of the rest of the block
            int bad = -1;
            for (int i = t + 1; i < m && bad < 0; ++i)
                for (int j = t + 1; j < n; ++j)
                    if (D[i][j] % D[t][t] != 0) { bad = i; break; }
            if (bad < 0) break;
            row_add(t, bad, 1);
        }
        if (D[t][t] < 0) {
            for (int c = 0; c < n; ++c) D[t][c] = -D[t][c];
            for (int c = 0; c < m; ++c) s.left[t][c] = -s.left[t][c];
        }
    }
    return s;
}

Rat frac_part(Rat x) {
    long long n = x.numerator(), d = x.denominator();
    long long fl = floordiv(n, d);
    return x - Rat(fl);
}

std::string to_string(const Rat& r) {
    if (r.denominator() == 1) return std::to_string(r.numerator());
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

}  // namespace eis
