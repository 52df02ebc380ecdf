#include "eis/liealg.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>

namespace eis {

namespace {

IntVec add(const IntVec& a, const IntVec& b) {
    IntVec c(a.size());
    for (size_t i = 0; i < a.size(); ++i) c[i] = a[i] + b[i];
    return c;
}

IntVec neg(IntVec a) {
    for (auto& v : a) v = -v;
    return a;
}

bool all_zero(const IntVec& v) {
    return std::all_of(v.begin(), v.end(), [](long long x) { return x == 0; });
}

// alpha_i(h_beta) = <alpha_i, beta^vee>, h given by simple-root values
long long h_weight(const IntVec& beta_simple, const IntVec& h) {
    long long s = 0;
    for (size_t k = 0; k < beta_simple.size(); ++k) s += beta_simple[k] * h[k];
    return s;
}

RatMat stack(const std::vector<RatMat>& ms) {
    RatMat out;
    for (auto& m : ms) out.insert(out.end(), m.begin(), m.end());
    return out;
}

RatMat shift(RatMat m, Rat c) {
    for (size_t i = 0; i < m.size(); ++i) m[i][i] -= c;
    return m;
}

RatMat columns(const RatMat& m, const std::vector<int>& cols) {
    RatMat out(m.size(), RatVec(cols.size()));
    for (size_t i = 0; i < m.size(); ++i)
        for (size_t j = 0; j < cols.size(); ++j) out[i][j] = m[i][cols[j]];
    return out;
}

RatMat from_columns(const std::vector<RatVec>& cols, int rows) {
    RatMat out = rat_zero(rows, cols.size());
    for (size_t j = 0; j < cols.size(); ++j)
        for (int i = 0; i < rows; ++i) out[i][j] = cols[j][i];
    return out;
}

int nullity(const RatMat& m, int ncols) { return ncols - (m.empty() ? 0 : rank(m)); }

RatVec axpy(const RatVec& x, Rat a, const RatVec& y) {
    RatVec z = y;
    for (size_t i = 0; i < x.size(); ++i) z[i] += a * x[i];
    return z;
}

bool is_zero_mat(const RatMat& m) {
    for (auto& r : m)
        if (!is_zero(r)) return false;
    return true;
}

int weyl_index(const std::vector<WeylElement>& W, const IntMat& m) {
    for (size_t k = 0; k < W.size(); ++k)
        if (W[k].matrix == m) return k;
    throw std::logic_error("matrix not in Weyl group");
}

struct ChevalleyTable {
    const RootDatum& rd;
    std::vector<std::pair<int, int>> pairs;  // positive a<b with a+b a root
    std::vector<int> signs;

    long long p_value(int a, int b) const {
        // largest p with beta - p alpha a root
        long long p = 0;
        IntVec v = rd.roots[b];
        while (true) {
            for (size_t i = 0; i < v.size(); ++i) v[i] -= rd.roots[a][i];
            if (rd.index_of(v) < 0) break;
            ++p;
        }
        return p;
    }

    Rat n_pos(int a, int b) const {
        for (size_t k = 0; k < pairs.size(); ++k) {
            if (pairs[k] == std::make_pair(a, b)) return Rat(signs[k] * (p_value(a, b) + 1));
            if (pairs[k] == std::make_pair(b, a)) return Rat(-signs[k] * (p_value(b, a) + 1));
        }
        throw std::logic_error("n_pos on a non-pair");
    }

    // N for same-sign pairs
    Rat n_same(int a, int b) const {
        if (rd.positive(a)) return n_pos(a, b);
        return -n_pos(rd.negative_of(a), rd.negative_of(b));
    }

    Rat norm(int a) const { return rd.inner(rd.roots[a], rd.roots[a]); }

    Rat n(int a, int b) const {
        IntVec s = add(rd.roots[a], rd.roots[b]);
        if (rd.index_of(s) < 0) return 0;
        int c = rd.index_of(neg(s));
        // a + b + c = 0; N_{a,b}/(c,c) = N_{b,c}/(a,a) = N_{c,a}/(b,b)
        std::array<int, 3> t = {a, b, c};
        for (int k = 0; k < 3; ++k) {
            int x = t[k], y = t[(k + 1) % 3], z = t[(k + 2) % 3];
            if (rd.positive(x) == rd.positive(y)) return n_same(x, y) / norm(z) * norm(c);
        }
        throw std::logic_error("no same-sign pair in a root triple");
    }
};

std::vector<RatMat> build_ad(const RootDatum& rd, const ChevalleyTable& tab) {
    int r = rd.rank, n = r + rd.num_roots();
    std::vector<RatMat> ad(n, rat_zero(n, n));
    for (int a = 0; a < rd.num_roots(); ++a) {
        int ea = r + a;
        for (int i = 0; i < r; ++i) {
            Rat w = 0;
            for (int k = 0; k < r; ++k) w += Rat(rd.roots[a][k] * rd.cartan[k][i]);
            ad[i][ea][ea] = w;    // [h_i, e_a]
            ad[ea][ea][i] = -w;   // [e_a, h_i]
        }
        for (int b = 0; b < rd.num_roots(); ++b) {
            int eb = r + b;
            if (b == rd.negative_of(a)) {
                for (int i = 0; i < r; ++i) ad[ea][i][eb] = Rat(rd.coroots[a][i]);
                continue;
            }
            Rat N = tab.n(a, b);
            if (N == 0) continue;
            int s = rd.index_of(add(rd.roots[a], rd.roots[b]));
            ad[ea][r + s][eb] = N;
        }
    }
    return ad;
}

bool jacobi(const std::vector<RatMat>& ad) {
    int n = ad.size();
    auto br = [&](const RatVec& x, const RatVec& y) {
        RatVec out(n, Rat(0));
        for (int a = 0; a < n; ++a) {
            if (x[a] == 0) continue;
            RatVec t = matvec(ad[a], y);
            for (int k = 0; k < n; ++k) out[k] += x[a] * t[k];
        }
        return out;
    };
    auto e = [&](int k) {
        RatVec v(n, Rat(0));
        v[k] = 1;
        return v;
    };
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) {
            // antisymmetry
            RatVec ab = br(e(a), e(b)), ba = br(e(b), e(a));
            for (int k = 0; k < n; ++k)
                if (ab[k] + ba[k] != 0) return false;
            for (int c = b + 1; c < n; ++c) {
                RatVec j1 = br(e(a), br(e(b), e(c)));
                RatVec j2 = br(e(b), br(e(c), e(a)));
                RatVec j3 = br(e(c), ab);
                for (int k = 0; k < n; ++k)
                    if (j1[k] + j2[k] + j3[k] != 0) return false;
            }
        }
    return true;
}

}  // namespace

RatVec LieAlgebra::basis(int k) const {
    RatVec v = zero();
    v[k] = 1;
    return v;
}

RatVec LieAlgebra::root_vector(int root, Rat c) const {
    RatVec v = zero();
    v[e_index(root)] = c;
    return v;
}

RatMat LieAlgebra::ad(const RatVec& x) const {
    RatMat m = rat_zero(dim, dim);
    for (int k = 0; k < dim; ++k) {
        if (x[k] == 0) continue;
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j)
                if (ad_basis[k][i][j] != 0) m[i][j] += x[k] * ad_basis[k][i][j];
    }
    return m;
}

RatVec LieAlgebra::bracket(const RatVec& x, const RatVec& y) const { return matvec(ad(x), y); }

long long LieAlgebra::structure_constant(int a, int b) const {
    int s = rd.index_of(add(rd.roots[a], rd.roots[b]));
    if (s < 0) return 0;
    return ad_basis[e_index(a)][e_index(s)][e_index(b)].numerator();
}

bool LieAlgebra::jacobi_holds() const { return jacobi(ad_basis); }

LieAlgebra build_lie_algebra(const RootDatum& rd) {
    ChevalleyTable tab{rd, {}, {}};
    for (int a = 0; a < rd.npos; ++a)
        for (int b = a + 1; b < rd.npos; ++b)
            if (rd.index_of(add(rd.roots[a], rd.roots[b])) >= 0) tab.pairs.push_back({a, b});
    int np = tab.pairs.size();
    for (int mask = 0; mask < (1 << np); ++mask) {
        tab.signs.assign(np, 1);
        for (int k = 0; k < np; ++k)
            if (mask >> k & 1) tab.signs[k] = -1;
        auto ad = build_ad(rd, tab);
        if (!jacobi(ad)) continue;
        LieAlgebra L;
        L.rd = rd;
        L.dim = rd.rank + rd.num_roots();
        L.ad_basis = std::move(ad);
        L.signs = tab.signs;
        return L;
    }
    throw std::logic_error("no sign choice satisfies the Jacobi identity");
}

bool is_nilpotent(const LieAlgebra& L, const RatVec& x) {
    RatMat a = L.ad(x), p = a;
    for (int k = 1; k <= L.dim; ++k) {
        if (is_zero_mat(p)) return true;
        p = matmul(p, a);
    }
    return is_zero_mat(p);
}

bool triple_holds(const LieAlgebra& L, const Sl2Triple& t) {
    RatVec he = L.bracket(t.h, t.e), hf = L.bracket(t.h, t.f), ef = L.bracket(t.e, t.f);
    for (int k = 0; k < L.dim; ++k) {
        if (he[k] != 2 * t.e[k]) return false;
        if (hf[k] != -2 * t.f[k]) return false;
        if (ef[k] != t.h[k]) return false;
    }
    return true;
}

namespace {

bool in_cartan(const LieAlgebra& L, const RatVec& x) {
    for (int k = L.rd.rank; k < L.dim; ++k)
        if (x[k] != 0) return false;
    return true;
}

IntVec cartan_values(const LieAlgebra& L, const RatVec& h) {
    IntVec a(L.rd.rank, 0);
    for (int i = 0; i < L.rd.rank; ++i) {
        Rat s = 0;
        for (int k = 0; k < L.rd.rank; ++k) s += h[k] * Rat(L.rd.cartan[i][k]);
        if (s.denominator() != 1) throw std::runtime_error("non-integral eigenvalue of ad h");
        a[i] = s.numerator();
    }
    return a;
}

void dominate(const RootDatum& rd, IntVec& a, std::vector<int>& word) {
    while (true) {
        int i = -1;
        for (int k = 0; k < rd.rank; ++k)
            if (a[k] < 0) { i = k; break; }
        if (i < 0) return;
        long long ai = a[i];
        for (int j = 0; j < rd.rank; ++j) a[j] -= rd.cartan[j][i] * ai;
        word.push_back(i);
    }
}

std::map<long long, int> eigen_multiset(const RatMat& m) {
    // ad h is semisimple with integer eigenvalues bounded by the matrix size times entries
    std::map<long long, int> out;
    int n = m.size(), found = 0;
    for (long long lam = -4 * n; lam <= 4 * n && found < n; ++lam) {
        int k = nullity(shift(m, Rat(lam)), n);
        if (k > 0) {
            out[lam] = k;
            found += k;
        }
    }
    if (found != n) throw std::runtime_error("ad h has non-integer eigenvalues");
    return out;
}

std::optional<Sl2Triple> ansatz(const LieAlgebra& L, const RatVec& e) {
    const RootDatum& rd = L.rd;
    std::vector<int> S;
    for (int a = 0; a < rd.num_roots(); ++a)
        if (e[L.e_index(a)] != 0) S.push_back(a);
    for (int i = 0; i < rd.rank; ++i)
        if (e[i] != 0) return std::nullopt;
    int k = S.size();
    RatMat A = rat_zero(k, k);
    RatVec two(k, Rat(2));
    for (int x = 0; x < k; ++x)
        for (int y = 0; y < k; ++y) A[x][y] = rd.pair_coroot(rd.roots[S[x]], rd.roots[S[y]]);
    RatVec a;
    if (!solve(A, two, a)) return std::nullopt;
    Sl2Triple t;
    t.e = e;
    t.h = L.zero();
    for (int y = 0; y < k; ++y)
        for (int i = 0; i < rd.rank; ++i) t.h[i] += a[y] * Rat(rd.coroots[S[y]][i]);
    std::vector<RatVec> cols;
    for (int y = 0; y < k; ++y) cols.push_back(L.bracket(e, L.root_vector(rd.negative_of(S[y]))));
    RatVec b;
    if (!solve(from_columns(cols, L.dim), t.h, b)) return std::nullopt;
    t.f = L.zero();
    for (int y = 0; y < k; ++y) t.f[L.e_index(rd.negative_of(S[y]))] = b[y];
    if (!triple_holds(L, t)) return std::nullopt;
    return t;
}

std::optional<Sl2Triple> morozov(const LieAlgebra& L, const RatVec& e) {
    RatMat ae = L.ad(e);
    RatVec m2e = e;
    for (auto& v : m2e) v *= -2;
    RatVec y;
    if (!solve(matmul(ae, ae), m2e, y)) return std::nullopt;
    Sl2Triple t;
    t.e = e;
    t.h = matvec(ae, y);
    RatMat sys = stack({ae, shift(L.ad(t.h), Rat(-2))});
    RatVec rhs = t.h;
    rhs.resize(2 * L.dim, Rat(0));
    if (!solve(sys, rhs, t.f)) return std::nullopt;
    if (!triple_holds(L, t)) return std::nullopt;
    return t;
}

}  // namespace

Sl2Triple complete_sl2(const LieAlgebra& L, const RatVec& e) {
    if ((int)e.size() != L.dim) throw std::invalid_argument("complete_sl2: wrong vector size");
    if (!is_nilpotent(L, e)) throw std::invalid_argument("complete_sl2: element is not nilpotent");
    Sl2Triple t;
    if (is_zero(e)) {
        t.e = t.h = t.f = L.zero();
        t.h_dominant = IntVec(L.rd.rank, 0);
        return t;
    }
    auto got = ansatz(L, e);
    if (!got) got = morozov(L, e);
    if (!got) throw std::logic_error("complete_sl2: no sl2 triple found");
    t = *got;
    if (in_cartan(L, t.h)) {
        t.h_dominant = cartan_values(L, t.h);
        dominate(L.rd, t.h_dominant, t.conj_word);
        return t;
    }
    // h outside the Cartan: match the eigenvalue multiset against dominant patterns
    auto target = eigen_multiset(L.ad(t.h));
    const RootDatum& rd = L.rd;
    IntVec a(rd.rank, 0);
    std::function<bool(int)> search = [&](int i) {
        if (i == rd.rank) {
            std::map<long long, int> m;
            m[0] += rd.rank;
            for (auto& b : rd.roots) m[h_weight(b, a)]++;
            return m == target;
        }
        for (long long v = 0; v <= 2; ++v) {
            a[i] = v;
            if (search(i + 1)) return true;
        }
        return false;
    };
    if (!search(0)) throw std::logic_error("complete_sl2: no dominant characteristic matches");
    t.h_dominant = a;
    return t;
}

namespace {

// conjugate a catalog-style triple (e a sum of root vectors, h in the Cartan) until h is dominant
Sl2Triple dominant_form(const LieAlgebra& L, const Sl2Triple& t) {
    if (!in_cartan(L, t.h)) throw std::invalid_argument("orbit_record needs h in the Cartan subalgebra");
    if (t.conj_word.empty()) return t;
    const RootDatum& rd = L.rd;
    RatVec e = L.zero();
    for (int a = 0; a < rd.num_roots(); ++a) {
        Rat c = t.e[L.e_index(a)];
        if (c == 0) continue;
        IntVec b = rd.roots[a];
        for (int i : t.conj_word) {
            long long p = 0;
            for (int k = 0; k < rd.rank; ++k) p += b[k] * rd.cartan[k][i];
            b[i] -= p;
        }
        e[L.e_index(rd.index_of(b))] = c;
    }
    Sl2Triple out = complete_sl2(L, e);
    out.label = t.label;
    if (!out.conj_word.empty()) throw std::logic_error("dominant conjugation did not converge");
    return out;
}

struct ClassKey {
    IntVec fin, wt;
    auto operator<=>(const ClassKey&) const = default;
};

struct DGroup {
    int kp = 0;
    IntMat V;
    IntVec mod;  // d_i for i < kp
    ClassKey key(const IntVec& gamma) const {
        int r = gamma.size();
        IntVec c(r, 0);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j) c[i] += V[j][i] * gamma[j];
        ClassKey k;
        for (int i = 0; i < kp; ++i) k.fin.push_back(((c[i] % mod[i]) + mod[i]) % mod[i]);
        for (int i = kp; i < r; ++i) k.wt.push_back(c[i]);
        return k;
    }
    ClassKey negate(const ClassKey& k) const {
        ClassKey n;
        for (int i = 0; i < kp; ++i) n.fin.push_back((mod[i] - k.fin[i]) % mod[i]);
        for (auto v : k.wt) n.wt.push_back(-v);
        return n;
    }
};

DGroup d_group(const RootDatum& rd, const std::vector<int>& S) {
    int r = rd.rank;
    DGroup D;
    D.V.assign(r, IntVec(r, 0));
    for (int i = 0; i < r; ++i) D.V[i][i] = 1;
    if (S.empty()) return D;
    IntMat B;
    for (int a : S) B.push_back(rd.root_lam[a]);
    Smith s = smith(B);
    D.V = s.right;
    for (auto d : s.diag()) {
        if (d == 0) break;
        D.mod.push_back(d);
        ++D.kp;
    }
    return D;
}

// rows of a matrix restricted to the span of the given basis indices
int restricted_nullity(const std::vector<RatMat>& eqs, const std::vector<int>& cols) {
    RatMat m;
    for (auto& e : eqs) {
        RatMat c = columns(e, cols);
        m.insert(m.end(), c.begin(), c.end());
    }
    return nullity(m, cols.size());
}

int generic_centralizer_dim(const LieAlgebra& L, const std::vector<RatVec>& basis) {
    int m = basis.size();
    if (m == 0) return 0;
    std::mt19937 gen(17);
    int best = m;
    for (int trial = 0; trial < 4; ++trial) {
        RatVec x = L.zero();
        for (auto& b : basis) x = axpy(b, Rat((long long)(gen() % 97) - 48), x);
        std::vector<RatVec> cols;
        for (auto& b : basis) cols.push_back(L.bracket(x, b));
        best = std::min(best, nullity(from_columns(cols, L.dim), m));
    }
    return best;
}

}  // namespace

std::vector<int> coset_elements(const OrbitRecord& rec, const std::vector<WeylElement>& W, int w) {
    std::vector<int> out;
    for (size_t u = 0; u < W.size(); ++u) {
        // u fixes h
        bool fix = true;
        for (int i = 0; i < (int)rec.h.size() && fix; ++i) {
            IntVec e(rec.h.size(), 0);
            e[i] = 1;
            if (h_weight(weyl_apply(W[W[u].inverse], e), rec.h) != rec.h[i]) fix = false;
        }
        if (fix) out.push_back(weyl_index(W, matmul(W[u].matrix, W[w].matrix)));
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

std::vector<int> coset_reps(const RootDatum& rd, const IntVec& h, const std::vector<WeylElement>& W) {
    std::vector<int> reps;
    for (size_t w = 0; w < W.size(); ++w) {
        bool ok = true;
        for (int i = 0; i < rd.rank && ok; ++i) {
            if (h[i] != 0) continue;
            IntVec e(rd.rank, 0);
            e[i] = 1;
            if (!rd.positive(rd.index_of(weyl_apply(W[W[w].inverse], e)))) ok = false;
        }
        if (ok) reps.push_back(w);
    }
    return reps;
}

struct Graded {
    std::vector<int> g0, g2;
};

Graded gradings(const LieAlgebra& L, const IntVec& h) {
    Graded g;
    for (int i = 0; i < L.rd.rank; ++i) g.g0.push_back(i);
    for (int a = 0; a < L.rd.num_roots(); ++a) {
        long long w = h_weight(L.rd.roots[a], h);
        if (w == 0) g.g0.push_back(L.e_index(a));
        if (w == 2) g.g2.push_back(L.e_index(a));
    }
    return g;
}

std::vector<int> wn2(const LieAlgebra& L, const IntVec& h, const WeylElement& w) {
    std::vector<int> out;
    for (int a = 0; a < L.rd.npos; ++a) {
        IntVec b = weyl_apply(w, L.rd.roots[a]);
        if (h_weight(b, h) == 2) out.push_back(L.rd.index_of(b));
    }
    return out;
}

}  // namespace

std::vector<int> w_of_e(const LieAlgebra& L, const OrbitRecord& rec, const std::vector<WeylElement>& W) {
    std::vector<int> out;
    Graded g = gradings(L, rec.h);
    std::mt19937 gen(29);
    for (int w : coset_reps(L.rd, rec.h, W)) {
        auto roots = wn2(L, rec.h, W[w]);
        int best = 0;
        for (int trial = 0; trial < 3 && !roots.empty(); ++trial) {
            RatVec x = L.zero();
            for (int a : roots) x[L.e_index(a)] = Rat((long long)(gen() % 89) + 1);
            RatMat m = columns(L.ad(x), g.g0);
            best = std::max(best, rank(m));
        }
        if (best == (int)g.g2.size()) out.push_back(w);
    }
    return out;
}

std::optional<int> dclp_dimension(const LieAlgebra& L, const OrbitRecord& rec, const std::vector<WeylElement>& W,
                                  int w) {
    auto we = w_of_e(L, rec, W);
    if (std::find(we.begin(), we.end(), w) == we.end()) return std::nullopt;
    int levi_pos = 0;
    for (int a = 0; a < L.rd.npos; ++a)
        if (h_weight(L.rd.roots[a], rec.h) == 0) ++levi_pos;
    Graded g = gradings(L, rec.h);
    return levi_pos - ((int)g.g2.size() - (int)wn2(L, rec.h, W[w]).size());
}

OrbitRecord orbit_record(const LieAlgebra& L, const Sl2Triple& t_in, const std::string& label) {
    if (!triple_holds(L, t_in)) throw std::invalid_argument("orbit_record: not an sl2 triple");
    const RootDatum& rd = L.rd;
    int r = rd.rank, n = L.dim;
    OrbitRecord rec;
    rec.triple = dominant_form(L, t_in);
    rec.label = label.empty() ? t_in.label : label;
    rec.triple.label = rec.label;
    const Sl2Triple& t = rec.triple;
    rec.h = cartan_values(L, t.h);
    for (int a = 0; a < rd.num_roots(); ++a)
        if (t.e[L.e_index(a)] != 0) rec.support.push_back(a);
    for (int i = 0; i < r; ++i)
        if (t.e[i] != 0) throw std::invalid_argument("orbit_record: e must be a sum of root vectors");
    rec.dim_g = n;

    RatMat ae = L.ad(t.e), ah = L.ad(t.h), af = L.ad(t.f);
    rec.c_e_dim = nullity(ae, n);
    rec.orbit_dim = n - rec.c_e_dim;
    auto cphi = nullspace(stack({ae, ah, af}), n);
    rec.c_phi_dim = cphi.size();
    rec.c_phi_rank = generic_centralizer_dim(L, cphi);

    DGroup D = d_group(rd, rec.support);
    rec.tphi_dim = r - D.kp;
    for (int i = 0; i < D.kp; ++i)
        if (D.mod[i] > 1) rec.finite_moduli.push_back(D.mod[i]);
    for (int i = D.kp; i < r; ++i) {
        IntVec mu(r);
        for (int j = 0; j < r; ++j) mu[j] = D.V[j][i];
        rec.tphi_cochars.push_back(mu);
    }

    // weights of g: r zeros and the roots, grouped by D-class
    struct Wt {
        IntVec gamma;
        long long hw;
        int basis;
    };
    std::map<ClassKey, std::vector<Wt>> classes;
    for (int i = 0; i < r; ++i) classes[D.key(IntVec(r, 0))].push_back({IntVec(r, 0), 0, i});
    for (int a = 0; a < rd.num_roots(); ++a)
        classes[D.key(rd.root_lam[a])].push_back({rd.root_lam[a], h_weight(rd.roots[a], rec.h), L.e_index(a)});

    for (auto& [key, lst] : classes) {
        std::map<long long, int> cnt;
        std::vector<int> cols;
        for (auto& w : lst) {
            cnt[w.hw]++;
            rec.g_dims[(int)w.hw]++;
            cols.push_back(w.basis);
        }
        for (auto& [i, c] : cnt) {
            // oracle: highest-weight vectors in this D-isotypic block
            int exact = restricted_nullity({ae, shift(ah, Rat(i))}, cols);
            int low = restricted_nullity({af, shift(ah, Rat(i))}, cols);
            if (i >= 0) {
                int m = c - (cnt.count(i + 2) ? cnt[i + 2] : 0);
                if (m != exact) throw std::logic_error("orbit_record: multiplicity count disagrees with null space");
                if (m > 0) {
                    WeightEntry we;
                    we.i = i;
                    we.mult = m;
                    for (auto& w : lst)
                        if (w.hw == i) { we.gamma = w.gamma; break; }
                    we.finite_part = key.fin;
                    we.tphi_weight = key.wt;
                    rec.weights.push_back(we);
                    rec.ge_dims[i] += m;
                    if (i == 0 && !all_zero(key.wt))
                        for (int k = 0; k < m; ++k) rec.cphi_roots.push_back(key.wt);
                }
            }
            if (i <= 0 && low > 0) rec.slice.push_back({(int)i, low, key.fin, key.wt});
        }
    }
    if ((int)cphi.size() == 0 && !rec.cphi_roots.empty()) throw std::logic_error("roots without c_phi");

    if (rec.tphi_dim == r)
        rec.weyl_phi_order = enumerate_weyl(rd).size();
    else if (rec.tphi_dim == 1)
        rec.weyl_phi_order = rec.cphi_roots.empty() ? 1 : 2;
    else if (!rec.cphi_roots.empty())
        throw std::logic_error("orbit_record: centraliser Weyl group of rank > 1 not handled");

    // component classes from the finite part of D
    std::vector<IntVec> combos = {IntVec()};
    for (int i = 0; i < D.kp; ++i) {
        std::vector<IntVec> next;
        for (auto& c : combos)
            for (long long a = 0; a < D.mod[i]; ++a) {
                IntVec x = c;
                x.push_back(a);
                next.push_back(x);
            }
        combos = next;
    }
    for (auto& c : combos) {
        ComponentClass cc;
        cc.theta.assign(r, Rat(0));
        for (int j = 0; j < r; ++j) {
            for (int i = 0; i < D.kp; ++i) cc.theta[j] += Rat(D.V[j][i]) * Rat(c[i], D.mod[i]);
            cc.theta[j] = frac_part(cc.theta[j]);
        }
        cc.weight = Rat(1, combos.size());
        cc.name = "d";
        for (auto& th : cc.theta) cc.name += (cc.name.size() > 1 ? "," : "(") + to_string(th);
        cc.name += ")";
        for (auto& we : rec.weights) {
            Rat ang = 0;
            for (int j = 0; j < r; ++j) ang += cc.theta[j] * Rat(we.gamma[j]);
            cc.entries.push_back({we.i, we.mult, frac_part(ang), we.tphi_weight});
        }
        rec.classes.push_back(cc);
    }

    auto W = enumerate_weyl(rd);
    rec.coset_reps = coset_reps(rd, rec.h, W);
    rec.W_e = w_of_e(L, rec, W);
    for (int w : rec.W_e) rec.dclp[w] = *dclp_dimension(L, rec, W, w);
    return rec;
}

namespace {

struct CatalogEntry {
    std::string name;
    std::vector<IntVec> S;
};

std::vector<CatalogEntry> catalog_for(const std::string& type) {
    if (type == "A1") return {{"0", {}}, {"regular", {{1}}}};
    if (type == "A1xA1") return {{"0", {}}, {"A1'", {{1, 0}}}, {"A1''", {{0, 1}}}, {"regular", {{1, 0}, {0, 1}}}};
    if (type == "A2") return {{"0", {}}, {"[2,1]", {{1, 1}}}, {"[3]", {{1, 0}, {0, 1}}}};
    if (type == "B2") return {{"0", {}}, {"[2,2,1]", {{1, 2}}}, {"[3,1,1]", {{1, 1}}}, {"[5]", {{1, 0}, {0, 1}}}};
    if (type == "C2") return {{"0", {}}, {"[2,1,1]", {{2, 1}}}, {"[2,2]", {{1, 1}}}, {"[4]", {{1, 0}, {0, 1}}}};
    if (type == "G2")
        return {{"0", {}},
                {"A1", {{3, 2}}},
                {"A1~", {{2, 1}}},
                {"G2(a1)", {{3, 1}, {1, 1}}},
                {"G2", {{1, 0}, {0, 1}}}};
    throw UnsupportedType("no orbit catalog for type '" + type + "'");
}

// S3 acting on g_2^e = 1 + C^2 and g_4^e = sgn
std::vector<ComponentClass> s3_classes() {
    auto mk = [](std::string name, Rat w, RatVec th, std::vector<Rat> g2, Rat g4) {
        ComponentClass c;
        c.name = name;
        c.weight = w;
        c.theta = th;
        for (auto& a : g2) c.entries.push_back({2, 1, a, {}});
        c.entries.push_back({4, 1, g4, {}});
        return c;
    };
    return {mk("1", Rat(1, 6), {Rat(0), Rat(0)}, {Rat(0), Rat(0), Rat(0)}, Rat(0)),
            mk("(12)", Rat(1, 2), {Rat(1, 2), Rat(0)}, {Rat(0), Rat(0), Rat(1, 2)}, Rat(1, 2)),
            mk("(123)", Rat(1, 3), {Rat(1, 3), Rat(2, 3)}, {Rat(0), Rat(1, 3), Rat(2, 3)}, Rat(0))};
}

}  // namespace

std::vector<OrbitRecord> orbit_catalog(const LieAlgebra& L, const CatalogOptions& opt) {
    std::vector<OrbitRecord> out;
    for (auto& c : catalog_for(L.rd.type)) {
        RatVec e = L.zero();
        for (auto& b : c.S) e[L.e_index(L.rd.index_of(b))] = 1;
        Sl2Triple t = complete_sl2(L, e);
        t.label = c.name;
        OrbitRecord rec = orbit_record(L, t, c.name);
        if (L.rd.type == "G2" && c.name == "G2(a1)") {
            rec.classes = s3_classes();
            rec.component_note = "S3 (catalog)";
        }
        if ((L.rd.type == "B2" && c.name == "[3,1,1]") || (L.rd.type == "C2" && c.name == "[2,2]")) {
            if (opt.b2_subregular_order != 1) {
                rec.component_external = true;
                rec.component_note = "component group of order " + std::to_string(opt.b2_subregular_order) +
                                     " (external entry; only the identity component is modelled)";
            }
        }
        out.push_back(rec);
    }
    return out;
}

bool cyclotomic_zero(const std::vector<std::pair<Rat, long long>>& terms) {
    long long N = 1;
    for (auto& [a, c] : terms) N = std::lcm(N, frac_part(a).denominator());
    using Poly = std::vector<long long>;
    Poly p(N, 0);
    for (auto& [a, c] : terms) {
        Rat f = frac_part(a) * Rat(N);
        p[f.numerator()] += c;
    }
    // cyclotomic polynomials by division of x^n - 1
    auto divide = [](Poly num, const Poly& den) {
        // exact division, den monic
        Poly q(num.size() - den.size() + 1, 0);
        for (int i = num.size() - 1; i >= (int)den.size() - 1; --i) {
            long long c = num[i];
            q[i - den.size() + 1] = c;
            for (size_t j = 0; j < den.size(); ++j) num[i - den.size() + 1 + j] -= c * den[j];
        }
        return std::make_pair(q, num);
    };
    std::map<long long, Poly> phi;
    for (long long d = 1; d <= N; ++d) {
        if (N % d) continue;
        Poly x(d + 1, 0);
        x[0] = -1;
        x[d] = 1;
        for (auto& [e, pe] : phi)
            if (d % e == 0) x = divide(x, pe).first;
        phi[d] = x;
    }
    Poly rem = p;
    const Poly& ph = phi[N];
    if (rem.size() >= ph.size()) rem = divide(rem, ph).second;
    return std::all_of(rem.begin(), rem.end(), [](long long v) { return v == 0; });
}

OrbitChecks check_orbit(const LieAlgebra& L, const OrbitRecord& rec) {
    OrbitChecks out;
    auto fail = [&](const std::string& s) { out.failures.push_back(rec.label + ": " + s); };
    const RootDatum& rd = L.rd;
    if (!triple_holds(L, rec.triple)) fail("triple relations");
    int s21 = 0;
    for (auto& [i, d] : rec.ge_dims) s21 += (i + 1) * d;
    if (s21 != rec.dim_g) fail("sum (i+1) dim g_i^e != dim g");
    for (auto& [j, d] : rec.g_dims) {
        if (j < 0) continue;
        int s = 0;
        for (auto& [i, de] : rec.ge_dims)
            if (i >= j && (i - j) % 2 == 0) s += de;
        if (s != d) fail("dim g_" + std::to_string(j) + " != sum of dim g_i^e");
    }
    int c_e = 0;
    for (auto& [i, d] : rec.ge_dims) c_e += d;
    if (c_e != rec.c_e_dim) fail("dim c_e != sum dim g_i^e");
    if ((rec.g_dims.count(1) ? rec.g_dims.at(1) : 0) % 2) fail("dim g_1 odd");
    if (rec.orbit_dim % 2) fail("orbit dimension odd");
    if (rec.tphi_dim != rec.c_phi_rank) fail("dim t_phi != rank c_phi");

    // selfduality of the D-isotypic data: weight multisets of g_i^e closed under negation
    DGroup D = d_group(rd, rec.support);
    std::map<int, std::map<ClassKey, int>> by_i;
    for (auto& w : rec.weights) by_i[w.i][{w.finite_part, w.tphi_weight}] += w.mult;
    IntVec wsum(rec.tphi_dim, 0);
    for (auto& [i, m] : by_i)
        for (auto& [k, c] : m) {
            auto nk = D.negate(k);
            if (!m.count(nk) || m.at(nk) != c) fail("g_" + std::to_string(i) + "^e not selfdual");
            for (int a = 0; a < rec.tphi_dim; ++a) wsum[a] += c * k.wt[a];
        }
    if (!all_zero(wsum)) fail("weight sum of c_e nonzero");

    // q^{-1} T Slice - c_e = (q^{-1} - 1) g, graded by half powers of q and D-class
    std::map<std::pair<int, ClassKey>, long long> bal;
    for (auto& s : rec.slice) bal[{s.h_weight - 2, {s.finite_part, s.tphi_weight}}] += s.mult;
    for (auto& w : rec.weights) bal[{w.i, {w.finite_part, w.tphi_weight}}] -= w.mult;
    auto gw = [&](const IntVec& gamma, long long hw) {
        ClassKey k = D.key(gamma);
        bal[{(int)hw - 2, k}] -= 1;
        bal[{(int)hw, k}] += 1;
    };
    for (int i = 0; i < rd.rank; ++i) gw(IntVec(rd.rank, 0), 0);
    for (int a = 0; a < rd.num_roots(); ++a) gw(rd.root_lam[a], h_weight(rd.roots[a], rec.h));
    for (auto& [k, v] : bal)
        if (v != 0) {
            fail("slice character identity");
            break;
        }
    for (auto& s : rec.slice)
        if (s.h_weight > 0) fail("slice weight not repelling");

    // component classes: weights sum to 1, eigenvalues selfdual, trace on g matches the torus point
    Rat wt = 0;
    for (auto& c : rec.classes) {
        wt += c.weight;
        std::map<int, std::map<std::pair<Rat, IntVec>, int>> ev;
        for (auto& e : c.entries) ev[e.i][{frac_part(e.angle), e.tphi_weight}] += e.mult;
        for (auto& [i, m] : ev)
            for (auto& [k, mult] : m) {
                std::pair<Rat, IntVec> nk = {frac_part(-k.first), neg(k.second)};
                if (!m.count(nk) || m.at(nk) != mult) fail("class " + c.name + " not selfdual on g_i^e");
            }
        std::vector<std::pair<Rat, long long>> tr;
        for (auto& e : c.entries) tr.push_back({e.angle, (long long)(e.i + 1) * e.mult});
        tr.push_back({Rat(0), -(long long)rd.rank});
        for (int a = 0; a < rd.num_roots(); ++a) {
            Rat ang = 0;
            for (int j = 0; j < rd.rank; ++j) ang += c.theta[j] * Rat(rd.root_lam[a][j]);
            tr.push_back({ang, -1});
        }
        if (!cyclotomic_zero(tr)) fail("class " + c.name + " trace on g");
    }
    if (wt != 1) fail("class weights do not sum to 1");
    return out;
}

nlohmann::json to_json(const OrbitRecord& rec) {
    using nlohmann::json;
    auto rv = [](const RatVec& v) {
        json a = json::array();
        for (auto& x : v) a.push_back(to_string(x));
        return a;
    };
    json j;
    j["label"] = rec.label;
    j["h"] = rec.h;
    j["support"] = rec.support;
    j["e"] = rv(rec.triple.e);
    j["h_vector"] = rv(rec.triple.h);
    j["f"] = rv(rec.triple.f);
    j["dim_g"] = rec.dim_g;
    j["orbit_dim"] = rec.orbit_dim;
    j["c_e_dim"] = rec.c_e_dim;
    j["c_phi_dim"] = rec.c_phi_dim;
    j["t_phi_dim"] = rec.tphi_dim;
    json ge = json::object(), gd = json::object();
    for (auto& [i, d] : rec.ge_dims) ge[std::to_string(i)] = d;
    for (auto& [i, d] : rec.g_dims) gd[std::to_string(i)] = d;
    j["g_e_dims"] = ge;
    j["g_dims"] = gd;
    j["t_phi_cocharacters"] = rec.tphi_cochars;
    json ws = json::array();
    for (auto& w : rec.weights)
        ws.push_back({{"i", w.i}, {"mult", w.mult}, {"gamma", w.gamma}, {"finite", w.finite_part},
                      {"t_phi_weight", w.tphi_weight}});
    j["weights"] = ws;
    j["c_phi_roots"] = rec.cphi_roots;
    j["weyl_phi_order"] = rec.weyl_phi_order;
    json cs = json::array();
    for (auto& c : rec.classes) {
        json en = json::array();
        for (auto& e : c.entries)
            en.push_back({{"i", e.i}, {"mult", e.mult}, {"angle", to_string(e.angle)}, {"t_phi_weight", e.tphi_weight}});
        cs.push_back({{"name", c.name}, {"weight", to_string(c.weight)}, {"theta", rv(c.theta)}, {"entries", en}});
    }
    j["component_classes"] = cs;
    j["component_note"] = rec.component_note;
    j["component_external"] = rec.component_external;
    json sl = json::array();
    for (auto& s : rec.slice)
        sl.push_back({{"h_weight", s.h_weight}, {"mult", s.mult}, {"finite", s.finite_part}, {"t_phi_weight", s.tphi_weight}});
    j["slice_weights"] = sl;
    j["coset_reps"] = rec.coset_reps;
    j["W_e"] = rec.W_e;
    json dc = json::object();
    for (auto& [w, d] : rec.dclp) dc[std::to_string(w)] = d;
    j["dclp_dims"] = dc;
    return j;
}

}  // namespace eis
