#include "eis/rootsys.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <numbers>
#include <set>

namespace eis {

Lattice parse_lattice(const std::string& s) {
    if (s == "adjoint" || s == "ad") return Lattice::adjoint;
    if (s == "simply_connected" || s == "sc") return Lattice::simply_connected;
    throw std::invalid_argument("unknown lattice '" + s + "'");
}

std::string lattice_name(Lattice l) { return l == Lattice::adjoint ? "adjoint" : "simply_connected"; }

cplx character(const Point& y, const IntVec& lam) {
    cplx out = 1.0;
    for (size_t j = 0; j < lam.size(); ++j) {
        long long n = lam[j];
        if (n == 0) continue;
        cplx b = n > 0 ? y[j] : 1.0 / y[j];
        for (long long k = 0; k < std::llabs(n); ++k) out *= b;
    }
    return out;
}

RatVec CenterGroup::mul(const RatVec& a, const RatVec& b) const {
    RatVec c(a.size());
    for (size_t i = 0; i < a.size(); ++i) c[i] = frac_part(a[i] + b[i]);
    return c;
}

Point CenterGroup::point(int k) const {
    Point y;
    for (auto& t : elements[k]) {
        double th = 2 * std::numbers::pi * (t).to_double();
        y.emplace_back(std::cos(th), std::sin(th));
    }
    return y;
}

int RootDatum::index_of(const IntVec& beta) const {
    for (int k = 0; k < num_roots(); ++k)
        if (roots[k] == beta) return k;
    return -1;
}

Rat RootDatum::inner(const IntVec& a, const IntVec& b) const {
    Rat s = 0;
    for (int i = 0; i < rank; ++i)
        for (int j = 0; j < rank; ++j) s += Rat(a[i]) * gram[i][j] * Rat(b[j]);
    return s;
}

Rat RootDatum::pair_coroot(const IntVec& a, const IntVec& b) const { return 2 * inner(a, b) / inner(b, b); }

RatVec RootDatum::lam_to_simple(const IntVec& lam) const {
    RatVec v(rank, Rat(0));
    for (int j = 0; j < rank; ++j)
        for (int k = 0; k < rank; ++k) v[k] += Rat(lam[j]) * lattice_basis[j][k];
    return v;
}

IntVec RootDatum::simple_to_lam(const IntVec& beta) const {
    // beta = sum_j n_j b_j  <=>  n = (B^T)^-1 beta
    RatMat bt_inv = inverse(transpose(lattice_basis));
    RatVec b;
    for (auto v : beta) b.emplace_back(v);
    return to_int(matvec(bt_inv, b));
}

Rat RootDatum::eval_cochar(const IntVec& lam, const RatVec& mu) const {
    RatVec v = lam_to_simple(lam);
    Rat s = 0;
    for (int k = 0; k < rank; ++k) s += v[k] * mu[k];
    return s;
}

Point RootDatum::cochar_point(cplx q, const RatVec& mu) const {
    Point y;
    cplx lq = std::log(q);
    for (int j = 0; j < rank; ++j) {
        IntVec e(rank, 0);
        e[j] = 1;
        y.push_back(std::exp(lq * (eval_cochar(e, mu)).to_double()));
    }
    return y;
}

namespace {

RatMat gram_for(const std::string& t) {
    auto g = [](std::initializer_list<std::initializer_list<long long>> rows) {
        RatMat m;
        for (auto& r : rows) {
            RatVec v;
            for (auto x : r) v.emplace_back(x);
            m.push_back(v);
        }
        return m;
    };
    if (t == "A1") return g({{2}});
    if (t == "A1xA1") return g({{2, 0}, {0, 2}});
    if (t == "A2") return g({{2, -1}, {-1, 2}});
    if (t == "B2") return g({{4, -2}, {-2, 2}});  // a1 long, a2 short
    if (t == "C2") return g({{2, -2}, {-2, 4}});  // a1 short, a2 long
    if (t == "G2") return g({{2, -3}, {-3, 6}});  // a1 short, a6 long
    throw UnsupportedType("unsupported root system type '" + t + "'");
}

std::string normalize_type(std::string t) {
    if (t == "A1A1" || t == "A1*A1" || t == "A1+A1") t = "A1xA1";
    return t;
}

std::string generic_label(const IntVec& c) {
    std::string s;
    bool neg = false;
    for (auto v : c)
        if (v < 0) neg = true;
    for (size_t i = 0; i < c.size(); ++i) {
        long long v = std::llabs(c[i]);
        if (v == 0) continue;
        if (!s.empty()) s += "+";
        if (v > 1) s += std::to_string(v);
        s += "a" + std::to_string(i + 1);
    }
    if (neg) s = "-(" + s + ")";
    return s;
}

std::string g2_label(const IntVec& c) {
    static const std::map<IntVec, std::string> names = {
        {{1, 0}, "a1"}, {{0, 1}, "a6"}, {{1, 1}, "a5"}, {{2, 1}, "a3"}, {{3, 1}, "a2"}, {{3, 2}, "a4"}};
    IntVec p = c;
    bool neg = c[0] < 0 || c[1] < 0;
    if (neg)
        for (auto& v : p) v = -v;
    return (neg ? "-" : "") + names.at(p);
}

IntVec reflect(const IntMat& cartan, int i, const IntVec& beta) {
    long long p = 0;
    for (size_t k = 0; k < beta.size(); ++k) p += beta[k] * cartan[k][i];
    IntVec out = beta;
    out[i] -= p;
    return out;
}

}  // namespace

RootDatum build_root_system(const std::string& type_in, Lattice lattice) {
    RootDatum rd;
    rd.type = normalize_type(type_in);
    rd.lattice = lattice;
    rd.gram = gram_for(rd.type);
    int r = rd.rank = rd.gram.size();
    rd.cartan.assign(r, IntVec(r, 0));
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) {
            Rat c = 2 * rd.gram[i][j] / rd.gram[j][j];
            rd.cartan[i][j] = c.numerator();
        }

    // roots = W-orbit of the simple roots
    std::set<IntVec> seen;
    std::deque<IntVec> todo;
    for (int i = 0; i < r; ++i) {
        IntVec e(r, 0);
        e[i] = 1;
        todo.push_back(e);
        seen.insert(e);
    }
    while (!todo.empty()) {
        IntVec b = todo.front();
        todo.pop_front();
        for (int i = 0; i < r; ++i) {
            IntVec c = reflect(rd.cartan, i, b);
            if (seen.insert(c).second) todo.push_back(c);
        }
    }
    std::vector<IntVec> pos;
    for (auto& b : seen) {
        bool p = std::all_of(b.begin(), b.end(), [](long long v) { return v >= 0; });
        if (p) pos.push_back(b);
    }
    auto ht = [](const IntVec& b) {
        long long s = 0;
        for (auto v : b) s += v;
        return s;
    };
    std::sort(pos.begin(), pos.end(), [&](const IntVec& a, const IntVec& b) {
        if (ht(a) != ht(b)) return ht(a) < ht(b);
        return a > b;
    });
    rd.npos = pos.size();
    rd.roots = pos;
    for (auto& b : pos) {
        IntVec n = b;
        for (auto& v : n) v = -v;
        rd.roots.push_back(n);
    }
    for (auto& b : rd.roots) {
        rd.heights.push_back((int)ht(b));
        rd.labels.push_back(rd.type == "G2" ? g2_label(b) : generic_label(b));
        Rat bb = rd.inner(b, b);
        IntVec cv;
        for (int i = 0; i < r; ++i) {
            Rat c = Rat(b[i]) * rd.gram[i][i] / bb;
            if (c.denominator() != 1) throw std::logic_error("non-integral coroot");
            cv.push_back(c.numerator());
        }
        rd.coroots.push_back(cv);
    }

    // character lattice
    if (rd.type == "G2") {
        rd.lattice_basis = {{Rat(2), Rat(1)}, {Rat(1), Rat(1)}};
    } else if (lattice == Lattice::adjoint) {
        rd.lattice_basis = rat_identity(r);
    } else {
        rd.lattice_basis = inverse(to_rat(rd.cartan));
    }
    for (auto& b : rd.roots) rd.root_lam.push_back(rd.simple_to_lam(b));

    rd.rho.assign(r, Rat(0));
    for (int k = 0; k < rd.npos; ++k)
        for (int i = 0; i < r; ++i) rd.rho[i] += Rat(rd.roots[k][i], 2);
    rd.rho_check.assign(r, 1);
    rd.exponents = exponents_from_heights(rd);
    return rd;
}

IntVec exponents_from_heights(const RootDatum& rd) {
    std::map<int, long long> n;
    int maxh = 0;
    for (int k = 0; k < rd.npos; ++k) {
        n[rd.heights[k]]++;
        maxh = std::max(maxh, rd.heights[k]);
    }
    IntVec ex;
    for (int m = 1; m <= maxh; ++m) {
        long long mult = n[m] - n[m + 1];
        if (mult < 0) throw std::runtime_error("inconsistent height multiset");
        for (long long j = 0; j < mult; ++j) ex.push_back(m);
    }
    long long sum = 0;
    for (auto m : ex) sum += m;
    if ((long long)ex.size() != rd.rank || sum != rd.npos)
        throw std::runtime_error("inconsistent height multiset");
    return ex;
}

bool heights_exponents_identity(const RootDatum& rd) {
    std::map<long long, long long> lhs, rhs;
    for (int k = 0; k < rd.npos; ++k) {
        lhs[rd.heights[k]] += 1;
        lhs[rd.heights[k] - 1] -= 1;
    }
    for (auto m : rd.exponents) rhs[m] += 1;
    rhs[0] -= rd.rank;
    auto strip = [](std::map<long long, long long>& m) {
        for (auto it = m.begin(); it != m.end();) it = it->second == 0 ? m.erase(it) : std::next(it);
    };
    strip(lhs);
    strip(rhs);
    return lhs == rhs;
}

std::vector<WeylElement> enumerate_weyl(const RootDatum& rd) {
    int r = rd.rank;
    std::vector<IntMat> S;
    for (int i = 0; i < r; ++i) {
        IntMat m(r, IntVec(r, 0));
        for (int k = 0; k < r; ++k) {
            IntVec e(r, 0);
            e[k] = 1;
            IntVec c = reflect(rd.cartan, i, e);
            for (int a = 0; a < r; ++a) m[a][k] = c[a];
        }
        S.push_back(m);
    }
    RatMat bt = transpose(rd.lattice_basis);
    RatMat bt_inv = inverse(bt);

    std::vector<WeylElement> W;
    std::map<IntMat, int> index;
    WeylElement id;
    id.matrix.assign(r, IntVec(r, 0));
    for (int i = 0; i < r; ++i) id.matrix[i][i] = 1;
    W.push_back(id);
    index[id.matrix] = 0;
    for (size_t head = 0; head < W.size(); ++head) {
        for (int i = 0; i < r; ++i) {
            IntMat m = matmul(S[i], W[head].matrix);
            if (index.count(m)) continue;
            WeylElement w;
            w.matrix = m;
            w.word = W[head].word;
            w.word.insert(w.word.begin(), i);
            w.length = W[head].length + 1;
            index[m] = W.size();
            W.push_back(w);
        }
    }
    for (auto& w : W) {
        RatMat L = matmul(matmul(bt_inv, to_rat(w.matrix)), bt);
        w.lam.assign(r, IntVec(r, 0));
        for (int a = 0; a < r; ++a) {
            if (!is_integral(L[a])) throw std::logic_error("Weyl action not integral on lattice");
            w.lam[a] = to_int(L[a]);
        }
        RatMat inv = inverse(to_rat(w.matrix));
        IntMat im;
        for (auto& row : inv) im.push_back(to_int(row));
        w.inverse = index.at(im);
    }
    return W;
}

int longest_index(const std::vector<WeylElement>& W) {
    int best = 0;
    for (size_t k = 0; k < W.size(); ++k)
        if (W[k].length > W[best].length) best = k;
    return best;
}

IntVec weyl_apply(const WeylElement& w, const IntVec& beta) { return matvec(w.matrix, beta); }

Point act(const std::vector<WeylElement>& W, int w, const Point& y) {
    const IntMat& L = W[W[w].inverse].lam;
    int r = y.size();
    Point out(r);
    for (int j = 0; j < r; ++j) {
        IntVec col(r);
        for (int k = 0; k < r; ++k) col[k] = L[k][j];
        out[j] = character(y, col);
    }
    return out;
}

CenterGroup center(const RootDatum& rd) {
    // x^{alpha_i} = 1 for all simple roots: R^T theta integral, R = simple roots in lattice coords
    int r = rd.rank;
    IntMat R(r, IntVec(r, 0));
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) R[j][i] = rd.root_lam[i][j];
    Smith s = smith(R);
    CenterGroup c;
    IntVec d = s.diag();
    std::vector<long long> mods;
    for (auto v : d) {
        if (v == 0) throw std::logic_error("center: roots do not span");
        if (v > 1) c.invariants.push_back(v);
        mods.push_back(v);
    }
    // theta = L^T phi, phi_i in (1/d_i) Z
    std::vector<IntVec> combos = {IntVec(r, 0)};
    for (int i = 0; i < r; ++i) {
        std::vector<IntVec> next;
        for (auto& cb : combos)
            for (long long a = 0; a < mods[i]; ++a) {
                IntVec x = cb;
                x[i] = a;
                next.push_back(x);
            }
        combos = next;
    }
    for (auto& cb : combos) {
        RatVec th(r, Rat(0));
        for (int j = 0; j < r; ++j)
            for (int i = 0; i < r; ++i) th[j] += Rat(s.left[i][j]) * Rat(cb[i], mods[i]);
        for (auto& t : th) t = frac_part(t);
        c.elements.push_back(th);
    }
    std::sort(c.elements.begin(), c.elements.end());
    return c;
}

nlohmann::json to_json(const RootDatum& rd) {
    using nlohmann::json;
    json j;
    j["type"] = rd.type;
    j["lattice"] = lattice_name(rd.lattice);
    j["rank"] = rd.rank;
    j["cartan_matrix"] = rd.cartan;
    std::vector<IntVec> simple(rd.roots.begin(), rd.roots.begin() + rd.rank);
    j["simple_roots"] = simple;
    json pos = json::array();
    for (int k = 0; k < rd.npos; ++k)
        pos.push_back({{"label", rd.labels[k]},
                       {"simple_coords", rd.roots[k]},
                       {"lattice_coords", rd.root_lam[k]},
                       {"coroot", rd.coroots[k]},
                       {"height", rd.heights[k]},
                       {"norm2", to_string(rd.inner(rd.roots[k], rd.roots[k]))}});
    j["positive_roots"] = pos;
    std::vector<int> hs(rd.heights.begin(), rd.heights.begin() + rd.npos);
    j["heights"] = hs;
    j["exponents"] = rd.exponents;
    json lb = json::array();
    for (auto& row : rd.lattice_basis) {
        json jr = json::array();
        for (auto& v : row) jr.push_back(to_string(v));
        lb.push_back(jr);
    }
    j["lattice_basis"] = lb;
    json rho = json::array();
    for (auto& v : rd.rho) rho.push_back(to_string(v));
    j["rho"] = rho;
    j["rho_check"] = rd.rho_check;
    auto W = enumerate_weyl(rd);
    j["weyl_order"] = W.size();
    auto c = center(rd);
    j["center_order"] = c.order();
    j["center_invariants"] = c.invariants;
    return j;
}

}  // namespace eis
