#include "eis/harness.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <set>
#include <sstream>

namespace eis {

using nlohmann::json;

namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;

const std::set<std::string> kGroups = {"A1", "A2", "B2", "C2", "G2"};
const std::set<std::string> kSuites = {"main", "structural", "g2", "cohomology", "all"};

json cjson(cplx z) { return json::array({z.real(), z.imag()}); }

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// uniform in [0, 1) from raw engine output, identical on every platform
double unit(std::mt19937_64& g) { return double(g() >> 11) * 0x1.0p-53; }

struct GroupDefaults {
    std::vector<double> q;
    std::vector<json> genera;
    int nodes, f_pairs;
    double tolerance;
    bool relative;  // false: |lhs - rhs| <= tol (1 + |lhs|)
};

json psi_c_spec() { return {{"kind", "psi_c"}}; }
json genus_one_spec() { return {{"kind", "function_field"}, {"angles", {1.1}}}; }

GroupDefaults defaults_for(const std::string& g) {
    if (g == "A1") return {{1.7, 2.0}, {psi_c_spec(), genus_one_spec()}, 512, 10, 1e-9, false};
    if (g == "A2") return {{1.5}, {psi_c_spec(), genus_one_spec()}, 512, 10, 1e-8, true};
    if (g == "G2") return {{1.5}, {psi_c_spec()}, 512, 5, 1e-7, true};
    return {{1.5}, {psi_c_spec()}, 128, 3, 1e-7, true};
}

std::string genus_name(const json& g) {
    std::string k = g.value("kind", "?");
    if (k == "psi_c") return "psi_c";
    if (k == "function_field") return "genus" + std::to_string(g.contains("angles") ? g["angles"].size() : g["alphas"].size() / 2);
    return k;
}

std::string fmt_double(double v, const char* f = "%.6g") {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

const Group& cached_group(const std::string& type, Lattice l) {
    static std::map<std::pair<std::string, Lattice>, Group> cache;
    auto key = std::make_pair(type, l);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, make_group(type, l)).first;
    return it->second;
}

CaseRecord compare(std::string id, std::string anchor, json inputs, cplx lhs, cplx rhs, double tol, bool relative) {
    CaseRecord c;
    c.id = std::move(id);
    c.anchor = std::move(anchor);
    c.inputs = std::move(inputs);
    c.lhs = lhs;
    c.rhs = rhs;
    c.abs_error = std::abs(lhs - rhs);
    c.rel_error = std::abs(lhs) > 0 ? c.abs_error / std::abs(lhs) : c.abs_error;
    c.tolerance = tol;
    c.relative = relative;
    c.pass = relative ? c.rel_error <= tol : c.abs_error <= tol * (1 + std::abs(lhs));
    return c;
}

CaseRecord flag(std::string id, std::string anchor, json inputs, bool ok) {
    CaseRecord c;
    c.id = std::move(id);
    c.anchor = std::move(anchor);
    c.inputs = std::move(inputs);
    c.lhs = ok ? 1.0 : 0.0;
    c.rhs = 1.0;
    c.abs_error = ok ? 0 : 1;
    c.pass = ok;
    return c;
}

std::vector<Lattice> lattices_for(const HarnessConfig& c) {
    if (!c.lattices.empty()) return c.lattices;
    if (c.group == "A1") return {Lattice::adjoint, Lattice::simply_connected};
    return {Lattice::adjoint};
}

// random regular point near the unit torus
Point random_point(int rank, std::mt19937_64& g) {
    Point x(rank);
    for (auto& v : x) v = std::exp(cplx(0.3 * (2 * unit(g) - 1), kTwoPi * unit(g)));
    return x;
}

}  // namespace

// ---- configuration

HarnessConfig config_from_json(const json& j) {
    HarnessConfig c;
    const std::string root = "config";
    if (!j.is_object()) throw ConfigError(root + ": expected an object");
    auto number = [&](const json& v, const std::string& path) {
        if (!v.is_number()) throw ConfigError(path + ": expected a number");
        return v.get<double>();
    };
    auto integer = [&](const json& v, const std::string& path) {
        if (!v.is_number_integer()) throw ConfigError(path + ": expected an integer");
        return v.get<long long>();
    };
    for (auto& [key, v] : j.items()) {
        std::string p = root + "." + key;
        if (key == "group") {
            if (!v.is_string() || !kGroups.count(v.get<std::string>())) throw ConfigError(p + ": expected one of A1, A2, B2, C2, G2");
            c.group = v;
        } else if (key == "lattice") {
            json arr = v.is_array() ? v : json::array({v});
            for (size_t k = 0; k < arr.size(); ++k) {
                std::string pk = v.is_array() ? p + "[" + std::to_string(k) + "]" : p;
                if (!arr[k].is_string()) throw ConfigError(pk + ": expected a string");
                try {
                    c.lattices.push_back(parse_lattice(arr[k]));
                } catch (const std::invalid_argument& e) {
                    throw ConfigError(pk + ": " + e.what());
                }
            }
        } else if (key == "q") {
            json arr = v.is_array() ? v : json::array({v});
            for (size_t k = 0; k < arr.size(); ++k) {
                std::string pk = v.is_array() ? p + "[" + std::to_string(k) + "]" : p;
                double q = number(arr[k], pk);
                if (!(q > 1)) throw ConfigError(pk + ": q must exceed 1");
                c.q.push_back(q);
            }
        } else if (key == "genus") {
            json arr = v.is_array() ? v : json::array({v});
            for (size_t k = 0; k < arr.size(); ++k) {
                std::string pk = v.is_array() ? p + "[" + std::to_string(k) + "]" : p;
                // validated against a sample q now, so errors carry the key path
                context_for(arr[k], 1.5, pk);
                c.genera.push_back(arr[k]);
            }
        } else if (key == "quadrature") {
            if (!v.is_object()) throw ConfigError(p + ": expected an object");
            for (auto& [qk, qv] : v.items()) {
                std::string pq = p + "." + qk;
                if (qk == "nodes") {
                    long long n = integer(qv, pq);
                    if (n < 2 || n % 2) throw ConfigError(pq + ": must be even and >= 2");
                    c.quad.nodes = n;
                } else if (qk == "shift") {
                    c.quad.shift = number(qv, pq);
                    if (!(c.quad.shift > 1)) throw ConfigError(pq + ": must exceed 1 for an admissible contour");
                } else if (qk == "offsets") {
                    if (!qv.is_array()) throw ConfigError(pq + ": expected an array");
                    for (size_t k = 0; k < qv.size(); ++k) c.quad.offsets.push_back(number(qv[k], pq + "[" + std::to_string(k) + "]"));
                } else if (qk == "trunc_height") {
                    c.quad.trunc_height = number(qv, pq);
                    if (c.quad.trunc_height < 0) throw ConfigError(pq + ": must be >= 0");
                } else {
                    throw ConfigError(pq + ": unknown key");
                }
            }
        } else if (key == "f_pairs") {
            long long n = integer(v, p);
            if (n < 1) throw ConfigError(p + ": must be positive");
            c.f_pairs = n;
        } else if (key == "box") {
            long long n = integer(v, p);
            if (n < 0 || n > 4) throw ConfigError(p + ": must be in 0..4");
            c.box = n;
        } else if (key == "seed") {
            if (!v.is_number_unsigned()) throw ConfigError(p + ": expected a non-negative integer");
            c.seed = v.get<std::uint64_t>();
        } else if (key == "tolerance") {
            c.tolerance = number(v, p);
            if (!(c.tolerance > 0)) throw ConfigError(p + ": must be positive");
        } else if (key == "suite") {
            if (!v.is_string() || !kSuites.count(v.get<std::string>()))
                throw ConfigError(p + ": expected one of main, structural, g2, cohomology, all");
            c.suite = v;
        } else {
            throw ConfigError(p + ": unknown key");
        }
    }
    return c;
}

json to_json(const HarnessConfig& c) {
    auto d = defaults_for(c.group);
    json j;
    j["group"] = c.group;
    json lat = json::array();
    for (auto l : lattices_for(c)) lat.push_back(lattice_name(l));
    j["lattice"] = lat;
    j["q"] = c.q.empty() ? d.q : c.q;
    j["genus"] = c.genera.empty() ? d.genera : c.genera;
    j["quadrature"] = {{"nodes", c.quad.nodes ? c.quad.nodes : d.nodes},
                       {"shift", c.quad.shift},
                       {"offsets", c.quad.offsets.empty() ? default_offsets() : c.quad.offsets},
                       {"trunc_height", c.quad.trunc_height}};
    j["f_pairs"] = c.f_pairs ? c.f_pairs : d.f_pairs;
    j["box"] = c.box;
    j["seed"] = c.seed;
    j["tolerance"] = c.tolerance > 0 ? c.tolerance : d.tolerance;
    j["suite"] = c.suite;
    return j;
}

EvalContext context_for(const json& genus, double q, const std::string& path) {
    if (genus.is_object() && genus.value("kind", "") == "psi_c") {
        for (auto& [k, v] : genus.items())
            if (k != "kind") throw ConfigError(path + "." + k + ": unknown key for psi_c");
        return make_context(one_minus_c_over_x(0.8 / q + 0.2), q);
    }
    return make_context(genus_from_json(genus, q, path), q);
}

ContourSpec contour_for(const Group& G, const HarnessConfig& c, double q, int nodes) {
    ContourSpec s;
    s.rank = G.rd.rank;
    s.nodes = nodes;
    s.offsets = c.quad.offsets;
    s.trunc_height = c.quad.trunc_height;
    s.shift = G.rd.cochar_point(q, RatVec(s.rank, Rat(long(std::llround(c.quad.shift * 1000)), 1000)));
    return s;
}

// ---- reports

bool VerificationReport::passed() const {
    for (auto& c : cases)
        if (!c.pass) return false;
    return !cases.empty();
}

json VerificationReport::to_json(bool timing) const {
    json j;
    j["schema"] = kReportSchema;
    j["suite"] = suite;
    j["environment"] = environment;
    json arr = json::array();
    int npass = 0;
    for (auto& c : cases) {
        json r = {{"id", c.id},           {"anchor", c.anchor},       {"inputs", c.inputs},
                  {"lhs", cjson(c.lhs)},  {"rhs", cjson(c.rhs)},      {"abs_error", c.abs_error},
                  {"rel_error", c.rel_error}, {"tolerance", c.tolerance}, {"pass", c.pass},
                  {"criterion", c.relative ? "relative" : "absolute_1_plus_value"}};
        if (timing) r["runtime_s"] = c.runtime_s;
        arr.push_back(r);
        npass += c.pass;
    }
    j["cases"] = arr;
    j["summary"] = {{"cases", cases.size()}, {"passed", npass}, {"failed", int(cases.size()) - npass}};
    j["pass"] = passed();
    return j;
}

std::string VerificationReport::csv() const {
    std::ostringstream o;
    o << "suite,id,anchor,lhs_re,lhs_im,rhs_re,rhs_im,abs_error,rel_error,tolerance,pass,runtime_s\n";
    for (auto& c : cases)
        o << suite << "," << c.id << "," << c.anchor << "," << fmt_double(c.lhs.real(), "%.17g") << ","
          << fmt_double(c.lhs.imag(), "%.17g") << "," << fmt_double(c.rhs.real(), "%.17g") << ","
          << fmt_double(c.rhs.imag(), "%.17g") << "," << fmt_double(c.abs_error, "%.3e") << ","
          << fmt_double(c.rel_error, "%.3e") << "," << fmt_double(c.tolerance, "%.1e") << "," << (c.pass ? "pass" : "FAIL")
          << "," << fmt_double(c.runtime_s, "%.3f") << "\n";
    return o.str();
}

std::string VerificationReport::table() const {
    std::ostringstream o;
    size_t w = 4;
    for (auto& c : cases) w = std::max(w, c.id.size());
    int npass = 0;
    o << "suite " << suite << "\n";
    for (auto& c : cases) {
        char line[512];
        std::snprintf(line, sizeof line, "  %-4s %-*s  err %.2e  tol %.0e  %7.2fs\n", c.pass ? "ok" : "FAIL", int(w),
                      c.id.c_str(), c.relative ? c.rel_error : c.abs_error / (1 + std::abs(c.lhs)), c.tolerance, c.runtime_s);
        o << line;
        npass += c.pass;
    }
    o << "  " << npass << "/" << cases.size() << " passed\n";
    return o.str();
}

// ---- test functions

std::vector<LaurentPolynomial> f_basis(int rank, int box, std::uint64_t seed, int n_random) {
    std::vector<LaurentPolynomial> out;
    IntVec lam(rank, -box);
    for (;;) {
        out.push_back(monomial(lam));
        int j = rank - 1;
        while (j >= 0 && lam[j] == box) lam[j--] = -box;
        if (j < 0) break;
        ++lam[j];
    }
    std::mt19937_64 g(seed);
    for (int k = 0; k < n_random; ++k) {
        LaurentPolynomial f;
        for (int t = 0; t < 3; ++t) {
            IntVec m(rank);
            for (auto& v : m) v = int(g() % 5) - 2;
            f.terms[m] += cplx(2 * unit(g) - 1, 2 * unit(g) - 1);
        }
        out.push_back(f);
    }
    return out;
}

std::vector<std::pair<LaurentPolynomial, LaurentPolynomial>> f_pairs(int rank, int box, std::uint64_t seed, int count) {
    auto basis = f_basis(rank, box, seed);
    std::mt19937_64 g(seed ^ 0x9e3779b97f4a7c15ull);
    std::vector<std::pair<LaurentPolynomial, LaurentPolynomial>> out;
    for (int k = 0; k < count; ++k) {
        size_t a = g() % basis.size(), b = g() % basis.size();
        out.emplace_back(basis[a], basis[b]);
    }
    return out;
}

// ---- collision scan

CollisionScan collision_scan(const Group& G, const EvalContext& ctx, const ContourSpec& lhs, int orbit_nodes) {
    CollisionScan s;
    cplx q = ctx.q;
    const auto& zeros = ctx.genus.zeros;
    auto note = [&](double d, const std::string& where) {
        if (d < s.min_distance) {
            s.min_distance = d;
            s.where = where;
        }
    };
    // psi zeros and Psi poles among the arguments of one Psi factor
    auto psi_arg = [&](cplx a, const std::string& where) {
        note(std::abs(a - 1.0), where + " (pole)");
        for (auto z : zeros) note(std::abs(a - z), where + " (zero)");
    };
    auto grid = [&](int dim, int N, const std::vector<double>& off, const std::function<void(const std::vector<cplx>&)>& fn) {
        const auto& o = off.empty() ? default_offsets() : off;
        long long total = 1;
        for (int j = 0; j < dim; ++j) total *= N;
        std::vector<cplx> t(dim);
        for (long long n = 0; n < total; ++n) {
            long long m = n;
            for (int j = dim - 1; j >= 0; --j) {
                t[j] = std::polar(1.0, kTwoPi * (double(m % N) / N + o[j]));
                m /= N;
            }
            fn(t);
        }
    };
    // pairing contour: Z(u) and Z(q u) for u = x^a, a > 0
    grid(G.rd.rank, lhs.nodes, lhs.offsets, [&](const std::vector<cplx>& t) {
        Point x(G.rd.rank);
        for (int j = 0; j < G.rd.rank; ++j) x[j] = lhs.shift[j] * t[j];
        for (int a = 0; a < G.rd.npos; ++a) {
            cplx u = G.root_value(x, a);
            psi_arg(1.0 / u, "pairing Z(x^" + G.rd.labels[a] + ")");
            psi_arg(u / q, "pairing Z(x^" + G.rd.labels[a] + ")");
            psi_arg(1.0 / (q * u), "pairing Z(q x^" + G.rd.labels[a] + ")");
            psi_arg(u, "pairing Z(q x^" + G.rd.labels[a] + ")");
        }
    });
    // unit torus of the reduced zero-orbit term: removable singularities at x^a = 1
    grid(G.rd.rank, orbit_nodes, {}, [&](const std::vector<cplx>& x) {
        for (int a = 0; a < G.rd.npos; ++a) note(std::abs(G.root_value(x, a) - 1.0), "zero orbit x^" + G.rd.labels[a] + " = 1");
    });
    // orbit densities on their T_phi grids
    for (auto& rec : G.orbits) {
        if (rec.support.empty()) continue;
        for (auto& cls : rec.classes)
            grid(rec.tphi_dim, rec.tphi_dim ? orbit_nodes : 1, {}, [&](const std::vector<cplx>& t) {
                for (auto& e : cls.entries) {
                    cplx u = std::polar(1.0, kTwoPi * e.angle.to_double());
                    for (size_t k = 0; k < e.tphi_weight.size(); ++k) u *= std::pow(t[k], e.tphi_weight[k]);
                    double h = e.i / 2.0;
                    std::string where = "density " + rec.label + " class " + cls.name + " i=" + std::to_string(e.i);
                    psi_arg(std::pow(q, -1 - h) * u, where);
                    if (e.i == 0)
                        for (auto z : zeros) note(std::abs(u - z), where + " (zero)");
                    else
                        psi_arg(std::pow(q, h) * u, where);
                }
            });
    }
    return s;
}

// ---- suites

VerificationReport run_main_identity_suite(const HarnessConfig& c) {
    VerificationReport rep;
    rep.suite = "main";
    rep.environment = to_json(c);
    auto d = defaults_for(c.group);
    auto qs = c.q.empty() ? d.q : c.q;
    auto genera = c.genera.empty() ? d.genera : c.genera;
    int N = c.quad.nodes ? c.quad.nodes : d.nodes;
    int npairs = c.f_pairs ? c.f_pairs : d.f_pairs;
    double tol = c.tolerance > 0 ? c.tolerance : d.tolerance;
    for (auto lat : lattices_for(c)) {
        const Group& G = cached_group(c.group, lat);
        auto pairs = f_pairs(G.rd.rank, c.box, c.seed, npairs);
        for (double q : qs)
            for (size_t gi = 0; gi < genera.size(); ++gi) {
                auto ctx = context_for(genera[gi], q, "genus[" + std::to_string(gi) + "]");
                auto contour = contour_for(G, c, q, N);
                std::string base = c.group + "/" + lattice_name(lat) + "/" + genus_name(genera[gi]) + "/q=" + fmt_double(q);
                json env = {{"group", c.group}, {"lattice", lattice_name(lat)}, {"q", q}, {"genus", describe(ctx)}, {"nodes", N}};

                auto t0 = std::chrono::steady_clock::now();
                auto scan = collision_scan(G, ctx, contour, N);
                auto sc = flag(base + "/collision-scan", "node-collision-scan", env, scan.ok());
                sc.lhs = scan.min_distance;
                sc.rhs = 1e-6;
                sc.inputs["closest"] = scan.where;
                sc.runtime_s = seconds_since(t0);
                rep.cases.push_back(sc);

                OrbitOptions o;
                o.nodes = N;
                for (size_t k = 0; k < pairs.size(); ++k) {
                    auto& [f1, f2] = pairs[k];
                    t0 = std::chrono::steady_clock::now();
                    auto F1 = as_function(f1), F2 = as_function(f2);
                    auto lhs = eis_pairing(G, ctx, F1, F2, contour);
                    auto rhs = spectral_sum(G, ctx, F1, F2, o);
                    json in = env;
                    in["f1"] = to_json(f1);
                    in["f2"] = to_json(f2);
                    json orb;
                    for (auto& oc : rhs.orbits) orb[oc.label] = cjson(oc.value);
                    in["orbits"] = orb;
                    in["lhs_quad_error"] = lhs.error_estimate;
                    char id[32];
                    std::snprintf(id, sizeof id, "/pair%02zu", k);
                    auto rec = compare(base + id, "pairing-equals-orbit-sum", in, lhs.value, rhs.total, tol, d.relative);
                    rec.runtime_s = seconds_since(t0);
                    rep.cases.push_back(rec);

                    if (k == 0) {
                        // 1% on one density must be detected
                        t0 = std::chrono::steady_clock::now();
                        OrbitOptions bad = o;
                        bad.density_scale = 1.01;
                        const auto& reg = G.orbits.back();
                        auto oc = orbit_contribution(G, ctx, reg, F1, F2, bad);
                        cplx off = rhs.total - rhs.orbits.back().value + oc.value;
                        auto chk = compare(base + "/knob-sanity", "corrupted-density-detected", env, lhs.value, off, tol, d.relative);
                        chk.inputs["orbit"] = reg.label;
                        chk.inputs["density_scale"] = 1.01;
                        chk.pass = !chk.pass;
                        chk.runtime_s = seconds_since(t0);
                        rep.cases.push_back(chk);
                    }
                }
            }
    }
    return rep;
}

VerificationReport run_structural_suite(const HarnessConfig& c) {
    VerificationReport rep;
    rep.suite = "structural";
    rep.environment = {{"seed", c.seed}};
    for (std::string type : {"A1", "A2", "B2", "C2", "G2"})
        for (auto lat : {Lattice::adjoint, Lattice::simply_connected}) {
            auto t0 = std::chrono::steady_clock::now();
            const Group& G = cached_group(type, lat);
            std::string base = type + "/" + lattice_name(lat);
            json env = {{"group", type}, {"lattice", lattice_name(lat)}};
            auto r = flag(base + "/heights-exponents", "heights-exponents-identity", env, heights_exponents_identity(G.rd));
            r.runtime_s = seconds_since(t0);
            rep.cases.push_back(r);
            if (lat == Lattice::simply_connected) continue;  // the Lie algebra does not see the lattice
            rep.cases.push_back(flag(base + "/jacobi", "structure-constants-jacobi", env, G.L.jacobi_holds()));
            for (auto& rec : G.orbits) {
                t0 = std::chrono::steady_clock::now();
                auto chk = check_orbit(G.L, rec);
                auto cr = flag(base + "/orbit " + rec.label + "/invariants", "orbit-exact-invariants", env, chk.ok());
                cr.inputs["failures"] = chk.failures;
                cr.runtime_s = seconds_since(t0);
                rep.cases.push_back(cr);
                bool we = !rec.W_e.empty() && rec.W_e.front() == 0;
                for (int w : rec.W_e) we = we && rec.dclp.count(w);
                auto wr = flag(base + "/orbit " + rec.label + "/weyl-cosets", "springer-cosets-and-strata", env, we);
                wr.inputs["W_e"] = rec.W_e;
                rep.cases.push_back(wr);
            }
        }
    // projector properties at random regular points
    std::mt19937_64 g(c.seed);
    for (std::string type : {"A2", "G2"}) {
        const Group& G = cached_group(type, Lattice::adjoint);
        auto ctx = context_for(psi_c_spec(), 1.5);
        auto f = as_function(f_basis(G.rd.rank, 0, c.seed, 2).back());
        for (int k = 0; k < 3; ++k) {
            auto t0 = std::chrono::steady_clock::now();
            Point x = random_point(G.rd.rank, g);
            json env = {{"group", type}, {"point", {cjson(x[0]), cjson(x[1])}}};
            TestFunction once = [&](const Point& y) { return langlands_projector(G, ctx, f, y); };
            auto r = compare(type + "/langlands-idempotent/" + std::to_string(k), "langlands-projector-idempotent", env,
                             langlands_projector(G, ctx, once, x), once(x), 1e-10, true);
            r.runtime_s = seconds_since(t0);
            rep.cases.push_back(r);
            cplx base = projector_PB(G, ctx, f, +1, x);
            double worst = 0;
            for (size_t w = 0; w < G.W.size(); ++w) worst = std::max(worst, std::abs(projector_PB(G, ctx, f, +1, act(G.W, w, x)) - base));
            auto wr = compare(type + "/projector-w-invariant/" + std::to_string(k), "projector-weyl-invariant", env, base,
                              base + worst, 1e-10, true);
            rep.cases.push_back(wr);
        }
    }
    // shift invariance of the pairing
    for (auto& [type, lat] : std::vector<std::pair<std::string, Lattice>>{
             {"A1", Lattice::adjoint}, {"A1", Lattice::simply_connected}, {"A2", Lattice::adjoint}}) {
        const Group& G = cached_group(type, lat);
        for (auto& gspec : {psi_c_spec(), genus_one_spec()}) {
            auto t0 = std::chrono::steady_clock::now();
            double q = 1.5;
            auto ctx = context_for(gspec, q);
            auto [f1, f2] = f_pairs(G.rd.rank, 1, c.seed, 1)[0];
            HarnessConfig a = c, b = c;
            a.quad.shift = 1.5;
            b.quad.shift = 2.5;
            int N = G.rd.rank == 1 ? 512 : 256;
            auto va = eis_pairing(G, ctx, as_function(f1), as_function(f2), contour_for(G, a, q, N));
            auto vb = eis_pairing(G, ctx, as_function(f1), as_function(f2), contour_for(G, b, q, N));
            json env = {{"group", type}, {"lattice", lattice_name(lat)}, {"genus", genus_name(gspec)}, {"shifts", {1.5, 2.5}}, {"nodes", N}};
            auto r = compare(type + "/" + lattice_name(lat) + "/" + genus_name(gspec) + "/shift-invariance",
                             "pairing-contour-independent", env, va.value, vb.value, 1e-10, true);
            r.runtime_s = seconds_since(t0);
            rep.cases.push_back(r);
        }
    }
    return rep;
}

VerificationReport run_g2_regression(const HarnessConfig& c) {
    VerificationReport rep;
    rep.suite = "g2";
    double q = 1.5;
    rep.environment = {{"q", q}, {"genus", "psi_c"}, {"seed", c.seed}};
    auto ctx = context_for(psi_c_spec(), q);
    const Group& G = cached_group("G2", Lattice::adjoint);
    const auto& rec = G.orbit("G2(a1)");
    // f = 1 has no derivative term, (1,0) and (2,1) do
    std::vector<LaurentPolynomial> fs = {monomial({0, 0}), monomial({1, 0}), monomial({1, 1}) + monomial({2, 1}, cplx(0, 0.5))};
    auto rnd = f_basis(2, 0, c.seed, 2);
    fs.push_back(rnd[1]);
    fs.push_back(rnd[2]);
    for (size_t k = 0; k < fs.size(); ++k) {
        auto t0 = std::chrono::steady_clock::now();
        auto f2 = dual_star(fs[k]);
        auto cf = g2_subregular_closed_forms(ctx, fs[k], f2);
        auto oc = orbit_contribution(G, ctx, rec, as_function(fs[k]), as_function(f2));
        json in = {{"f", to_json(fs[k])}, {"closed_classes", {cjson(cf.identity), cjson(cf.transposition), cjson(cf.three_cycle)}}};
        auto r = compare("G2/subregular/f" + std::to_string(k), "subregular-closed-form", in, oc.value, cf.total(), 1e-9, true);
        r.runtime_s = seconds_since(t0);
        rep.cases.push_back(r);
    }
    for (std::string type : {"A1", "A2", "G2"}) {
        const Group& H = cached_group(type, Lattice::adjoint);
        auto [f1, f2] = f_pairs(H.rd.rank, 1, c.seed, 1)[0];
        auto t0 = std::chrono::steady_clock::now();
        auto oc = orbit_contribution(H, ctx, H.orbits.back(), as_function(f1), as_function(f2));
        auto r = compare(type + "/regular/closed-form", "regular-orbit-closed-form", {{"group", type}}, oc.value,
                         regular_closed_form(H, ctx, as_function(f1), as_function(f2)), 1e-10, false);
        r.runtime_s = seconds_since(t0);
        rep.cases.push_back(r);
        auto res = regular_residues(H, ctx);
        for (size_t i = 0; i < res.size(); ++i)
            rep.cases.push_back(compare(type + "/regular/residue" + std::to_string(i), "regular-density-unit-residue",
                                        {{"group", type}, {"simple_root", i}}, res[i], 1.0, 1e-10, false));
    }
    return rep;
}

VerificationReport run_cohomology_suite(const HarnessConfig& c) {
    VerificationReport rep;
    rep.suite = "cohomology";
    const double cc = 0.4;
    rep.environment = {{"genus", {{"kind", "s_plus_c"}, {"c", cc}}}, {"line", 1.5}};
    auto ac = make_additive_context(s_plus_c(cc));
    AdditiveFunction f = [](cplx s) { return (1.0 + s * s) * std::exp(s * s); };
    AdditiveFunction g = [](cplx s) { return std::exp(s * s); };
    std::vector<std::pair<std::string, AdditiveFunction>> fns = {{"(1+s^2)exp(s^2)", f}, {"exp(s^2)", g}};
    cplx main_lhs = 0;
    for (auto& [name, fn] : fns) {
        auto t0 = std::chrono::steady_clock::now();
        auto s = cohomological_identity_sides(ac, fn, 1.5, 0.01, c.quad.trunc_height);
        if (name == fns[0].first) main_lhs = s.lhs;
        json in = {{"f", name}, {"zero_orbit", cjson(s.zero_orbit)}, {"regular_orbit", cjson(s.regular_orbit)}};
        auto r = compare("A1/additive/" + name, "additive-pairing-equals-orbit-sum", in, s.lhs, s.rhs, 1e-8, true);
        r.runtime_s = seconds_since(t0);
        rep.cases.push_back(r);
    }
    {
        auto t0 = std::chrono::steady_clock::now();
        auto tab = limit_table(cc, {0.1, 0.05, 0.025});
        auto r = flag("A1/bridge/monotone", "multiplicative-to-additive-limit", tab, tab["monotone"].get<bool>());
        r.lhs = cplx(tab["rows"].back()["value"][0].get<double>(), tab["rows"].back()["value"][1].get<double>());
        r.rhs = main_lhs;
        r.abs_error = std::abs(r.lhs - r.rhs);
        r.rel_error = r.abs_error / std::abs(r.rhs);
        r.runtime_s = seconds_since(t0);
        rep.cases.push_back(r);
    }
    {
        auto t0 = std::chrono::steady_clock::now();
        auto sc = g2_additive_symbolic(cached_group("G2", Lattice::adjoint));
        json in = {{"emitted", sc.emitted}, {"template", sc.template_form}, {"sign", sc.sign}, {"pole_cancels", sc.pole_cancels},
                   {"coefficients", sc.coefficients}};
        auto r = flag("G2/additive/subregular-symbolic", "additive-point-formula-template", in, sc.matches);
        r.runtime_s = seconds_since(t0);
        rep.cases.push_back(r);
    }
    return rep;
}

std::vector<VerificationReport> run_suite(const HarnessConfig& c) {
    std::vector<VerificationReport> out;
    bool all = c.suite == "all";
    if (all || c.suite == "main") out.push_back(run_main_identity_suite(c));
    if (all || c.suite == "structural") out.push_back(run_structural_suite(c));
    if (all || c.suite == "g2") out.push_back(run_g2_regression(c));
    if (all || c.suite == "cohomology") out.push_back(run_cohomology_suite(c));
    if (out.empty()) throw ConfigError("config.suite: unknown suite '" + c.suite + "'");
    return out;
}

// ---- measure and limit tables

json measure_table(const Group& G, const EvalContext& ctx, int grid) {
    json out = json::array();
    for (auto& rec : G.orbits) {
        json o;
        o["orbit"] = rec.label;
        o["h"] = rec.h;
        o["t_phi_dim"] = rec.tphi_dim;
        json classes = json::array();
        for (auto& cls : rec.classes) {
            json jc;
            jc["class"] = cls.name;
            jc["weight"] = to_string(cls.weight);
            std::vector<std::string> th;
            for (auto& v : cls.theta) th.push_back(to_string(v));
            jc["theta"] = th;
            json base = json::array();
            for (auto v : evaluation_point(G, ctx.q, rec, cls, std::vector<cplx>(rec.tphi_dim, 1.0))) base.push_back(cjson(v));
            jc["support_base_point"] = base;
            json samples = json::array();
            int n = rec.tphi_dim ? grid : 1;
            long long total = 1;
            for (int k = 0; k < rec.tphi_dim; ++k) total *= n;
            for (long long m = 0; m < total; ++m) {
                std::vector<cplx> t(rec.tphi_dim);
                std::vector<double> ang(rec.tphi_dim);
                long long r = m;
                for (int k = rec.tphi_dim - 1; k >= 0; --k) {
                    ang[k] = (double(r % n) + 0.5) / n;
                    t[k] = std::polar(1.0, kTwoPi * ang[k]);
                    r /= n;
                }
                auto d = orbit_density(G, ctx, rec, cls, t);
                samples.push_back({{"t_turns", ang}, {"psi_e", cjson(d.psi_form)}, {"z_e", cjson(d.z_form)}, {"weyl", cjson(d.weyl)}});
            }
            jc["density"] = samples;
            classes.push_back(jc);
        }
        o["classes"] = classes;
        out.push_back(o);
    }
    return out;
}

json limit_table(double c, const std::vector<double>& deltas) {
    auto ac = make_additive_context(s_plus_c(c));
    AdditiveFunction f = [](cplx s) { return (1.0 + s * s) * std::exp(s * s); };
    auto sides = cohomological_identity_sides(ac, f);
    json rows = json::array();
    double last = 1e300;
    bool mono = true;
    for (double d : deltas) {
        cplx v = bridge_value(c, 1 + d, f);
        double err = std::abs(v - sides.lhs);
        mono = mono && err < last;
        last = err;
        rows.push_back({{"delta", d}, {"value", cjson(v)}, {"error", err}});
    }
    return {{"c", c}, {"f", "(1+s^2)exp(s^2)"}, {"additive", cjson(sides.lhs)}, {"rows", rows}, {"monotone", mono}};
}

}  // namespace eis
