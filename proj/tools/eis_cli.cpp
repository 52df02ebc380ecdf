// eis: root data, orbit catalog, densities, identity suites and the q -> 1 table.
// Exit codes: 0 pass, 1 failure, 2 configuration or usage error.

#include <cstdio>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "eis/harness.hpp"

using namespace eis;
using nlohmann::json;

namespace {

struct Args {
    std::string config_path;
    std::string group, lattice, suite;
    std::vector<double> q;
    std::string genus;  // inline json
    int nodes = 0;
    double shift = 0;
    std::vector<double> offset;
    double trunc_height = -1;
    bool as_json = false, timing = false;
    std::string report, csv;
    int grid = 8;
    double c = 0.4;
    std::vector<double> deltas = {0.1, 0.05, 0.025};
};

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("config: " + std::string(e.what()));
    }
}

// file first, then flags on top
HarnessConfig build_config(const Args& a) {
    json j = a.config_path.empty() ? json::object() : read_json_file(a.config_path);
    if (!j.is_object()) throw ConfigError("config: expected an object");
    if (!a.group.empty()) j["group"] = a.group;
    if (!a.lattice.empty()) j["lattice"] = a.lattice;
    if (!a.suite.empty()) j["suite"] = a.suite;
    if (!a.q.empty()) j["q"] = a.q;
    if (!a.genus.empty()) {
        try {
            j["genus"] = json::parse(a.genus);
        } catch (const json::parse_error& e) {
            throw ConfigError("--genus: " + std::string(e.what()));
        }
    }
    if (a.nodes) j["quadrature"]["nodes"] = a.nodes;
    if (a.shift) j["quadrature"]["shift"] = a.shift;
    if (!a.offset.empty()) j["quadrature"]["offsets"] = a.offset;
    if (a.trunc_height >= 0) j["quadrature"]["trunc_height"] = a.trunc_height;
    return config_from_json(j);
}

Lattice first_lattice(const HarnessConfig& c) { return c.lattices.empty() ? Lattice::adjoint : c.lattices.front(); }

void write_file(const std::string& path, const std::string& body) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write '" + path + "'");
    out << body;
}

int cmd_roots(const Args& a) {
    auto c = build_config(a);
    auto rd = build_root_system(c.group, first_lattice(c));
    if (a.as_json) {
        std::cout << to_json(rd).dump(2) << "\n";
        return 0;
    }
    std::cout << rd.type << " (" << lattice_name(rd.lattice) << "), rank " << rd.rank << ", " << rd.npos << " positive roots\n";
    std::cout << "cartan matrix:\n";
    for (auto& row : rd.cartan) {
        std::cout << " ";
        for (auto v : row) std::cout << " " << v;
        std::cout << "\n";
    }
    std::cout << "positive roots (simple coordinates, height):\n";
    for (int k = 0; k < rd.npos; ++k) {
        std::cout << "  " << rd.labels[k] << "  (";
        for (size_t i = 0; i < rd.roots[k].size(); ++i) std::cout << (i ? "," : "") << rd.roots[k][i];
        std::cout << ")  " << rd.heights[k] << "\n";
    }
    std::cout << "heights:";
    for (int k = 0; k < rd.npos; ++k) std::cout << " " << rd.heights[k];
    std::cout << "\nexponents:";
    for (auto m : rd.exponents) std::cout << " " << m;
    std::cout << "\n";
    return 0;
}

int cmd_orbits(const Args& a) {
    auto c = build_config(a);
    auto rd = build_root_system(c.group, first_lattice(c));
    auto L = build_lie_algebra(rd);
    auto cat = orbit_catalog(L);
    if (a.as_json) {
        json arr = json::array();
        for (auto& rec : cat) arr.push_back(to_json(rec));
        std::cout << arr.dump(2) << "\n";
        return 0;
    }
    std::printf("%-10s %-10s %6s %6s %6s %8s\n", "orbit", "h", "dim O", "dim Ce", "T_phi", "classes");
    for (auto& rec : cat) {
        std::string h;
        for (auto v : rec.h) h += (h.empty() ? "" : ",") + std::to_string(v);
        std::printf("%-10s %-10s %6d %6d %6d %8zu\n", rec.label.c_str(), h.c_str(), rec.orbit_dim, rec.c_e_dim, rec.tphi_dim,
                    rec.classes.size());
    }
    return 0;
}

int cmd_measure(const Args& a) {
    auto c = build_config(a);
    double q = c.q.empty() ? 1.5 : c.q.front();
    json g = c.genera.empty() ? json{{"kind", "psi_c"}} : c.genera.front();
    const Group G = make_group(c.group, first_lattice(c));
    auto ctx = context_for(g, q);
    auto tab = measure_table(G, ctx, a.grid);
    json out = {{"group", c.group}, {"lattice", lattice_name(first_lattice(c))}, {"q", q}, {"genus", describe(ctx)}, {"orbits", tab}};
    if (!a.csv.empty()) {
        std::string body = "orbit,class,t_turns,psi_e_re,psi_e_im,z_e_re,z_e_im\n";
        for (auto& o : tab)
            for (auto& cl : o["classes"])
                for (auto& s : cl["density"]) {
                    std::string t;
                    for (auto& v : s["t_turns"]) t += (t.empty() ? "" : " ") + std::to_string(v.get<double>());
                    char line[256];
                    std::snprintf(line, sizeof line, ",%.17g,%.17g,%.17g,%.17g\n", s["psi_e"][0].get<double>(),
                                  s["psi_e"][1].get<double>(), s["z_e"][0].get<double>(), s["z_e"][1].get<double>());
                    body += o["orbit"].get<std::string>() + "," + cl["class"].get<std::string>() + "," + t + line;
                }
        write_file(a.csv, body);
    }
    if (a.as_json || a.csv.empty()) std::cout << out.dump(2) << "\n";
    return 0;
}

int cmd_verify(const Args& a) {
    auto c = build_config(a);
    auto reports = run_suite(c);
    bool ok = true;
    json all = json::array();
    std::string csv;
    for (auto& r : reports) {
        ok = ok && r.passed();
        all.push_back(r.to_json(a.timing));
        std::string body = r.csv();
        csv += csv.empty() ? body : body.substr(body.find('\n') + 1);
        if (!a.as_json) std::cout << r.table();
    }
    json doc = {{"schema", kReportSchema}, {"reports", all}, {"pass", ok}};
    if (a.as_json) std::cout << doc.dump(2) << "\n";
    if (!a.report.empty()) write_file(a.report, doc.dump(2) + "\n");
    if (!a.csv.empty()) write_file(a.csv, csv);
    if (!a.as_json) std::cout << (ok ? "PASS" : "FAIL") << "\n";
    return ok ? 0 : 1;
}

int cmd_limit(const Args& a) {
    auto tab = limit_table(a.c, a.deltas);
    if (a.as_json) {
        std::cout << tab.dump(2) << "\n";
    } else {
        std::printf("additive value %.12g\n", tab["additive"][0].get<double>());
        for (auto& r : tab["rows"])
            std::printf("  delta %-6g value %.12g  error %.4e\n", r["delta"].get<double>(), r["value"][0].get<double>(),
                        r["error"].get<double>());
        std::printf("monotone: %s\n", tab["monotone"].get<bool>() ? "yes" : "no");
    }
    return tab["monotone"].get<bool>() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Eisenstein pairing and nilpotent-orbit spectral sums for split groups of rank <= 2"};
    app.require_subcommand(1);
    Args a;
    auto common = [&](CLI::App* s) {
        s->add_option("--config", a.config_path, "JSON config file; flags override it");
        s->add_option("--group", a.group, "A1, A2, B2, C2 or G2");
        s->add_option("--lattice", a.lattice, "adjoint or simply_connected");
        s->add_flag("--json", a.as_json, "machine-readable output");
    };
    auto quad = [&](CLI::App* s) {
        s->add_option("--q", a.q, "residue field size(s)");
        s->add_option("--genus", a.genus, "genus spec as inline JSON, e.g. {\"kind\":\"psi_c\"}");
        s->add_option("--nodes", a.nodes, "quadrature nodes per dimension (even)");
        s->add_option("--shift", a.shift, "contour through q^{shift rho_check}, shift > 1");
        s->add_option("--offset", a.offset, "node phase offsets, fractions of a turn, one per dimension");
        s->add_option("--trunc-height", a.trunc_height, "additive line truncation (0 = automatic)");
    };
    auto* roots = app.add_subcommand("roots", "root system, Cartan matrix, heights and exponents");
    common(roots);
    auto* orbits = app.add_subcommand("orbits", "nilpotent orbit catalog");
    common(orbits);
    auto* measure = app.add_subcommand("measure", "spectral supports and densities on a grid");
    common(measure);
    quad(measure);
    measure->add_option("--grid", a.grid, "samples per T_phi dimension")->check(CLI::PositiveNumber);
    measure->add_option("--csv", a.csv, "write (orbit, class, t, density) rows here");
    auto* verify = app.add_subcommand("verify", "run identity suites");
    common(verify);
    quad(verify);
    verify->add_option("--suite", a.suite, "main, structural, g2, cohomology or all");
    verify->add_option("--report", a.report, "write the JSON report here");
    verify->add_option("--csv", a.csv, "write the case table here");
    verify->add_flag("--timing", a.timing, "include runtimes in the JSON report");
    auto* limit = app.add_subcommand("limit", "multiplicative values at q = 1 + delta against the additive side");
    limit->add_option("--c", a.c, "genus parameter: psi(s) = s + c");
    limit->add_option("--delta", a.deltas, "values of delta");
    limit->add_flag("--json", a.as_json, "machine-readable output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }
    try {
        if (*roots) return cmd_roots(a);
        if (*orbits) return cmd_orbits(a);
        if (*measure) return cmd_measure(a);
        if (*verify) return cmd_verify(a);
        if (*limit) return cmd_limit(a);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const UnsupportedType& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
