#pragma once
// Verification suites, configuration and report emission behind the CLI.

#include <cstdint>
#include <string>
#include <vector>

#include "eis/spectral.hpp"

namespace eis {

inline constexpr const char* kReportSchema = "eis-report/1";

struct QuadratureConfig {
    int nodes = 0;                // 0 = suite default
    double shift = 1.5;           // contour through q^{shift * rho_check}; needs shift > 1
    std::vector<double> offsets;  // empty = default offsets
    double trunc_height = 0;      // additive line truncation, 0 = automatic
};

struct HarnessConfig {
    std::string group = "A1";
    std::vector<Lattice> lattices;       // empty: both for A1, adjoint otherwise
    std::vector<double> q;               // empty: per-group default
    std::vector<nlohmann::json> genera;  // empty: per-group default; kind "psi_c" means c = 0.8/q + 0.2
    QuadratureConfig quad;
    int f_pairs = 0;                     // 0: per-group default
    int box = 1;                         // monomials with |lambda_j| <= box
    std::uint64_t seed = 20240611;
    double tolerance = 0;                // 0: per-group default
    std::string suite = "main";
};

// every key is optional; unknown keys and bad types throw ConfigError naming the key path
HarnessConfig config_from_json(const nlohmann::json& j);
nlohmann::json to_json(const HarnessConfig& c);

struct CaseRecord {
    std::string id;      // unique within the report
    std::string anchor;  // what the case checks
    nlohmann::json inputs;
    cplx lhs = 0, rhs = 0;
    double abs_error = 0, rel_error = 0, tolerance = 0;
    bool relative = true;  // false: the test is abs_error <= tolerance (1 + |lhs|)
    bool pass = false;
    double runtime_s = 0;
};

struct VerificationReport {
    std::string suite;
    nlohmann::json environment;
    std::vector<CaseRecord> cases;

    bool passed() const;
    // runtimes are left out unless asked for, so the payload is reproducible
    nlohmann::json to_json(bool timing = false) const;
    std::string csv() const;
    std::string table() const;
};

// the test-function basis: box monomials followed by seeded random polynomials
std::vector<LaurentPolynomial> f_basis(int rank, int box, std::uint64_t seed, int n_random = 20);
std::vector<std::pair<LaurentPolynomial, LaurentPolynomial>> f_pairs(int rank, int box, std::uint64_t seed, int count);

EvalContext context_for(const nlohmann::json& genus, double q, const std::string& path = "genus");
ContourSpec contour_for(const Group& G, const HarnessConfig& c, double q, int nodes);

// smallest distance from an evaluation argument to a psi zero or Z pole over the nodes used
struct CollisionScan {
    double min_distance = 1e300;
    std::string where;
    bool ok(double thresh = 1e-6) const { return min_distance > thresh; }
};
CollisionScan collision_scan(const Group& G, const EvalContext& ctx, const ContourSpec& lhs, int orbit_nodes);

VerificationReport run_main_identity_suite(const HarnessConfig& c);
VerificationReport run_structural_suite(const HarnessConfig& c);
VerificationReport run_g2_regression(const HarnessConfig& c);
VerificationReport run_cohomology_suite(const HarnessConfig& c);
// "main", "structural", "g2", "cohomology" or "all"
std::vector<VerificationReport> run_suite(const HarnessConfig& c);

// per-orbit supports and densities on a t grid
nlohmann::json measure_table(const Group& G, const EvalContext& ctx, int grid);
// multiplicative values at q = 1 + delta against the additive side
nlohmann::json limit_table(double c, const std::vector<double>& deltas);

}  // namespace eis
