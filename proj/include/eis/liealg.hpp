#pragma once
// Chevalley-basis model of g over Q and the per-orbit data extracted from it.
//
// Basis order: h_1..h_r (simple coroots), then e_beta for every root in
// RootDatum order. Vectors are RatVec of length dim.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "eis/rootsys.hpp"

namespace eis {

struct LieAlgebra {
    RootDatum rd;
    int dim = 0;
    std::vector<RatMat> ad_basis;  // ad of each basis vector
    std::vector<int> signs;        // chosen signs on the positive extraspecial-ish pairs

    int e_index(int root) const { return rd.rank + root; }
    RatVec zero() const { return RatVec(dim, Rat(0)); }
    RatVec basis(int k) const;
    RatVec root_vector(int root, Rat c = 1) const;
    RatMat ad(const RatVec& x) const;
    RatVec bracket(const RatVec& x, const RatVec& y) const;
    // N_{a,b} with [e_a, e_b] = N e_{a+b}; 0 if a+b is not a root
    long long structure_constant(int a, int b) const;
    bool jacobi_holds() const;
};

LieAlgebra build_lie_algebra(const RootDatum& rd);

struct Sl2Triple {
    RatVec e, h, f;
    std::string label;
    IntVec h_dominant;          // alpha_i(h) after conjugating h into the dominant chamber
    std::vector<int> conj_word;  // simple reflections used for that, applied left to right
};

bool is_nilpotent(const LieAlgebra& L, const RatVec& x);
bool triple_holds(const LieAlgebra& L, const Sl2Triple& t);
Sl2Triple complete_sl2(const LieAlgebra& L, const RatVec& e);

// One D-isotypic piece of g_i^e, D = {t in T : t^beta = 1, beta in S}.
struct WeightEntry {
    int i = 0;
    int mult = 0;
    IntVec gamma;        // representative weight, lattice coordinates
    IntVec finite_part;  // character on the finite part of D
    IntVec tphi_weight;  // restriction to T_phi
};

// u = exp(2 pi i angle) * t^tphi_weight on q^{h/2} c T_phi
struct ClassEntry {
    int i = 0;
    int mult = 0;
    Rat angle;
    IntVec tphi_weight;
};

struct ComponentClass {
    std::string name;
    Rat weight;   // |class| / |group|
    RatVec theta;  // torus representative exp(2 pi i theta), lattice coordinates
    std::vector<ClassEntry> entries;
};

struct SliceWeight {
    int h_weight = 0;  // eigenvalue of ad h on g^f (<= 0)
    int mult = 0;
    IntVec finite_part;
    IntVec tphi_weight;
};

struct OrbitRecord {
    std::string label;
    Sl2Triple triple;
    std::vector<int> support;  // root indices of the representative e
    IntVec h;                  // alpha_i(h)
    int dim_g = 0, orbit_dim = 0, c_e_dim = 0, c_phi_dim = 0, tphi_dim = 0, c_phi_rank = 0;
    std::map<int, int> ge_dims;  // i -> dim g_i^e
    std::map<int, int> g_dims;   // j -> dim g_j
    IntVec finite_moduli;        // invariant factors of the finite part of D
    std::vector<IntVec> tphi_cochars;  // lambda_j(mu_k) for a basis mu_k of cochar(T_phi)
    std::vector<WeightEntry> weights;
    std::vector<IntVec> cphi_roots;  // T_phi-weights of the roots of c_phi
    int weyl_phi_order = 1;
    std::vector<ComponentClass> classes;
    bool component_external = false;
    std::string component_note;
    std::vector<SliceWeight> slice;
    std::vector<int> coset_reps;  // minimal representatives of W^h \ W
    std::vector<int> W_e;         // those meeting the Springer fibre
    std::map<int, int> dclp;      // w -> dim of the stratum, for w in W_e
};

OrbitRecord orbit_record(const LieAlgebra& L, const Sl2Triple& t, const std::string& label = "");

std::vector<int> w_of_e(const LieAlgebra& L, const OrbitRecord& rec, const std::vector<WeylElement>& W);
std::optional<int> dclp_dimension(const LieAlgebra& L, const OrbitRecord& rec, const std::vector<WeylElement>& W,
                                  int w);
// elements u w (u in W^h) of the coset of the representative w
std::vector<int> coset_elements(const OrbitRecord& rec, const std::vector<WeylElement>& W, int w);

struct CatalogOptions {
    // order of the component group put on the B2/C2 subregular orbit (external data)
    int b2_subregular_order = 2;
};

std::vector<OrbitRecord> orbit_catalog(const LieAlgebra& L, const CatalogOptions& opt = {});

// exact structural checks; each returns an empty string on success, else a description
struct OrbitChecks {
    std::vector<std::string> failures;
    bool ok() const { return failures.empty(); }
};
OrbitChecks check_orbit(const LieAlgebra& L, const OrbitRecord& rec);

// exact test that a sum of roots of unity sum_k exp(2 pi i a_k) * c_k vanishes
bool cyclotomic_zero(const std::vector<std::pair<Rat, long long>>& terms);

nlohmann::json to_json(const OrbitRecord& rec);

}  // namespace eis
