// Knot Floer complexes over R = F2[U,V]/(UV): validity, reduction with
// explicit homotopy-equivalence data, chain maps and homotopies, the
// basepoint actions and the Sarkar map, tau, connected sum, dual,
// conjugation and decomposition into summands.
//
// All complexes are bigraded and finitely generated free over R; the
// differential drops bidegree by exactly (1,1).  Every map between
// complexes is stored as a bidegree-homogeneous matrix of R-elements,
// which lets each matrix slot carry at most one monomial kind and turns
// every linear problem here into plain F2 linear algebra.
#pragma once

#include "bfk/ring.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace bfk {

struct Generator {
    std::string name;
    Bigrading gr;
};

// Rectangular matrix of R-elements, row = target index, col = source index.
class RMat {
public:
    RMat() = default;
    RMat(int rows, int cols) : rows_(rows), cols_(cols), e_(size_t(rows) * cols) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    RElem& at(int r, int c) { return e_[size_t(r) * cols_ + c]; }
    const RElem& at(int r, int c) const { return e_[size_t(r) * cols_ + c]; }
    bool is_zero() const;
    bool operator==(const RMat& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_; }

    static RMat identity(int n);
    friend RMat operator*(const RMat& a, const RMat& b);
    friend RMat operator+(RMat a, const RMat& b);

private:
    int rows_ = 0, cols_ = 0;
    std::vector<RElem> e_;
};

class CfkComplex {
public:
    CfkComplex() = default;
    CfkComplex(std::vector<Generator> gens, RMat diff)
        : gens_(std::move(gens)), d_(std::move(diff)) {}

    int size() const { return (int)gens_.size(); }
    const std::vector<Generator>& gens() const { return gens_; }
    const Generator& gen(int i) const { return gens_[i]; }
    const RMat& diff() const { return d_; }
    RMat& diff() { return d_; }
    int index_of(const std::string& name) const;  // -1 when absent

    bool is_reduced() const;  // no unit terms in the differential

private:
    std::vector<Generator> gens_;
    RMat d_;
};

// A bidegree-homogeneous map between complexes; source/target are passed
// alongside wherever they matter.
struct ChainMap {
    Bigrading deg;  // (0,0) for ordinary chain maps
    RMat mat;
};

struct ValidityReport {
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

ValidityReport validate_cfk(const CfkComplex& C);

// Does the matrix respect bidegree-homogeneity as a map C -> D of degree d?
bool map_is_homogeneous(const CfkComplex& D, const CfkComplex& C, const ChainMap& f);
// d_D f = f d_C (exact equality).
bool is_chain_map(const CfkComplex& D, const CfkComplex& C, const ChainMap& f);

struct ReduceResult {
    CfkComplex reduced;
    ChainMap to_reduced;    // C -> reduced
    ChainMap from_reduced;  // reduced -> C
    ChainMap homotopy;      // H on C with id + from*to = dH + Hd
};

ReduceResult reduce(const CfkComplex& C);

// Finds h with f + g = d h + h d (h of bidegree f.deg + (1,1)), or nothing.
std::optional<ChainMap> solve_homotopy(const CfkComplex& D, const CfkComplex& C,
                                       const ChainMap& f, const ChainMap& g);
// Convenience: is f nullhomotopic?
std::optional<ChainMap> solve_nullhomotopy(const CfkComplex& D, const CfkComplex& C,
                                           const ChainMap& f);

CfkComplex tensor_connected_sum(const CfkComplex& C, const CfkComplex& D);
CfkComplex dual(const CfkComplex& C);
CfkComplex conjugate_cfk(const CfkComplex& C);  // swap U<->V and the bigrading

// Formal derivatives of the differential: Phi (d/dU, bidegree (1,-1)) and
// Psi (d/dV, bidegree (-1,1)); both are chain maps.
std::pair<ChainMap, ChainMap> phi_psi(const CfkComplex& C);
ChainMap sarkar_map(const CfkComplex& C);  // id + Phi Psi

// tau from the V=0 specialization: the U-tower generator's Alexander
// grading, negated.  Errors when the vertical homology has free rank != 1.
int compute_tau(const CfkComplex& C);

// Reduce, then split into connected components of the generator graph.
std::vector<CfkComplex> decompose_cfk(const CfkComplex& C);

// Searches for a bigraded R-linear isomorphism intertwining the
// differentials.  Deterministic (seeded internally).
std::optional<ChainMap> iso_cfk(const CfkComplex& C, const CfkComplex& D);

// Direct sum, with generator names disambiguated on collision.
CfkComplex direct_sum(const CfkComplex& C, const CfkComplex& D);

// --- builtin complexes ---
CfkComplex cfk_unknot();
CfkComplex cfk_trefoil_right();
CfkComplex cfk_trefoil_left();
CfkComplex cfk_figure_eight();
// The five-generator complex x + {a,b,c,d} with U^n/V^n box differentials and
// gradings gr(x)=(0,0), gr(a)=(0,0), gr(b)=(2n-1,-1), gr(c)=(-1,2n-1),
// gr(d)=(2n-2,2n-2).
CfkComplex cfk_cn(int n);
// The box summand of cfk_cn alone.
CfkComplex cfk_sn(int n);

// --- internals shared with the lot module ---

// Greedy change of basis making both the U-part and the V-part of the
// differential partial matchings (each generator at most one arrow in and
// out per kind).  Errors when the iteration fails to settle.
CfkComplex simplify_basis(const CfkComplex& C);

// Slot system for bidegree-homogeneous maps: used to linearize homotopy
// and isomorphism problems over F2.
struct MapSlots {
    struct Slot {
        int row, col;
        RMono mono;
    };
    std::vector<Slot> slots;
    RMat assemble(int rows, int cols, const std::vector<uint8_t>& x) const;
    std::vector<uint8_t> extract(const RMat& m) const;
};
MapSlots map_slots(const CfkComplex& D, const CfkComplex& C, Bigrading deg);

}  // namespace bfk
