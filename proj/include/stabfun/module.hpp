#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "stabfun/algebra.hpp"
#include "stabfun/matrix.hpp"

namespace sf {

// Finite-dimensional representation: one matrix per arrow, of shape
// dim(tgt) x dim(src), acting on column vectors.
struct Rep {
    AlgPtr alg;
    std::vector<int> dims;
    std::vector<Matrix> mats;

    int total_dim() const;
    bool is_zero() const { return total_dim() == 0; }
    elem prime() const { return alg->prime(); }
    // Throws when shapes are wrong or a relation does not vanish.
    void validate() const;
};

// Morphism given by one matrix per vertex.
struct RepHom {
    std::vector<Matrix> at;
};

Rep zero_rep(const AlgPtr& alg);
Rep simple(const AlgPtr& alg, int v);
Rep projective(const AlgPtr& alg, int v);
Rep projective_sum(const AlgPtr& alg, const std::vector<int>& verts);

// Matrices of every basis path acting on m, indexed by basis index.
std::vector<Matrix> path_mats(const Rep& m);
// Action of an algebra element restricted to paths from src to tgt.
Matrix act(const Rep& m, const std::vector<Matrix>& pm, const Vec& x, int src, int tgt);

RepHom zero_hom(const Rep& m, const Rep& n);
RepHom identity_hom(const Rep& m);
RepHom compose(const RepHom& g, const RepHom& f);
RepHom add(const RepHom& f, const RepHom& g);
RepHom scale(const RepHom& f, elem c);
RepHom neg(const RepHom& f);
bool is_zero(const RepHom& f);
bool equal(const RepHom& f, const RepHom& g);
bool is_hom(const Rep& m, const Rep& n, const RepHom& f);
bool is_iso(const RepHom& f);
std::optional<RepHom> inverse(const RepHom& f);

struct SumData {
    Rep sum;
    std::vector<RepHom> incl;
    std::vector<RepHom> proj;
};
SumData direct_sum(const std::vector<Rep>& ms);
Rep direct_sum_rep(const std::vector<Rep>& ms);
// Block map between direct sums: entry (i, j) goes from src summand j to tgt summand i.
RepHom block_hom(const std::vector<Rep>& tgt, const std::vector<Rep>& src, const std::vector<std::vector<RepHom>>& entries);

// Submodule given by arrow-stable subspaces (columns), with inclusion.
struct Sub {
    Rep rep;
    RepHom incl;
};
struct Quot {
    Rep rep;
    RepHom proj;
};
Sub submodule(const Rep& m, const std::vector<Matrix>& spaces);
Quot quotient(const Rep& m, const std::vector<Matrix>& spaces);
// Smallest submodule containing the given vectors at each vertex.
Sub generated_submodule(const Rep& m, const std::vector<Matrix>& gens);

Sub kernel(const Rep& m, const Rep& n, const RepHom& f);
Sub image(const Rep& m, const Rep& n, const RepHom& f);
Quot cokernel(const Rep& m, const Rep& n, const RepHom& f);
// Corestriction of f to its image: the epimorphism m -> image(f).
RepHom onto_image(const Rep& m, const Sub& img, const RepHom& f);
// Factor f through an injective map incl (f lands in the image of incl).
RepHom factor_through_mono(const RepHom& incl, const RepHom& f);
// Factor f through an epimorphism q (f kills ker q).
RepHom factor_through_epi(const RepHom& q, const RepHom& f);

std::vector<Matrix> radical_spaces(const Rep& m);
Sub radical(const Rep& m);
Quot top(const Rep& m);
std::vector<int> top_dims(const Rep& m);

// Maps between direct sums of indecomposable projectives. Entry (i, j)
// is an element of the paths from tgt[i] to src[j]; it sends the
// generator of P_src[j] to sum_i entry(i, j) in P_tgt[i].
struct ProjMap {
    std::vector<int> src;
    std::vector<int> tgt;
    std::vector<std::vector<Vec>> e;
};

ProjMap zero_projmap(const AlgPtr& alg, const std::vector<int>& src, const std::vector<int>& tgt);
ProjMap identity_projmap(const AlgPtr& alg, const std::vector<int>& verts);
ProjMap compose(const AlgPtr& alg, const ProjMap& g, const ProjMap& f);
ProjMap add(const AlgPtr& alg, const ProjMap& f, const ProjMap& g);
ProjMap scale(const AlgPtr& alg, const ProjMap& f, elem c);
bool is_zero(const AlgPtr& alg, const ProjMap& f);
RepHom to_hom(const AlgPtr& alg, const ProjMap& f);
// The ProjMap whose generator images are given as columns in
// projective_sum(tgt) coordinates at the source vertices.
ProjMap projmap_from_columns(const AlgPtr& alg, const std::vector<int>& src, const std::vector<int>& tgt,
                             const std::vector<std::vector<elem>>& cols);
// Offset of summand j inside projective_sum(verts) at vertex u.
int summand_offset(const AlgPtr& alg, const std::vector<int>& verts, int j, int u);
// Dual map Hom(-, A) as a ProjMap over the opposite algebra.
ProjMap dual_projmap(const AlgPtr& alg, const ProjMap& f);

struct Cover {
    std::vector<int> verts;
    // generator j lives in m(verts[j])
    std::vector<std::vector<elem>> gens;
    Rep proj;
    RepHom epi;
};
Cover projective_cover(const Rep& m);

// Map out of a projective sum determined by generator images.
RepHom hom_from_generators(const Rep& n, const std::vector<int>& verts, const std::vector<std::vector<elem>>& gens);

struct Presentation {
    Cover cover;
    ProjMap rel;  // P1 -> P0
};
Presentation presentation(const Rep& m);

// Minimal projective resolution as generator data: d[i] : P_{i+1} -> P_i.
struct Resolution {
    AlgPtr alg;
    std::vector<std::vector<int>> verts;
    std::vector<ProjMap> d;
    Cover cover;
    bool finite = false;  // true when the last term is followed by zero
};
Resolution resolve_module(const Rep& m, int length);

// Hom(P, n) for a projective sum, in generator coordinates, and the
// precomposition matrix for a ProjMap f : P' -> P.
int hom_proj_dim(const Rep& n, const std::vector<int>& verts);
Matrix precompose_matrix(const AlgPtr& alg, const Rep& n, const std::vector<Matrix>& pm, const ProjMap& f);

std::vector<RepHom> hom_space(const Rep& m, const Rep& n);
std::vector<RepHom> hom_space_direct(const Rep& m, const Rep& n);
int hom_dim(const Rep& m, const Rep& n);

int ext_dim(const Rep& m, const Rep& n, int i);
int ext_dim_with_length(const Rep& m, const Rep& n, int i, int length);

struct StripResult {
    Rep core;
    RepHom incl;  // core -> m
    RepHom proj;  // m -> core
    std::vector<int> removed;
};
StripResult strip_projectives(const Rep& m);
bool is_projective(const Rep& m);
Rep syzygy(const Rep& m, int k);

Rep dual(const Rep& m);
RepHom dual(const RepHom& f);
Rep transpose(const Rep& m);

struct Decomposition {
    std::vector<Rep> parts;
    std::uint64_t seed = 0;
};
// Fitting splitting; throws when a part cannot be certified indecomposable.
Decomposition decompose(const Rep& m, std::uint64_t seed = 1);
bool has_local_endomorphisms(const Rep& m);

std::optional<RepHom> find_iso(const Rep& m, const Rep& n, std::uint64_t seed = 7);
bool is_isomorphic(const Rep& m, const Rep& n, std::uint64_t seed = 7);

std::string describe(const Rep& m);
std::string dim_vector(const Rep& m);

}  // namespace sf
