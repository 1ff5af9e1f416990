#pragma once

#include <map>
#include <optional>
#include <vector>

#include "stabfun/complex.hpp"

namespace sf {

// Bounded complex whose terms are direct sums of indecomposable
// projectives, with differentials given by algebra elements.
struct ProjComplex {
    AlgPtr alg;
    int lo = 0;
    std::vector<std::vector<int>> verts;
    std::vector<ProjMap> diffs;  // diffs[k]: degree lo + k -> lo + k + 1

    int hi() const { return lo + int(verts.size()) - 1; }
    bool empty() const { return verts.empty(); }
    std::vector<int> term(int i) const;
    ProjMap diff(int i) const;
    int rank() const;
    void validate() const;
};

struct ProjChainMap {
    std::map<int, ProjMap> maps;
};

ProjComplex proj_stalk(const AlgPtr& alg, const std::vector<int>& verts, int degree);
ProjComplex proj_shift(const ProjComplex& c, int n);
ProjComplex proj_trim(const ProjComplex& c);
Complex materialize(const ProjComplex& c);
ChainMap materialize(const ProjChainMap& f, const ProjComplex& x, const ProjComplex& y);
ProjMap pmap_at(const ProjChainMap& f, const ProjComplex& x, const ProjComplex& y, int i);
ProjChainMap proj_identity(const ProjComplex& c);
ProjChainMap proj_compose(const ProjChainMap& g, const ProjChainMap& f, const ProjComplex& x,
                          const ProjComplex& y, const ProjComplex& z);
ProjChainMap proj_add(const ProjChainMap& f, const ProjChainMap& g, const ProjComplex& x, const ProjComplex& y);
ProjChainMap proj_scale(const ProjChainMap& f, elem c, const ProjComplex& x, const ProjComplex& y);
bool is_proj_chain_map(const ProjChainMap& f, const ProjComplex& x, const ProjComplex& y);
ProjComplex proj_direct_sum(const ProjComplex& x, const ProjComplex& y);

struct ProjCone {
    ProjComplex c;
    ProjChainMap from_target;
    ProjChainMap to_source;
};
ProjCone proj_cone(const ProjChainMap& f, const ProjComplex& x, const ProjComplex& y);

// Recognise a complex with projective terms (e.g. read from a file) as a ProjComplex.
std::optional<ProjComplex> as_proj_complex(const Complex& c);

struct Resolved {
    ProjComplex p;
    ChainMap rho;  // p -> c
};
// Termwise minimal projective complex with a map to c whose cone is exact
// in every degree >= window_lo.
Resolved projective_resolution(const Complex& c, int window_lo);
Resolved resolve_module_complex(const Rep& m, int window_lo);

struct Minimized {
    ProjComplex p;
    ProjChainMap incl;  // minimal -> original, a homotopy equivalence
    ProjChainMap proj;  // original -> minimal, inverse up to homotopy
};
// Cancels entries with invertible leading coefficient between equal vertices.
Minimized minimize(const ProjComplex& c);
bool is_minimal(const ProjComplex& c);
// Inverse of an element of e_v A e_v with nonzero e_v coefficient.
Vec local_inverse(const AlgPtr& alg, const Vec& a, int v);

struct HomKProj {
    int dim = 0;
    // cocycle representatives in generator coordinates, degree -> columns
    Matrix cycles;
    Matrix boundaries;
    std::vector<std::pair<int, int>> layout;  // (degree, offset) of each block of C^n
    int cdim = 0;
};
// Hom_K(p, y[n]) in generator coordinates.
HomKProj hom_K_proj(const ProjComplex& p, const Complex& y, int n);
int hom_K(const ProjComplex& p, const ProjComplex& q, int n);
int hom_D(const Complex& x, const Complex& y, int n);
int hom_D_window(const Complex& x, const Complex& y, int n, int window_lo);
int hom_D_cutoff(const Complex& y, int n);

struct Comparison {
    int hom_k = 0;
    int hom_d = 0;
    int rank = 0;
    bool hypothesis = true;
};
Comparison localization_compare(const Complex& x, const Complex& y, int n);
bool perpendicularity_holds(const Complex& x, const Complex& y);

// Degree -1 family h with u = d h + h d for a chain map u from a projective
// complex into a complex that is exact on the degrees involved.
std::map<int, RepHom> null_homotopy(const ProjComplex& p, const Complex& e, const ChainMap& u);
// A chain map g : p -> q with rho g homotopic to f, given a resolution rho : q -> y.
ProjChainMap lift_through(const ProjComplex& p, const ChainMap& f, const Complex& y, const Resolved& q);
// Row of generator j of projective_sum(verts) at its own vertex.
int generator_position(const AlgPtr& alg, const std::vector<int>& verts, int j);
// Chain map from generator images: component degree i is given as a RepHom.
ProjMap projmap_from_hom(const AlgPtr& alg, const std::vector<int>& src, const std::vector<int>& tgt, const RepHom& f);

}  // namespace sf
