#pragma once

#include <optional>
#include <string>
#include <vector>

#include "stabfun/proj.hpp"

namespace sf {

// A triangle functor D(src) -> D(tgt) given by the images T_v of the
// indecomposable projectives and, for each arrow a : s -> t of src, a chain
// map T_t -> T_s realising the map P_t -> P_s that sends e_t to a.
// Relations of src must hold strictly on these chain maps.
struct FunctorData {
    std::string name;
    AlgPtr src;
    AlgPtr tgt;
    std::vector<ProjComplex> images;
    std::vector<ProjChainMap> arrow_maps;
    int width = 0;

    void validate() const;
};

FunctorData identity_functor(const AlgPtr& alg);
// Images P_v placed in degree k; its stable functor is the k-th syzygy.
FunctorData omega_functor(const AlgPtr& alg, int k);
// Post-composition with the shift [-n]: every image moves up by n degrees.
FunctorData shift_down(const FunctorData& f, int n);

// Chain map T_v -> T_u for an element x in the paths from u to v.
ProjChainMap element_map(const FunctorData& f, const Vec& x, int u, int v);

ProjComplex apply(const FunctorData& f, const ProjComplex& c);
// Degree-zero chain map g : x -> y, sent to F(x) -> F(y).
ProjChainMap apply(const FunctorData& f, const ProjChainMap& g, const ProjComplex& x, const ProjComplex& y);

struct ModuleImage {
    Resolved res;
    ProjComplex fx;
};
// F applied to the minimal resolution of m truncated at window_lo; agrees
// with F(m) in degrees >= window_lo + width + 1.
ModuleImage apply_to_module(const FunctorData& f, const Rep& m, int window_lo);

struct MapImage {
    ModuleImage x, y;
    ProjChainMap lift;   // res x -> res y over phi
    ProjChainMap image;  // F(res x) -> F(res y)
};
MapImage apply_to_map(const FunctorData& f, const RepHom& phi, const Rep& x, const Rep& y, int window_lo);

// Chain map F(c) -> G(c) from strictly natural chain maps eta[v] : F(P_v) -> G(P_v).
ProjChainMap apply_transformation(const FunctorData& f, const FunctorData& g, const std::vector<ProjChainMap>& eta,
                                  const ProjComplex& c);

// t plus a contractible P_v -> P_v (identity) in degrees 0 and 1.
struct PaddedComplex {
    ProjComplex c;
    ProjChainMap incl;  // t -> c
    ProjChainMap proj;  // c -> t
};
PaddedComplex pad_complex(const ProjComplex& t, int v);

// f with a contractible P_v -> P_v (identity, degrees 0 and 1) added to
// every image, and the inclusion/projection transformations.
struct PaddedFunctor {
    FunctorData g;
    std::vector<ProjChainMap> incl;  // f -> g
    std::vector<ProjChainMap> proj;  // g -> f
};
PaddedFunctor padded_functor(const FunctorData& f, int v);

// Images of f pushed through g.
FunctorData compose(const FunctorData& f, const FunctorData& g);

struct NonNegReport {
    bool ok = true;
    bool degrees = true;
    bool relations = true;
    bool simples = true;
    std::string reason;
};
// Checks images up to homotopy in degrees [0, width], strict relations, and H^{<0} of F
// on every simple (which propagates to all finite-length modules through
// the long exact sequence over a composition series).
NonNegReport is_non_negative(const FunctorData& f);
// Terms end by degree width and the minimal model starts in degree >= 0.
bool image_in_range(const ProjComplex& t, int width);

// Dual-number version k[eps] (x) f, acting diagonally on the eps loops.
FunctorData dual_numbers_functor(const FunctorData& f, const AlgPtr& src_eps, const AlgPtr& tgt_eps);
// Element of `from` rewritten in `to` by matching arrow names.
Vec transport(const AlgPtr& from, const AlgPtr& to, const Vec& x);

// Functorial projective resolution over a path algebra without relations:
// 0 -> sum_a P_{t(a)} (x) M(s(a)) -> sum_v P_v (x) M(v) -> M -> 0, applied
// termwise and totalised.
struct StandardResolution {
    ProjComplex p;
    ChainMap aug;  // p -> c, a quasi-isomorphism
};
StandardResolution standard_resolution(const Complex& c);
ProjChainMap standard_resolution_map(const ChainMap& f, const Complex& x, const Complex& y);

// Data for X -> Hom(T, X) where T = sum of the images of f, with each
// Hom complex resolved by the standard resolution. Requires f.src to be a
// path algebra without relations; images land in degrees [-width-1, 0].
FunctorData hom_functor(const FunctorData& f);
// The Hom complex Hom(T, P_v) as a complex of f.src-modules.
Complex hom_complex(const FunctorData& f, int v);

// Tilting data

// Basis of Hom_K(p, q[n]) as chain maps p -> proj_shift(q, n).
std::vector<ProjChainMap> hom_K_basis(const ProjComplex& p, const ProjComplex& q, int n);

bool is_null_homotopic(const ProjChainMap& g, const ProjComplex& p, const ProjComplex& q);

enum class Generation { Yes, Unknown };

struct TiltingReport {
    bool self_orthogonal = true;
    Generation generates = Generation::Unknown;
    int rounds = 0;
    std::vector<std::string> failures;
};
TiltingReport check_tilting(const std::vector<ProjComplex>& summands, int search_depth = 2);

struct EndoPresentation {
    int dim = 0;
    std::vector<std::vector<int>> arrows;  // arrows[i][j]: arrows i -> j
    // arrow (i -> j) realised by a map T_j -> T_i
    std::vector<std::vector<std::vector<ProjChainMap>>> arrow_maps;
    int relations = 0;
    bool basic = true;
    std::optional<AlgPtr> algebra;
};
EndoPresentation endomorphism_presentation(const std::vector<ProjComplex>& summands, elem p);

}  // namespace sf
