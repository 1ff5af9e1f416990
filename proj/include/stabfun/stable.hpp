#pragma once

#include <string>
#include <vector>

#include "stabfun/functor.hpp"

namespace sf {

// Hom(x, y) modulo the maps factoring through the projective cover of y.
struct StableHomSpace {
    Rep x, y;
    std::vector<RepHom> basis;
    Matrix factoring;  // columns span the factoring subspace, flattened coordinates
    int hom_dim = 0;
    int dim = 0;

    bool is_zero(const RepHom& f) const;
    bool equal(const RepHom& f, const RepHom& g) const;
};
StableHomSpace stable_hom(const Rep& x, const Rep& y);
bool stably_zero(const RepHom& f, const Rep& x, const Rep& y);
bool stable_iso(const Rep& x, const Rep& y);

enum class Strategy { Minimal, Raw, Padded };
std::string strategy_name(Strategy s);

// U -> C -> M[0] from the brutal truncation of the good truncation D of C.
struct TruncationTriangle {
    ProjComplex c;  // projective model of F(x)
    Complex d;      // good truncation at degree zero, d^0 = M
    RepHom q;       // c^0 -> M
    ProjComplex u;  // c in degrees >= 1
};

struct StableImage {
    Rep m;  // raw degree-zero term
    StripResult strip;
    TruncationTriangle tri;
    ModuleImage image;
    ProjChainMap from_raw;  // image.fx -> tri.c
    ProjChainMap to_raw;    // tri.c -> image.fx
    int window = 0;

    const Rep& core() const { return strip.core; }
};
int stable_window(const FunctorData& f);
// Throws std::invalid_argument when f has an image outside degrees [0, width].
StableImage stable_image(const FunctorData& f, const Rep& x, Strategy s = Strategy::Minimal);

struct StableMap {
    StableImage x, y;
    ProjChainMap chain;  // tri.c -> tri.c over the lifted map
    RepHom b;            // M_x -> M_y
    RepHom core;         // core_x -> core_y
};
StableMap stable_image_map(const FunctorData& f, const RepHom& phi, const Rep& x, const Rep& y,
                           Strategy s = Strategy::Minimal);
// Map on M induced by a chain map between the projective models.
RepHom induced_on_m(const StableImage& a, const StableImage& b, const ProjChainMap& g);
// Comparison M_a -> M_b for two images of the same module under one functor.
RepHom comparison(const StableImage& a, const StableImage& b);

// 0 -> M_x -> M_y + P -> M_z + Q -> 0
struct ExactImage {
    Rep mx, my, mz;
    Rep p, q;
    Rep middle, right;  // M_y + P and M_z + Q, in that summand order
    RepHom left_map, right_map;
    RepHom a, u;  // M_x -> M_y and M_y -> M_z components
    bool exact = false;
    bool projective_terms = false;
    bool a_matches = false;
    bool u_matches = false;
    bool ok() const { return exact && projective_terms && a_matches && u_matches; }
};
// Throws std::invalid_argument when 0 -> x -> y -> z -> 0 is not exact.
ExactImage exact_sequence_image(const FunctorData& f, const Rep& x, const Rep& y, const Rep& z, const RepHom& fi,
                                const RepHom& gi);

bool is_short_exact(const Rep& x, const Rep& y, const Rep& z, const RepHom& f, const RepHom& g);

}  // namespace sf
