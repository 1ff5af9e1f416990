#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "stabfun/algebra.hpp"
#include "stabfun/functor.hpp"
#include "stabfun/module.hpp"

namespace sf {

// Vertices 0..2n+1; arrows alpha<2j+1>: 2j+1 -> 2j and beta<2j+1>: 2j+1 -> 2j+3,
// with every beta followed by alpha set to zero.
AlgPtr algebra_A(int n, elem p);
// Linear quiver 0 -> 1 -> ... -> 2n+1 with arrows a<j>: j -> j+1.
AlgPtr algebra_B(int n, elem p);

// Cokernel of a random map between random projective sums.
Rep random_module(const AlgPtr& alg, std::mt19937_64& rng, int max_gens = 2, double density = 0.6);

// The worked example for a given n: A, B, their dual-number versions, the
// functor B -> A given by the tilting module, its quasi-inverse data and
// the dual-number lifts.
struct Example {
    int n = 1;
    AlgPtr A, B, Lambda, Gamma;
    std::vector<ProjComplex> tilting;  // summands over A, indexed by vertices of B
    FunctorData F;                     // B -> A
    FunctorData G;                     // A -> B, Hom(T, -) shifted into degrees >= 0
    int g_shift = 0;                   // G is Hom(T, -) followed by [-g_shift]
    FunctorData Fp;                    // Gamma -> Lambda
    FunctorData Gp;                    // Lambda -> Gamma
};
Example worked_example(int n, elem p);

// Gamma-modules built from a B-module and a nilpotent eps action.
Rep eps_module(const AlgPtr& gamma, const Rep& base, const std::vector<Matrix>& eps);
// S (x) X, with eps acting by zero.
Rep simple_tensor(const AlgPtr& gamma, const Rep& x);
// k[eps] (x) X.
Rep free_tensor(const AlgPtr& gamma, const Rep& x);

// Q_i + Q_{i+l} with eps the inclusion Q_{i+l} -> Q_i; S (x) Q_i when i + l = 2n + 2.
Rep gp_module(const Example& ex, int i, int l);
struct GPModule {
    int i = 0, l = 0;
    Rep m;
};
std::vector<GPModule> gp_modules(const Example& ex);
// Short exact sequences 0 -> S(x)Q_i -> M(i, l) -> S(x)Q_{i+l} -> 0 for non-projective X(i, l).
struct ShortExact {
    std::string label;
    Rep x, y, z;
    RepHom f, g;
};
std::vector<ShortExact> gp_sequences(const Example& ex);

// Thin modules on connected vertex sets of a tree quiver that satisfy the
// relations. For algebra_A and algebra_B these are all the indecomposables.
std::vector<Rep> tree_string_modules(const AlgPtr& alg);

}  // namespace sf
