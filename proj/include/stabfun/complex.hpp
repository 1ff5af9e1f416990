#pragma once

#include <map>
#include <optional>
#include <vector>

#include "stabfun/module.hpp"

namespace sf {

// Bounded cochain complex; terms[k] sits in degree lo + k and diffs[k] is
// the differential out of that degree. Terms outside the window are zero.
struct Complex {
    AlgPtr alg;
    int lo = 0;
    std::vector<Rep> terms;
    std::vector<RepHom> diffs;

    int hi() const { return lo + int(terms.size()) - 1; }
    bool empty() const { return terms.empty(); }
    Rep term(int i) const;
    RepHom diff(int i) const;
    void validate() const;
};

// Degreewise maps; missing degrees are zero.
struct ChainMap {
    std::map<int, RepHom> maps;
};

Complex make_complex(const AlgPtr& alg, int lo, std::vector<Rep> terms, std::vector<RepHom> diffs);
Complex zero_complex(const AlgPtr& alg);
Complex stalk(const Rep& m, int degree = 0);
// Drops zero terms at both ends of the window.
Complex trim(const Complex& c);

RepHom map_at(const ChainMap& f, const Complex& x, const Complex& y, int i);
ChainMap identity_chain(const Complex& c);
ChainMap compose(const ChainMap& g, const ChainMap& f, const Complex& x, const Complex& y, const Complex& z);
ChainMap add(const ChainMap& f, const ChainMap& g, const Complex& x, const Complex& y);
ChainMap neg(const ChainMap& f);
bool is_chain_map(const ChainMap& f, const Complex& x, const Complex& y);
bool is_zero(const ChainMap& f);

Complex shift(const Complex& c, int n);
// Shifted copy of a chain map x -> y as x[n] -> y[n].
ChainMap shift(const ChainMap& f, int n);

struct Cone {
    Complex c;
    ChainMap from_target;  // y -> cone
    ChainMap to_source;    // cone -> x[1]
};
// cone^i = x^{i+1} + y^i with d(a, b) = (-d a, f a + d b).
Cone cone(const ChainMap& f, const Complex& x, const Complex& y);

struct Truncation {
    Complex c;
    ChainMap map;  // inclusion for the >= part, projection for the < part
};
Truncation brutal_truncate_geq(const Complex& c, int m);
Truncation brutal_truncate_lt(const Complex& c, int m);
// Degree-0 term replaced by coker d^{-1}; map is the quasi-isomorphism c -> result.
// Homology is checked from degree check_from (default: the whole window).
Truncation good_truncate_geq0(const Complex& c, std::optional<int> check_from = std::nullopt);

Rep homology(const Complex& c, int i);
std::vector<int> homology_dims(const Complex& c, int i);
bool is_acyclic(const Complex& c);
bool is_acyclic_in(const Complex& c, int from, int to);
// Induced map on H^i, built from cycle and boundary coordinates.
RepHom homology_map(const ChainMap& f, const Complex& x, const Complex& y, int i);
bool is_quasi_iso(const ChainMap& f, const Complex& x, const Complex& y);

struct HomK {
    int dim = 0;
    // cycle representatives: degree i component is a map x^i -> y^{i+n}
    std::vector<std::map<int, RepHom>> basis;
};
// Hom in the homotopy category via the total Hom complex over hom_space bases.
HomK hom_K_general(const Complex& x, const Complex& y, int n);

// A degree -1 family h with u = d h + h d, when one exists.
std::optional<std::map<int, RepHom>> solve_homotopy(const ChainMap& u, const Complex& x, const Complex& y);

}  // namespace sf
