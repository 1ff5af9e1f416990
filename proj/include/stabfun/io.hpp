#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "stabfun/functor.hpp"

namespace sf {

// Parse failure with a JSON-pointer style location.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& where, const std::string& what)
        : std::runtime_error(where + ": " + what), where_(where) {}
    const std::string& where() const { return where_; }

private:
    std::string where_;
};

struct MapDef {
    std::string from, to;
    RepHom hom;
};

struct ComplexDef {
    Complex c;
    std::optional<ProjComplex> proj;  // set for complexes given by projective terms
};

struct CandidateDef {
    std::string algebra;
    std::vector<std::string> summands;
};

struct Definitions {
    elem prime = kDefaultPrime;
    bool prime_override = false;  // prime fixed by the caller, field section ignored
    std::map<std::string, AlgPtr> algebras;
    std::map<std::string, std::string> derived;  // algebra name -> base for dual-number algebras
    std::map<std::string, std::string> module_alg;
    std::map<std::string, Rep> modules;
    std::map<std::string, MapDef> maps;
    std::map<std::string, std::string> complex_alg;
    std::map<std::string, ComplexDef> complexes;
    std::map<std::string, CandidateDef> candidates;
    std::map<std::string, FunctorData> functors;
    nlohmann::json manifest;

    std::string algebra_name(const AlgPtr& a) const;
    const Rep& module(const std::string& name) const;
    const MapDef& map(const std::string& name) const;
    const ComplexDef& complex(const std::string& name) const;
    const FunctorData& functor(const std::string& name) const;
    std::vector<ProjComplex> candidate(const std::string& name) const;
};

Definitions parse_definitions(const nlohmann::json& doc, std::optional<elem> prime = std::nullopt);
Definitions load_definitions(const std::string& path, std::optional<elem> prime = std::nullopt);
nlohmann::json serialize(const Definitions& defs);

nlohmann::json matrix_json(const Matrix& m);
nlohmann::json element_json(const AlgPtr& alg, const Vec& x);
nlohmann::json rep_json(const Rep& m);
// Nonzero vertex matrices keyed by vertex label.
nlohmann::json hom_json(const RepHom& f, const AlgPtr& alg);
nlohmann::json proj_complex_json(const ProjComplex& c);

// Definitions for the worked example at a given n: A, B, their dual-number
// versions, the tilting summands and candidate, functors F, G, Fp, Gp, the
// modules M_i_l with their short exact sequences, and a manifest of
// expected stable images and GP verdicts at the given depth.
Definitions corpus_definitions(int n, elem p, int depth = 8);

// DOT digraph with one node per basis vector and one edge per nonzero arrow entry.
std::string module_dot(const Rep& m, const std::string& name);

}  // namespace sf
