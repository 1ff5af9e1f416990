#include "stabfun/corpus.hpp"
#include "stabfun/gorenstein.hpp"
#include "stabfun/io.hpp"

namespace sf {

namespace {

std::string idx(int i) { return std::to_string(i); }

std::string verdict_name(const GPReport& r) { return r.gp() ? "GP-up-to-depth" : "not-GP"; }

}  // namespace

Definitions corpus_definitions(int n, elem p, int depth) {
    if (n < 1) throw std::invalid_argument("corpus_definitions: n must be at least 1");
    Example ex = worked_example(n, p);
    Definitions d;
    d.prime = p;
    d.algebras = {{"A", ex.A}, {"B", ex.B}, {"Lambda", ex.Lambda}, {"Gamma", ex.Gamma}};
    d.derived = {{"Lambda", "A"}, {"Gamma", "B"}};

    CandidateDef cand{"A", {}};
    for (std::size_t v = 0; v < ex.tilting.size(); ++v) {
        const std::string name = "T" + idx(int(v));
        d.complexes[name] = ComplexDef{materialize(ex.tilting[v]), ex.tilting[v]};
        d.complex_alg[name] = "A";
        cand.summands.push_back(name);
    }
    d.candidates["T_tilting"] = cand;
    d.functors = {{"F", ex.F}, {"G", ex.G}, {"Fp", ex.Fp}, {"Gp", ex.Gp}};
    for (auto& [name, f] : d.functors) f.name = name;

    auto add_module = [&](const std::string& name, const std::string& alg, const Rep& m) {
        d.modules[name] = m;
        d.module_alg[name] = alg;
    };
    const int top = 2 * n + 2;
    for (int v = 0; v < top; ++v) {
        add_module("S_tensor_Q" + idx(v), "Gamma", simple_tensor(ex.Gamma, projective(ex.B, v)));
        add_module("S_tensor_P" + idx(v), "Lambda", simple_tensor(ex.Lambda, projective(ex.A, v)));
    }

    nlohmann::json entries = nlohmann::json::array();
    std::map<std::pair<int, int>, const ShortExact*> ses;
    auto seqs = gp_sequences(ex);
    for (const auto& s : seqs) {
        const auto open = s.label.find('('), comma = s.label.find(','), close = s.label.find(')');
        ses[{std::stoi(s.label.substr(open + 1, comma - open - 1)),
             std::stoi(s.label.substr(comma + 1, close - comma - 1))}] = &s;
    }
    for (const auto& g : gp_modules(ex)) {
        const std::string tag = idx(g.i) + "_" + idx(g.l);
        const std::string mname = "M_" + tag, nname = "N_" + tag;
        add_module(mname, "Gamma", g.m);
        StableImage im = stable_image(ex.Fp, g.m);
        add_module(nname, "Lambda", im.core());
        nlohmann::json e{{"module", mname},
                         {"i", g.i},
                         {"l", g.l},
                         {"stable_image", nname},
                         {"stable_image_dims", im.core().dims},
                         {"gp_verdict", verdict_name(is_gorenstein_projective(g.m, depth))},
                         {"image_gp_verdict", verdict_name(is_gorenstein_projective(im.core(), depth))}};
        auto it = ses.find({g.i, g.l});
        if (it != ses.end()) {
            const ShortExact& s = *it->second;
            const std::string left = "S_tensor_Q" + idx(g.i), right = "S_tensor_Q" + idx(g.i + g.l);
            d.maps["ses_" + tag + "_f"] = MapDef{left, mname, s.f};
            d.maps["ses_" + tag + "_g"] = MapDef{mname, right, s.g};
            e["ses"] = {{"left", left}, {"right", right}, {"f", "ses_" + tag + "_f"}, {"g", "ses_" + tag + "_g"}};
        } else {
            e["ses"] = nullptr;
            e["equals"] = "S_tensor_Q" + idx(g.i);
        }
        entries.push_back(e);
    }
    d.manifest = {{"n", n}, {"depth", depth}, {"functor", "Fp"}, {"gp_modules", entries}};
    return d;
}

}  // namespace sf
