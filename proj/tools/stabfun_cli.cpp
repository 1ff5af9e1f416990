#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "stabfun/corpus.hpp"
#include "stabfun/gorenstein.hpp"
#include "stabfun/io.hpp"

using nlohmann::json;
using namespace sf;

namespace {

// Bad arguments or references: exit code 2.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string file;
    int corpus_n = 0;
    std::string format;
    std::uint64_t seed = 1;
    long long prime = 0;
    int depth = 8;

    std::string module, from, to, complex, functor, map, left, right, candidate, algebra, strategy = "minimal";
    std::vector<std::string> modules;
    int degree = 0;
    int length = 0;
    int search_depth = 4;
    int n = 1;
};

struct Output {
    json data;
    std::string table;
    std::vector<std::pair<std::string, Rep>> dot;  // modules drawn for --format dot
};

class Session {
public:
    explicit Session(const Options& o) : o_(o) {}

    const Definitions& defs() {
        if (defs_) return *defs_;
        std::optional<elem> p;
        if (o_.prime) p = elem(o_.prime);
        if (!o_.file.empty() && o_.corpus_n) throw UsageError("give either --file or --corpus, not both");
        if (!o_.file.empty())
            defs_ = load_definitions(o_.file, p);
        else if (o_.corpus_n > 0)
            defs_ = corpus_definitions(o_.corpus_n, p ? *p : kDefaultPrime, o_.depth);
        else
            throw UsageError("this verb needs definitions: pass --file or --corpus");
        return *defs_;
    }

    AlgPtr algebra(const std::string& name) {
        auto it = defs().algebras.find(name);
        if (it == defs().algebras.end()) throw UsageError("unknown algebra '" + name + "'");
        return it->second;
    }

    // A named module, or S<v> / P<v> over --algebra (or the only algebra).
    Rep module(const std::string& name) {
        if (name.empty()) throw UsageError("missing module argument");
        const Definitions& d = defs();
        auto it = d.modules.find(name);
        if (it != d.modules.end()) return it->second;
        if (name.size() >= 2 && (name[0] == 'S' || name[0] == 'P')) {
            AlgPtr a;
            if (!o_.algebra.empty())
                a = algebra(o_.algebra);
            else if (d.algebras.size() == 1)
                a = d.algebras.begin()->second;
            if (a) {
                const std::string label = name.substr(1);
                const auto& vs = a->quiver().vertices;
                for (int v = 0; v < int(vs.size()); ++v)
                    if (vs[v] == label) return name[0] == 'S' ? simple(a, v) : projective(a, v);
            }
        }
        throw UsageError("unknown module '" + name + "'");
    }

    // A named complex, or a module as a stalk in degree zero.
    Complex complex(const std::string& name) {
        auto it = defs().complexes.find(name);
        if (it != defs().complexes.end()) return it->second.c;
        return stalk(module(name), 0);
    }

    const FunctorData& functor(const std::string& name) {
        if (name.empty()) throw UsageError("missing --functor");
        auto it = defs().functors.find(name);
        if (it == defs().functors.end()) throw UsageError("unknown functor '" + name + "'");
        return it->second;
    }

    const MapDef& map(const std::string& name) {
        auto it = defs().maps.find(name);
        if (it == defs().maps.end()) throw UsageError("unknown map '" + name + "'");
        return it->second;
    }

    std::vector<ProjComplex> candidate(const std::string& name) {
        if (!defs().candidates.count(name)) throw UsageError("unknown candidate '" + name + "'");
        return defs().candidate(name);
    }

    std::string alg_name(const AlgPtr& a) { return defs().algebra_name(a); }

private:
    const Options& o_;
    std::optional<Definitions> defs_;
};

Strategy parse_strategy(const std::string& s) {
    if (s == "minimal") return Strategy::Minimal;
    if (s == "raw") return Strategy::Raw;
    if (s == "padded") return Strategy::Padded;
    throw UsageError("unknown strategy '" + s + "'");
}

json dims_json(const Rep& m) { return json(m.dims); }

std::string terms_table(const ProjComplex& c) {
    std::ostringstream out;
    for (int i = c.lo; i <= c.hi(); ++i) {
        out << "degree " << i << ":";
        for (int v : c.term(i)) out << " P" << c.alg->quiver().vertices[v];
        out << "\n";
    }
    if (c.empty()) out << "zero complex\n";
    return out.str();
}

json module_json(const Rep& m) {
    json j = rep_json(m);
    j["total_dim"] = m.total_dim();
    return j;
}

std::string opt_int(const std::optional<int>& v) { return v ? std::to_string(*v) : "beyond bound"; }

Output run_verb(const std::string& verb, const Options& o, Session& s) {
    Output out;
    std::ostringstream t;
    if (verb == "resolve") {
        Rep m = s.module(o.module);
        const int len = o.length > 0 ? o.length : o.depth;
        Resolution r = resolve_module(m, len);
        json terms = json::array();
        for (std::size_t i = 0; i < r.verts.size(); ++i) {
            json row = json::array();
            t << "P_" << i << ":";
            for (int v : r.verts[i]) {
                row.push_back(m.alg->quiver().vertices[v]);
                t << " P" << m.alg->quiver().vertices[v];
            }
            t << "\n";
            terms.push_back(row);
        }
        t << (r.finite ? "finite resolution\n" : "truncated at length " + std::to_string(len) + "\n");
        out.data = {{"module", o.module}, {"length", len}, {"terms", terms}, {"finite", r.finite}};
    } else if (verb == "ext") {
        Rep x = s.module(o.from), y = s.module(o.to);
        if (x.alg != y.alg) throw UsageError("modules over different algebras");
        if (o.degree < 0) throw UsageError("degree must be non-negative");
        const int d = ext_dim(x, y, o.degree);
        out.data = {{"from", o.from}, {"to", o.to}, {"degree", o.degree}, {"dim", d}};
        t << "Ext^" << o.degree << "(" << o.from << ", " << o.to << ") = " << d << "\n";
    } else if (verb == "hom-k" || verb == "hom-d" || verb == "compare-kd") {
        Complex x = s.complex(o.from), y = s.complex(o.to);
        if (x.alg != y.alg) throw UsageError("complexes over different algebras");
        out.data = {{"from", o.from}, {"to", o.to}, {"degree", o.degree}};
        if (verb == "hom-k") {
            const int d = hom_K_general(x, y, o.degree).dim;
            out.data["dim"] = d;
            t << "dim Hom_K(" << o.from << ", " << o.to << "[" << o.degree << "]) = " << d << "\n";
        } else if (verb == "hom-d") {
            const int d = hom_D(x, y, o.degree);
            out.data["dim"] = d;
            t << "dim Hom_D(" << o.from << ", " << o.to << "[" << o.degree << "]) = " << d << "\n";
        } else {
            Comparison c = localization_compare(x, y, o.degree);
            const bool iso = c.hom_k == c.hom_d && c.rank == c.hom_k;
            const bool inj = c.rank == c.hom_k;
            out.data["hom_k"] = c.hom_k;
            out.data["hom_d"] = c.hom_d;
            out.data["rank"] = c.rank;
            out.data["hypothesis"] = c.hypothesis;
            out.data["isomorphism"] = iso;
            out.data["injective"] = inj;
            t << "hom_K = " << c.hom_k << ", hom_D = " << c.hom_d << ", rank = " << c.rank << "\n"
              << "hypothesis " << (c.hypothesis ? "holds" : "fails") << "; map is "
              << (iso ? "an isomorphism" : inj ? "injective" : "not injective") << "\n";
        }
    } else if (verb == "tilting-check") {
        auto sum = s.candidate(o.candidate);
        TiltingReport r = check_tilting(sum, o.search_depth);
        const bool gen = r.generates == Generation::Yes;
        out.data = {{"candidate", o.candidate},
                    {"self_orthogonal", r.self_orthogonal},
                    {"generates", gen ? "yes" : "unknown"},
                    {"rounds", r.rounds},
                    {"failures", r.failures},
                    {"tilting", r.self_orthogonal && gen}};
        t << "self-orthogonal: " << (r.self_orthogonal ? "yes" : "no") << "\n"
          << "generates: " << (gen ? "yes (round " + std::to_string(r.rounds) + ")" : "unknown") << "\n";
        for (const auto& f : r.failures) t << "failure: " << f << "\n";
    } else if (verb == "endo") {
        auto sum = s.candidate(o.candidate);
        EndoPresentation e = endomorphism_presentation(sum, s.defs().prime);
        json arrows = json::array();
        for (std::size_t i = 0; i < e.arrows.size(); ++i)
            for (std::size_t j = 0; j < e.arrows[i].size(); ++j)
                if (e.arrows[i][j]) {
                    arrows.push_back({{"src", i}, {"tgt", j}, {"count", e.arrows[i][j]}});
                    t << "arrow " << i << " -> " << j;
                    if (e.arrows[i][j] > 1) t << " (x" << e.arrows[i][j] << ")";
                    t << "\n";
                }
        out.data = {{"candidate", o.candidate},
                    {"dim", e.dim},
                    {"vertices", e.arrows.size()},
                    {"arrows", arrows},
                    {"relations", e.relations},
                    {"basic", e.basic}};
        t << "dim " << e.dim << ", " << e.relations << " relations, " << (e.basic ? "basic" : "not basic") << "\n";
    } else if (verb == "apply") {
        const FunctorData& f = s.functor(o.functor);
        ProjComplex img;
        std::string what;
        if (!o.complex.empty()) {
            const ComplexDef& cd = s.defs().complex(o.complex);
            if (!cd.proj) throw UsageError("complex '" + o.complex + "' is not a complex of projectives");
            if (cd.proj->alg != f.src) throw UsageError("complex is not over the source algebra");
            img = apply(f, *cd.proj);
            what = o.complex;
        } else {
            Rep m = s.module(o.module);
            if (m.alg != f.src) throw UsageError("module is not over the source algebra");
            img = apply_to_module(f, m, stable_window(f)).fx;
            what = o.module;
        }
        img = proj_trim(minimize(img).p);
        json j = proj_complex_json(img);
        j["algebra"] = s.alg_name(f.tgt);
        out.data = {{"functor", o.functor}, {"argument", what}, {"image", j}};
        t << terms_table(img);
    } else if (verb == "stable-image") {
        const FunctorData& f = s.functor(o.functor);
        Rep m = s.module(o.module);
        if (m.alg != f.src) throw UsageError("module is not over the source algebra");
        StableImage im = stable_image(f, m, parse_strategy(o.strategy));
        out.data = {{"functor", o.functor},
                    {"module", o.module},
                    {"strategy", o.strategy},
                    {"algebra", s.alg_name(f.tgt)},
                    {"raw_dims", dims_json(im.m)},
                    {"image", module_json(im.core())},
                    {"projective_summands_removed", im.strip.removed.size()}};
        t << "stable image of " << o.module << " under " << o.functor << ": " << describe(im.core()) << "\n"
          << "raw degree-zero term " << dim_vector(im.m) << ", " << im.strip.removed.size()
          << " projective summands removed\n";
        out.dot.push_back({o.functor + "(" + o.module + ")", im.core()});
    } else if (verb == "stable-map") {
        const FunctorData& f = s.functor(o.functor);
        const MapDef& md = s.map(o.map);
        const Rep &x = s.defs().module(md.from), &y = s.defs().module(md.to);
        if (x.alg != f.src) throw UsageError("map is not over the source algebra");
        StableMap sm = stable_image_map(f, md.hom, x, y, parse_strategy(o.strategy));
        const bool zero = stably_zero(sm.core, sm.x.core(), sm.y.core());
        out.data = {{"functor", o.functor},
                    {"map", o.map},
                    {"source", module_json(sm.x.core())},
                    {"target", module_json(sm.y.core())},
                    {"at", hom_json(sm.core, f.tgt)},
                    {"stably_zero", zero}};
        t << "image of " << o.map << ": " << dim_vector(sm.x.core()) << " -> " << dim_vector(sm.y.core())
          << (zero ? ", stably zero\n" : ", stably nonzero\n");
    } else if (verb == "exact-image") {
        const FunctorData& f = s.functor(o.functor);
        const MapDef &a = s.map(o.left), &b = s.map(o.right);
        if (a.to != b.from) throw UsageError("maps are not composable");
        const Rep &x = s.defs().module(a.from), &y = s.defs().module(a.to), &z = s.defs().module(b.to);
        ExactImage e = exact_sequence_image(f, x, y, z, a.hom, b.hom);
        out.data = {{"functor", o.functor},
                    {"left", o.left},
                    {"right", o.right},
                    {"exact", e.exact},
                    {"projective_terms", e.projective_terms},
                    {"left_class_matches", e.a_matches},
                    {"right_class_matches", e.u_matches},
                    {"ok", e.ok()},
                    {"dims",
                     {{"left", e.mx.dims}, {"middle", e.middle.dims}, {"right", e.right.dims},
                      {"P", e.p.dims}, {"Q", e.q.dims}}}};
        t << "0 -> " << dim_vector(e.mx) << " -> " << dim_vector(e.middle) << " -> " << dim_vector(e.right)
          << " -> 0\n"
          << "exact: " << (e.exact ? "yes" : "no") << ", P and Q projective: " << (e.projective_terms ? "yes" : "no")
          << ", edge classes match: " << (e.a_matches && e.u_matches ? "yes" : "no") << "\n";
    } else if (verb == "gp-check") {
        Rep m = s.module(o.module);
        GPReport r = is_gorenstein_projective(m, o.depth);
        const std::string v = r.gp() ? "GP-up-to-depth" : "not-GP";
        out.data = {{"module", o.module},
                    {"depth", o.depth},
                    {"verdict", v},
                    {"ext_left", r.ext_left},
                    {"ext_right", r.ext_right}};
        t << o.module << ": " << v << " (depth " << o.depth << ")\n";
        if (!r.gp()) {
            out.data["witness"] = {{"degree", r.witness_degree}, {"side", r.witness_side}};
            t << "witness: nonzero Ext^" << r.witness_degree << " on the " << r.witness_side << " side\n";
        }
    } else if (verb == "cosyzygy") {
        Rep m = s.module(o.module);
        CosyzygySequence cs = cosyzygy_sequence(m, o.depth);
        json steps = json::array();
        for (std::size_t i = 0; i < cs.projectives.size(); ++i) {
            steps.push_back({{"projective", cs.projectives[i].dims}, {"cosyzygy", cs.modules[i + 1].dims}});
            t << "0 -> X^" << i << " -> " << dim_vector(cs.projectives[i]) << " -> X^" << i + 1 << " = "
              << dim_vector(cs.modules[i + 1]) << " -> 0\n";
        }
        out.data = {{"module", o.module}, {"depth", o.depth}, {"steps", steps}};
        if (cs.modules.size() > 1) {
            out.data["first"] = module_json(cs.modules[1]);
            out.dot.push_back({"cosyzygy(" + o.module + ")", cs.modules[1]});
        }
    } else if (verb == "projdim") {
        Rep m = s.module(o.module);
        auto pd = projdim(m, o.depth);
        out.data = {{"module", o.module}, {"bound", o.depth}};
        out.data["projdim"] = pd ? json(*pd) : json(nullptr);
        t << "projdim " << o.module << " = " << opt_int(pd) << "\n";
    } else if (verb == "findim-check") {
        const FunctorData& f = s.functor(o.functor);
        std::vector<Rep> mods;
        std::vector<std::string> names;
        if (!o.modules.empty()) {
            for (const auto& n : o.modules) {
                mods.push_back(s.module(n));
                names.push_back(n);
                if (mods.back().alg != f.src) throw UsageError("module '" + n + "' is not over the source algebra");
            }
        } else {
            mods = tree_string_modules(f.src);
            for (const auto& m : mods) names.push_back(dim_vector(m));
        }
        FindimReport r = findim_bounds_check(f, mods, o.depth);
        json rows = json::array();
        for (std::size_t i = 0; i < r.rows.size(); ++i) {
            const auto& row = r.rows[i];
            rows.push_back({{"module", names[i]},
                            {"projdim", row.pd_x ? json(*row.pd_x) : json(nullptr)},
                            {"projdim_image", row.pd_image ? json(*row.pd_image) : json(nullptr)},
                            {"ok", row.ok}});
            t << names[i] << ": projdim " << opt_int(row.pd_x) << ", image " << opt_int(row.pd_image)
              << (row.ok ? "" : "  BOUND FAILS") << "\n";
        }
        out.data = {{"functor", o.functor}, {"width", r.width}, {"rows", rows}, {"ok", r.ok()},
                    {"findim_source", findim_over(mods, o.depth)}};
        t << "bounds " << (r.ok() ? "hold" : "fail") << " (width " << r.width << ")\n";
    } else if (verb == "decompose") {
        Rep m = s.module(o.module);
        Decomposition dec = decompose(m, o.seed);
        json parts = json::array();
        int k = 0;
        for (const auto& p : dec.parts) {
            parts.push_back(module_json(p));
            t << "summand " << k << ": " << describe(p) << "\n";
            out.dot.push_back({o.module + "_" + std::to_string(k++), p});
        }
        if (dec.parts.empty()) t << "zero module, no summands\n";
        out.data = {{"module", o.module}, {"seed", o.seed}, {"summands", parts}};
    } else if (verb == "corpus") {
        if (o.n < 1) throw UsageError("--n must be at least 1");
        Definitions d = corpus_definitions(o.n, o.prime ? elem(o.prime) : kDefaultPrime, o.depth);
        out.data = serialize(d);
        t << "algebras:";
        for (const auto& [n, a] : d.algebras) t << " " << n << " (dim " << a->dim() << ")";
        t << "\n" << d.modules.size() << " modules, " << d.maps.size() << " maps, " << d.functors.size()
          << " functors, " << d.manifest["gp_modules"].size() << " M(i,l)\n";
    } else {
        throw UsageError("unknown verb '" + verb + "'");
    }
    out.table = t.str();
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"stabfun: stable functors, Gorenstein projectives and derived categories of bound quiver algebras"};
    app.require_subcommand(1, 1);
    Options o;
    app.add_option("--file", o.file, "definitions file (JSON)");
    app.add_option("--corpus", o.corpus_n, "use the generated worked example for this n instead of --file");
    app.add_option("--format", o.format, "output format")->check(CLI::IsMember({"table", "json", "dot"}));
    app.add_option("--seed", o.seed, "random seed");
    app.add_option("--prime", o.prime, "field characteristic");
    app.add_option("--depth", o.depth, "Ext depth or projdim bound")->check(CLI::PositiveNumber);
    app.add_option("--algebra", o.algebra, "algebra for S<v>/P<v> shorthands");
    app.fallthrough();

    auto verb = [&](const std::string& name, const std::string& help) { return app.add_subcommand(name, help); };
    auto* c = verb("resolve", "minimal projective resolution of a module");
    c->add_option("--module", o.module)->required();
    c->add_option("--length", o.length);
    c = verb("ext", "dim Ext^i between modules");
    c->add_option("--from", o.from)->required();
    c->add_option("--to", o.to)->required();
    c->add_option("--degree", o.degree)->required();
    for (const char* n : {"hom-k", "hom-d", "compare-kd"}) {
        c = verb(n, std::string(n) == "compare-kd" ? "compare Hom_K and Hom_D" : "dim Hom between complexes");
        c->add_option("--from", o.from)->required();
        c->add_option("--to", o.to)->required();
        c->add_option("--degree", o.degree);
    }
    c = verb("tilting-check", "self-orthogonality and generation of a candidate");
    c->add_option("--candidate", o.candidate)->required();
    c->add_option("--search-depth", o.search_depth);
    c = verb("endo", "quiver of the endomorphism ring of a candidate");
    c->add_option("--candidate", o.candidate)->required();
    c = verb("apply", "image of a module or projective complex under functor data");
    c->add_option("--functor", o.functor)->required();
    auto* om = c->add_option("--module", o.module);
    c->add_option("--complex", o.complex)->excludes(om);
    c = verb("stable-image", "stable functor on a module");
    c->add_option("--functor", o.functor)->required();
    c->add_option("--module", o.module)->required();
    c->add_option("--strategy", o.strategy)->check(CLI::IsMember({"minimal", "raw", "padded"}));
    c = verb("stable-map", "stable functor on a map");
    c->add_option("--functor", o.functor)->required();
    c->add_option("--map", o.map)->required();
    c->add_option("--strategy", o.strategy)->check(CLI::IsMember({"minimal", "raw", "padded"}));
    c = verb("exact-image", "image of a short exact sequence");
    c->add_option("--functor", o.functor)->required();
    c->add_option("--left", o.left)->required();
    c->add_option("--right", o.right)->required();
    c = verb("gp-check", "Gorenstein projective test up to --depth");
    c->add_option("--module", o.module)->required();
    c = verb("cosyzygy", "cosyzygy sequence up to --depth");
    c->add_option("--module", o.module)->required();
    c = verb("projdim", "projective dimension up to the bound --depth");
    c->add_option("--module", o.module)->required();
    c = verb("findim-check", "projdim bounds along functor data");
    c->add_option("--functor", o.functor)->required();
    c->add_option("--modules", o.modules)->delimiter(',');
    c = verb("decompose", "indecomposable summands");
    c->add_option("--module", o.module)->required();
    c = verb("corpus", "emit the worked example definitions");
    c->add_option("--n", o.n);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }
    const std::string name = app.get_subcommands().front()->get_name();
    if (o.format.empty()) o.format = name == "corpus" ? "json" : "table";
    if (o.prime && (o.prime < 3 || o.prime > kMaxPrime || !is_prime(std::uint64_t(o.prime)))) {
        std::cerr << "error: --prime must be an odd prime up to " << kMaxPrime << "\n";
        return 2;
    }

    Session s(o);
    Output out;
    try {
        out = run_verb(name, o, s);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ParseError& e) {
        std::cerr << "parse error at " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    if (o.format == "json") {
        std::cout << out.data.dump(2) << "\n";
    } else if (o.format == "dot") {
        if (out.dot.empty()) {
            std::cerr << "error: " << name << " has no module output to draw\n";
            return 2;
        }
        for (const auto& [label, m] : out.dot) std::cout << module_dot(m, label);
    } else {
        std::cout << out.table;
    }
    return 0;
}
