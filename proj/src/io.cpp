#include "stabfun/io.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace sf {

using nlohmann::json;

namespace {

std::string child(const std::string& at, const std::string& key) {
    std::string k;
    for (char c : key) {
        if (c == '~')
            k += "~0";
        else if (c == '/')
            k += "~1";
        else
            k += c;
    }
    return at + "/" + k;
}
std::string child(const std::string& at, std::size_t i) { return at + "/" + std::to_string(i); }

[[noreturn]] void fail(const std::string& at, const std::string& what) { throw ParseError(at.empty() ? "/" : at, what); }

const json& need(const json& j, const std::string& key, const std::string& at) {
    if (!j.is_object()) fail(at, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) fail(at, "missing field '" + key + "'");
    return *it;
}

const json& need_array(const json& j, const std::string& at) {
    if (!j.is_array()) fail(at, "expected an array");
    return j;
}

std::string need_string(const json& j, const std::string& at) {
    if (!j.is_string()) fail(at, "expected a string");
    return j.get<std::string>();
}

long long need_int(const json& j, const std::string& at) {
    if (!j.is_number_integer()) fail(at, "expected an integer");
    return j.get<long long>();
}

bool prime_ok(long long p) {
    if (p < 3 || p > kMaxPrime) return false;
    try {
        check_prime(elem(p));
    } catch (const std::invalid_argument&) {
        return false;
    }
    return true;
}

int vertex_of(const AlgPtr& a, const json& j, const std::string& at) {
    std::string label = j.is_number_integer() ? std::to_string(j.get<long long>()) : need_string(j, at);
    try {
        return a->quiver().vertex(label);
    } catch (const std::invalid_argument&) {
        fail(at, "unknown vertex '" + label + "' of algebra " + a->name());
    }
}

Matrix parse_matrix(const json& j, int rows, int cols, elem p, const std::string& at) {
    need_array(j, at);
    // an empty array stands for any matrix with a zero dimension
    if (j.empty() && (rows == 0 || cols == 0)) return Matrix(rows, cols, p);
    if (int(j.size()) != rows) fail(at, "expected " + std::to_string(rows) + " rows, found " + std::to_string(j.size()));
    Matrix m(rows, cols, p);
    for (int r = 0; r < rows; ++r) {
        const std::string ar = child(at, std::size_t(r));
        const json& row = need_array(j[r], ar);
        if (int(row.size()) != cols)
            fail(ar, "expected " + std::to_string(cols) + " columns, found " + std::to_string(row.size()));
        for (int c = 0; c < cols; ++c) m.set(r, c, need_int(row[c], child(ar, std::size_t(c))));
    }
    return m;
}

Vec parse_element(const AlgPtr& a, const json& j, const std::string& at) {
    Vec x = a->zero();
    need_array(j, at);
    for (std::size_t t = 0; t < j.size(); ++t) {
        const std::string tt = child(at, t);
        const json& term = j[t];
        long long c = term.contains("coeff") ? need_int(term["coeff"], child(tt, "coeff")) : 1;
        Vec y;
        if (term.contains("vertex")) {
            y = a->vertex_unit(vertex_of(a, term["vertex"], child(tt, "vertex")));
        } else {
            const std::string pp = child(tt, "path");
            const json& pj = need_array(need(term, "path", tt), pp);
            if (pj.empty()) fail(pp, "empty path; use a vertex term");
            Path path;
            for (std::size_t k = 0; k < pj.size(); ++k) {
                std::string name = need_string(pj[k], child(pp, k));
                try {
                    path.push_back(a->quiver().arrow(name));
                } catch (const std::invalid_argument&) {
                    fail(child(pp, k), "unknown arrow '" + name + "'");
                }
                if (k > 0 && a->quiver().arrows[path[k - 1]].tgt != a->quiver().arrows[path[k]].src)
                    fail(child(pp, k), "arrow '" + name + "' does not compose with the previous arrow");
            }
            y = a->reduce_path(a->quiver().arrows[path[0]].src, path);
        }
        x = a->add(x, a->scale(y, reduce(c, a->prime())));
    }
    return x;
}

ProjMap parse_projmap(const AlgPtr& a, const json& j, const std::vector<int>& src, const std::vector<int>& tgt,
                      const std::string& at) {
    ProjMap f = zero_projmap(a, src, tgt);
    need_array(j, at);
    if (j.empty() && (src.empty() || tgt.empty())) return f;
    if (j.size() != tgt.size()) fail(at, "expected " + std::to_string(tgt.size()) + " rows (target summands)");
    for (std::size_t i = 0; i < tgt.size(); ++i) {
        const std::string ai = child(at, i);
        if (need_array(j[i], ai).size() != src.size())
            fail(ai, "expected " + std::to_string(src.size()) + " entries (source summands)");
        for (std::size_t k = 0; k < src.size(); ++k) {
            Vec x = parse_element(a, j[i][k], child(ai, k));
            if (!a->is_zero(a->add(x, a->neg(a->corner(x, tgt[i], src[k])))))
                fail(child(ai, k), "entry must lie in the paths from vertex " + a->quiver().vertices[tgt[i]] +
                                       " to vertex " + a->quiver().vertices[src[k]]);
            f.e[i][k] = x;
        }
    }
    return f;
}

std::vector<int> parse_verts(const AlgPtr& a, const json& j, const std::string& at) {
    std::vector<int> out;
    need_array(j, at);
    for (std::size_t k = 0; k < j.size(); ++k) out.push_back(vertex_of(a, j[k], child(at, k)));
    return out;
}

ProjComplex parse_proj_complex(const AlgPtr& a, const json& j, const std::string& at) {
    ProjComplex c{a, 0, {}, {}};
    if (j.contains("lo")) c.lo = int(need_int(j["lo"], child(at, "lo")));
    const std::string tt = child(at, "terms");
    const json& terms = need_array(need(j, "terms", at), tt);
    for (std::size_t k = 0; k < terms.size(); ++k) c.verts.push_back(parse_verts(a, terms[k], child(tt, k)));
    const std::string dd = child(at, "diffs");
    const json& diffs = j.contains("diffs") ? need_array(j["diffs"], dd) : json::array();
    const std::size_t want = c.verts.empty() ? 0 : c.verts.size() - 1;
    if (diffs.size() != want) fail(dd, "expected " + std::to_string(want) + " differentials");
    for (std::size_t k = 0; k < want; ++k)
        c.diffs.push_back(parse_projmap(a, diffs[k], c.verts[k], c.verts[k + 1], child(dd, k)));
    try {
        c.validate();
    } catch (const std::exception& e) {
        fail(at, e.what());
    }
    return c;
}

json verts_json(const AlgPtr& a, const std::vector<int>& vs) {
    json out = json::array();
    for (int v : vs) out.push_back(a->quiver().vertices[v]);
    return out;
}

json projmap_json(const AlgPtr& a, const ProjMap& f) {
    json out = json::array();
    for (std::size_t i = 0; i < f.tgt.size(); ++i) {
        json row = json::array();
        for (std::size_t k = 0; k < f.src.size(); ++k) row.push_back(element_json(a, f.e[i][k]));
        out.push_back(row);
    }
    return out;
}

class Parser {
public:
    explicit Parser(Definitions& d) : d_(d) {}

    void run(const json& doc) {
        if (!doc.is_object()) fail("", "expected a top-level object");
        static const std::set<std::string> known{"field",    "algebras",   "modules",  "maps",
                                                 "complexes", "functors", "candidates", "manifest"};
        for (auto it = doc.begin(); it != doc.end(); ++it)
            if (!known.count(it.key())) fail(child("", it.key()), "unknown section");
        if (doc.contains("field")) {
            const long long p = need_int(need(doc["field"], "prime", "/field"), "/field/prime");
            if (!prime_ok(p)) fail("/field/prime", "expected an odd prime up to " + std::to_string(kMaxPrime));
            if (!d_.prime_override) d_.prime = elem(p);
        }
        // dual-number algebras refer to their base, so parse in dependency order
        if (doc.contains("algebras")) {
            const json& algs = doc["algebras"];
            if (!algs.is_object()) fail("/algebras", "expected an object");
            for (auto it = algs.begin(); it != algs.end(); ++it) algebra(algs, it.key(), 0);
        }
        section(doc, "modules", [&](const std::string& n, const json& j, const std::string& at) {
            d_.modules[n] = module(j, at);
            d_.module_alg[n] = alg_name_of(j, at);
        });
        section(doc, "maps", [&](const std::string& n, const json& j, const std::string& at) { d_.maps[n] = map(j, at); });
        section(doc, "complexes", [&](const std::string& n, const json& j, const std::string& at) {
            d_.complexes[n] = complex(j, at);
            d_.complex_alg[n] = alg_name_of(j, at);
        });
        section(doc, "functors", [&](const std::string& n, const json& j, const std::string& at) {
            FunctorData f = functor(j, at);
            f.name = n;
            d_.functors[n] = f;
        });
        section(doc, "candidates", [&](const std::string& n, const json& j, const std::string& at) {
            CandidateDef c;
            c.algebra = alg_name_of(j, at);
            const std::string ss = child(at, "summands");
            const json& s = need_array(need(j, "summands", at), ss);
            for (std::size_t k = 0; k < s.size(); ++k) {
                std::string name = need_string(s[k], child(ss, k));
                auto cit = d_.complexes.find(name);
                if (cit == d_.complexes.end()) fail(child(ss, k), "unknown complex '" + name + "'");
                if (!cit->second.proj) fail(child(ss, k), "complex '" + name + "' is not a complex of projectives");
                if (d_.complex_alg[name] != c.algebra) fail(child(ss, k), "summand over a different algebra");
                c.summands.push_back(name);
            }
            d_.candidates[n] = c;
        });
        if (doc.contains("manifest")) d_.manifest = doc["manifest"];
    }

private:
    template <class Fn>
    void section(const json& doc, const std::string& key, Fn fn) {
        if (!doc.contains(key)) return;
        const json& s = doc[key];
        const std::string at = "/" + key;
        if (!s.is_object()) fail(at, "expected an object");
        for (auto it = s.begin(); it != s.end(); ++it) fn(it.key(), it.value(), child(at, it.key()));
    }

    AlgPtr algebra(const json& algs, const std::string& name, int depth) {
        auto done = d_.algebras.find(name);
        if (done != d_.algebras.end()) return done->second;
        const std::string at = child("/algebras", name);
        if (!algs.contains(name)) fail(at, "unknown algebra '" + name + "'");
        if (depth > int(algs.size())) fail(at, "cyclic dual_numbers_of chain");
        const json& j = algs[name];
        if (!j.is_object()) fail(at, "expected an object");
        AlgPtr a;
        if (j.contains("dual_numbers_of")) {
            std::string base = need_string(j["dual_numbers_of"], child(at, "dual_numbers_of"));
            if (!algs.contains(base)) fail(child(at, "dual_numbers_of"), "unknown algebra '" + base + "'");
            a = wrap(at, [&] { return dual_numbers_extension(algebra(algs, base, depth + 1), name); });
            d_.derived[name] = base;
        } else {
            Quiver q;
            const std::string vv = child(at, "vertices");
            const json& vs = need_array(need(j, "vertices", at), vv);
            for (std::size_t k = 0; k < vs.size(); ++k)
                q.vertices.push_back(vs[k].is_number_integer() ? std::to_string(vs[k].get<long long>())
                                                               : need_string(vs[k], child(vv, k)));
            const std::string aa = child(at, "arrows");
            const json& as = j.contains("arrows") ? need_array(j["arrows"], aa) : json::array();
            std::set<std::string> vset(q.vertices.begin(), q.vertices.end());
            if (vset.size() != q.vertices.size()) fail(vv, "duplicate vertex label");
            for (std::size_t k = 0; k < as.size(); ++k) {
                const std::string ak = child(aa, k);
                Arrow ar;
                ar.name = need_string(need(as[k], "name", ak), child(ak, "name"));
                for (const auto& prev : q.arrows)
                    if (prev.name == ar.name) fail(child(ak, "name"), "duplicate arrow name '" + ar.name + "'");
                ar.src = index_in(q, need(as[k], "src", ak), child(ak, "src"));
                ar.tgt = index_in(q, need(as[k], "tgt", ak), child(ak, "tgt"));
                q.arrows.push_back(ar);
            }
            std::vector<Relation> rels;
            const std::string rr = child(at, "relations");
            const json& rs = j.contains("relations") ? need_array(j["relations"], rr) : json::array();
            for (std::size_t r = 0; r < rs.size(); ++r) {
                const std::string rk = child(rr, r);
                Relation rel;
                need_array(rs[r], rk);
                if (rs[r].empty()) fail(rk, "empty relation");
                for (std::size_t t = 0; t < rs[r].size(); ++t) {
                    const std::string tk = child(rk, t);
                    PathTerm term;
                    term.coeff = rs[r][t].contains("coeff") ? need_int(rs[r][t]["coeff"], child(tk, "coeff")) : 1;
                    const std::string pk = child(tk, "path");
                    const json& pj = need_array(need(rs[r][t], "path", tk), pk);
                    for (std::size_t s = 0; s < pj.size(); ++s) {
                        std::string an = need_string(pj[s], child(pk, s));
                        int idx = -1;
                        for (int x = 0; x < q.num_arrows(); ++x)
                            if (q.arrows[x].name == an) idx = x;
                        if (idx < 0) fail(child(pk, s), "unknown arrow '" + an + "'");
                        term.path.push_back(idx);
                    }
                    rel.push_back(term);
                }
                rels.push_back(rel);
            }
            a = wrap(at, [&] { return Algebra::create(std::move(q), std::move(rels), d_.prime, name); });
        }
        d_.algebras[name] = a;
        return a;
    }

    static int index_in(const Quiver& q, const json& j, const std::string& at) {
        std::string label = j.is_number_integer() ? std::to_string(j.get<long long>()) : need_string(j, at);
        for (int v = 0; v < q.num_vertices(); ++v)
            if (q.vertices[v] == label) return v;
        fail(at, "unknown vertex '" + label + "'");
    }

    template <class Fn>
    static auto wrap(const std::string& at, Fn fn) -> decltype(fn()) {
        try {
            return fn();
        } catch (const ParseError&) {
            throw;
        } catch (const std::exception& e) {
            fail(at, e.what());
        }
    }

    std::string alg_name_of(const json& j, const std::string& at) {
        std::string n = need_string(need(j, "algebra", at), child(at, "algebra"));
        if (!d_.algebras.count(n)) fail(child(at, "algebra"), "unknown algebra '" + n + "'");
        return n;
    }

    AlgPtr alg_of(const json& j, const std::string& at) { return d_.algebras.at(alg_name_of(j, at)); }

    Rep module(const json& j, const std::string& at) {
        AlgPtr a = alg_of(j, at);
        if (j.contains("simple")) return simple(a, vertex_of(a, j["simple"], child(at, "simple")));
        if (j.contains("projective")) return projective(a, vertex_of(a, j["projective"], child(at, "projective")));
        Rep m = zero_rep(a);
        const Quiver& q = a->quiver();
        if (j.contains("dims")) {
            const std::string dd = child(at, "dims");
            const json& ds = need_array(j["dims"], dd);
            if (int(ds.size()) != q.num_vertices())
                fail(dd, "expected " + std::to_string(q.num_vertices()) + " dimensions");
            for (int v = 0; v < q.num_vertices(); ++v) {
                long long x = need_int(ds[v], child(dd, std::size_t(v)));
                if (x < 0) fail(child(dd, std::size_t(v)), "negative dimension");
                m.dims[v] = int(x);
            }
        }
        for (int k = 0; k < q.num_arrows(); ++k)
            m.mats[k] = Matrix(m.dims[q.arrows[k].tgt], m.dims[q.arrows[k].src], a->prime());
        if (j.contains("arrows")) {
            const std::string aa = child(at, "arrows");
            const json& as = j["arrows"];
            if (!as.is_object()) fail(aa, "expected an object keyed by arrow name");
            for (auto it = as.begin(); it != as.end(); ++it) {
                int k = -1;
                for (int x = 0; x < q.num_arrows(); ++x)
                    if (q.arrows[x].name == it.key()) k = x;
                if (k < 0) fail(child(aa, it.key()), "unknown arrow '" + it.key() + "'");
                m.mats[k] = parse_matrix(it.value(), m.dims[q.arrows[k].tgt], m.dims[q.arrows[k].src], a->prime(),
                                         child(aa, it.key()));
            }
        }
        wrap(at, [&] {
            m.validate();
            return 0;
        });
        return m;
    }

    const Rep& module_ref(const json& j, const std::string& at) {
        std::string n = need_string(j, at);
        auto it = d_.modules.find(n);
        if (it == d_.modules.end()) fail(at, "unknown module '" + n + "'");
        return it->second;
    }

    RepHom hom_at(const json& j, const Rep& x, const Rep& y, const std::string& at) {
        RepHom f = zero_hom(x, y);
        if (j.is_null()) return f;
        if (!j.is_object()) fail(at, "expected an object keyed by vertex");
        for (auto it = j.begin(); it != j.end(); ++it) {
            const std::string av = child(at, it.key());
            int v = vertex_of(x.alg, json(it.key()), av);
            f.at[v] = parse_matrix(it.value(), y.dims[v], x.dims[v], x.prime(), av);
        }
        if (!is_hom(x, y, f)) fail(at, "not a module homomorphism");
        return f;
    }

    MapDef map(const json& j, const std::string& at) {
        MapDef m;
        m.from = need_string(need(j, "from", at), child(at, "from"));
        m.to = need_string(need(j, "to", at), child(at, "to"));
        const Rep& x = module_ref(j["from"], child(at, "from"));
        const Rep& y = module_ref(j["to"], child(at, "to"));
        if (x.alg != y.alg) fail(at, "modules over different algebras");
        m.hom = hom_at(j.contains("at") ? j["at"] : json(), x, y, child(at, "at"));
        return m;
    }

    ComplexDef complex(const json& j, const std::string& at) {
        AlgPtr a = alg_of(j, at);
        ComplexDef out;
        if (j.value("projective", false)) {
            out.proj = parse_proj_complex(a, j, at);
            out.c = materialize(*out.proj);
            return out;
        }
        const int lo = j.contains("lo") ? int(need_int(j["lo"], child(at, "lo"))) : 0;
        std::vector<Rep> terms;
        std::vector<RepHom> diffs;
        const std::string tt = child(at, "terms");
        const json& ts = need_array(need(j, "terms", at), tt);
        for (std::size_t k = 0; k < ts.size(); ++k) {
            const std::string tk = child(tt, k);
            Rep m = ts[k].is_string() ? module_ref(ts[k], tk) : module(with_alg(ts[k], a), tk);
            if (m.alg != a) fail(tk, "term over a different algebra");
            terms.push_back(m);
        }
        const std::string dd = child(at, "diffs");
        const json& ds = j.contains("diffs") ? need_array(j["diffs"], dd) : json::array();
        const std::size_t want = terms.empty() ? 0 : terms.size() - 1;
        if (ds.size() != want) fail(dd, "expected " + std::to_string(want) + " differentials");
        for (std::size_t k = 0; k < want; ++k) {
            const std::string dk = child(dd, k);
            if (ds[k].is_string()) {
                std::string n = ds[k].get<std::string>();
                auto it = d_.maps.find(n);
                if (it == d_.maps.end()) fail(dk, "unknown map '" + n + "'");
                const RepHom& h = it->second.hom;
                if (d_.modules.at(it->second.from).dims != terms[k].dims ||
                    d_.modules.at(it->second.to).dims != terms[k + 1].dims)
                    fail(dk, "map '" + n + "' does not fit between the neighbouring terms");
                diffs.push_back(h);
            } else {
                diffs.push_back(hom_at(ds[k], terms[k], terms[k + 1], dk));
            }
        }
        out.c = wrap(at, [&] { return make_complex(a, lo, terms, diffs); });
        wrap(at, [&] {
            out.c.validate();
            return 0;
        });
        return out;
    }

    static json with_alg(const json& j, const AlgPtr& a) {
        json out = j;
        if (out.is_object() && !out.contains("algebra")) out["algebra"] = a->name();
        return out;
    }

    FunctorData functor(const json& j, const std::string& at) {
        FunctorData f;
        const std::string sn = need_string(need(j, "src", at), child(at, "src"));
        const std::string tn = need_string(need(j, "tgt", at), child(at, "tgt"));
        if (!d_.algebras.count(sn)) fail(child(at, "src"), "unknown algebra '" + sn + "'");
        if (!d_.algebras.count(tn)) fail(child(at, "tgt"), "unknown algebra '" + tn + "'");
        f.src = d_.algebras[sn];
        f.tgt = d_.algebras[tn];
        f.width = j.contains("width") ? int(need_int(j["width"], child(at, "width"))) : 0;
        const Quiver& q = f.src->quiver();
        const std::string ii = child(at, "images");
        const json& ims = need(j, "images", at);
        if (!ims.is_object()) fail(ii, "expected an object keyed by source vertex");
        for (int v = 0; v < q.num_vertices(); ++v) {
            const std::string iv = child(ii, q.vertices[v]);
            if (!ims.contains(q.vertices[v])) fail(ii, "missing image of vertex " + q.vertices[v]);
            const json& im = ims[q.vertices[v]];
            if (im.is_string()) {
                std::string n = im.get<std::string>();
                auto it = d_.complexes.find(n);
                if (it == d_.complexes.end()) fail(iv, "unknown complex '" + n + "'");
                if (!it->second.proj) fail(iv, "complex '" + n + "' is not a complex of projectives");
                if (it->second.proj->alg != f.tgt) fail(iv, "image over the wrong algebra");
                f.images.push_back(*it->second.proj);
            } else {
                f.images.push_back(parse_proj_complex(f.tgt, im, iv));
            }
        }
        for (auto it = ims.begin(); it != ims.end(); ++it) {
            bool found = false;
            for (const auto& lab : q.vertices) found = found || lab == it.key();
            if (!found) fail(child(ii, it.key()), "unknown vertex '" + it.key() + "' of algebra " + sn);
        }
        const std::string mm = child(at, "arrow_maps");
        const json& ams = j.contains("arrow_maps") ? j["arrow_maps"] : json::object();
        if (!ams.is_object()) fail(mm, "expected an object keyed by arrow name");
        for (auto it = ams.begin(); it != ams.end(); ++it) {
            bool found = false;
            for (const auto& ar : q.arrows) found = found || ar.name == it.key();
            if (!found) fail(child(mm, it.key()), "unknown arrow '" + it.key() + "' of algebra " + sn);
        }
        for (const auto& ar : q.arrows) {
            const std::string ma = child(mm, ar.name);
            ProjChainMap cm;
            if (ams.contains(ar.name)) {
                const json& degs = ams[ar.name];
                if (!degs.is_object()) fail(ma, "expected an object keyed by degree");
                const ProjComplex &x = f.images[ar.tgt], &y = f.images[ar.src];
                for (auto dt = degs.begin(); dt != degs.end(); ++dt) {
                    const std::string md = child(ma, dt.key());
                    int deg = 0;
                    try {
                        std::size_t used = 0;
                        deg = std::stoi(dt.key(), &used);
                        if (used != dt.key().size()) throw std::invalid_argument("");
                    } catch (const std::exception&) {
                        fail(md, "degree keys must be integers");
                    }
                    cm.maps[deg] = parse_projmap(f.tgt, dt.value(), x.term(deg), y.term(deg), md);
                }
                if (!is_proj_chain_map(cm, x, y)) fail(ma, "not a chain map");
            }
            f.arrow_maps.push_back(cm);
        }
        wrap(at, [&] {
            f.validate();
            return 0;
        });
        return f;
    }

    Definitions& d_;
};

}  // namespace

std::string Definitions::algebra_name(const AlgPtr& a) const {
    for (const auto& [n, b] : algebras)
        if (b == a) return n;
    return a->name();
}

const Rep& Definitions::module(const std::string& name) const {
    auto it = modules.find(name);
    if (it == modules.end()) throw std::invalid_argument("unknown module '" + name + "'");
    return it->second;
}

const MapDef& Definitions::map(const std::string& name) const {
    auto it = maps.find(name);
    if (it == maps.end()) throw std::invalid_argument("unknown map '" + name + "'");
    return it->second;
}

const ComplexDef& Definitions::complex(const std::string& name) const {
    auto it = complexes.find(name);
    if (it == complexes.end()) throw std::invalid_argument("unknown complex '" + name + "'");
    return it->second;
}

const FunctorData& Definitions::functor(const std::string& name) const {
    auto it = functors.find(name);
    if (it == functors.end()) throw std::invalid_argument("unknown functor '" + name + "'");
    return it->second;
}

std::vector<ProjComplex> Definitions::candidate(const std::string& name) const {
    auto it = candidates.find(name);
    if (it == candidates.end()) throw std::invalid_argument("unknown candidate '" + name + "'");
    std::vector<ProjComplex> out;
    for (const auto& s : it->second.summands) out.push_back(*complex(s).proj);
    return out;
}

Definitions parse_definitions(const json& doc, std::optional<elem> prime) {
    Definitions d;
    if (prime) {
        if (!prime_ok(*prime)) throw ParseError("--prime", "expected an odd prime up to " + std::to_string(kMaxPrime));
        d.prime = *prime;
        d.prime_override = true;
    }
    Parser(d).run(doc);
    return d;
}

Definitions load_definitions(const std::string& path, std::optional<elem> prime) {
    std::ifstream in(path);
    if (!in) throw ParseError(path, "cannot open file");
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError(path + ": byte " + std::to_string(e.byte), "malformed JSON");
    }
    return parse_definitions(doc, prime);
}

json matrix_json(const Matrix& m) {
    json out = json::array();
    for (int r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (int c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
        out.push_back(row);
    }
    return out;
}

json element_json(const AlgPtr& a, const Vec& x) {
    json out = json::array();
    for (int b = 0; b < a->dim(); ++b) {
        if (x[b] == 0) continue;
        const BasisPath& bp = a->basis_path(b);
        json term{{"coeff", x[b]}};
        if (bp.arrows.empty()) {
            term["vertex"] = a->quiver().vertices[bp.src];
        } else {
            json p = json::array();
            for (int ar : bp.arrows) p.push_back(a->quiver().arrows[ar].name);
            term["path"] = p;
        }
        out.push_back(term);
    }
    return out;
}

json rep_json(const Rep& m) {
    json arrows = json::object();
    const Quiver& q = m.alg->quiver();
    for (int k = 0; k < q.num_arrows(); ++k)
        if (!m.mats[k].is_zero()) arrows[q.arrows[k].name] = matrix_json(m.mats[k]);
    return json{{"dims", m.dims}, {"arrows", arrows}};
}

json hom_json(const RepHom& f, const AlgPtr& a) {
    json at = json::object();
    for (std::size_t v = 0; v < f.at.size(); ++v)
        if (!f.at[v].is_zero()) at[a->quiver().vertices[v]] = matrix_json(f.at[v]);
    return at;
}

json proj_complex_json(const ProjComplex& c) {
    json terms = json::array(), diffs = json::array();
    for (const auto& t : c.verts) terms.push_back(verts_json(c.alg, t));
    for (const auto& d : c.diffs) diffs.push_back(projmap_json(c.alg, d));
    return json{{"projective", true}, {"lo", c.lo}, {"terms", terms}, {"diffs", diffs}};
}

json serialize(const Definitions& d) {
    json doc;
    doc["field"] = {{"prime", d.prime}};
    json algs = json::object();
    for (const auto& [n, a] : d.algebras) {
        auto der = d.derived.find(n);
        if (der != d.derived.end()) {
            algs[n] = {{"dual_numbers_of", der->second}};
            continue;
        }
        const Quiver& q = a->quiver();
        json arrows = json::array(), rels = json::array();
        for (const auto& ar : q.arrows)
            arrows.push_back({{"name", ar.name}, {"src", q.vertices[ar.src]}, {"tgt", q.vertices[ar.tgt]}});
        for (const auto& r : a->relations()) {
            json rel = json::array();
            for (const auto& t : r) {
                json p = json::array();
                for (int ar : t.path) p.push_back(q.arrows[ar].name);
                rel.push_back({{"coeff", t.coeff}, {"path", p}});
            }
            rels.push_back(rel);
        }
        algs[n] = {{"vertices", q.vertices}, {"arrows", arrows}, {"relations", rels}};
    }
    doc["algebras"] = algs;
    json mods = json::object();
    for (const auto& [n, m] : d.modules) {
        json j = rep_json(m);
        j["algebra"] = d.module_alg.at(n);
        mods[n] = j;
    }
    doc["modules"] = mods;
    json maps = json::object();
    for (const auto& [n, m] : d.maps)
        maps[n] = {{"from", m.from}, {"to", m.to}, {"at", hom_json(m.hom, d.modules.at(m.from).alg)}};
    doc["maps"] = maps;
    json cxs = json::object();
    for (const auto& [n, c] : d.complexes) {
        json j;
        if (c.proj) {
            j = proj_complex_json(*c.proj);
        } else {
            json terms = json::array(), diffs = json::array();
            for (const auto& t : c.c.terms) terms.push_back(rep_json(t));
            for (const auto& h : c.c.diffs) diffs.push_back(hom_json(h, c.c.alg));
            j = {{"lo", c.c.lo}, {"terms", terms}, {"diffs", diffs}};
        }
        j["algebra"] = d.complex_alg.at(n);
        cxs[n] = j;
    }
    doc["complexes"] = cxs;
    json fns = json::object();
    for (const auto& [n, f] : d.functors) {
        const Quiver& q = f.src->quiver();
        json ims = json::object(), ams = json::object();
        for (int v = 0; v < q.num_vertices(); ++v) ims[q.vertices[v]] = proj_complex_json(f.images[v]);
        for (int k = 0; k < q.num_arrows(); ++k) {
            json degs = json::object();
            for (const auto& [deg, m] : f.arrow_maps[k].maps)
                if (!is_zero(f.tgt, m)) degs[std::to_string(deg)] = projmap_json(f.tgt, m);
            if (!degs.empty()) ams[q.arrows[k].name] = degs;
        }
        fns[n] = {{"src", d.algebra_name(f.src)},
                  {"tgt", d.algebra_name(f.tgt)},
                  {"width", f.width},
                  {"images", ims},
                  {"arrow_maps", ams}};
    }
    doc["functors"] = fns;
    json cands = json::object();
    for (const auto& [n, c] : d.candidates) cands[n] = {{"algebra", c.algebra}, {"summands", c.summands}};
    doc["candidates"] = cands;
    if (!d.manifest.is_null()) doc["manifest"] = d.manifest;
    return doc;
}

std::string module_dot(const Rep& m, const std::string& name) {
    const Quiver& q = m.alg->quiver();
    auto node = [&](int v, int k) { return "v" + q.vertices[v] + "_" + std::to_string(k); };
    std::ostringstream out;
    out << "digraph \"" << name << "\" {\n";
    for (int v = 0; v < q.num_vertices(); ++v)
        for (int k = 0; k < m.dims[v]; ++k) out << "  " << node(v, k) << " [label=\"" << q.vertices[v] << "\"];\n";
    for (int a = 0; a < q.num_arrows(); ++a) {
        const Arrow& ar = q.arrows[a];
        const Matrix& x = m.mats[a];
        for (int i = 0; i < x.rows(); ++i)
            for (int j = 0; j < x.cols(); ++j) {
                if (x(i, j) == 0) continue;
                out << "  " << node(ar.src, j) << " -> " << node(ar.tgt, i) << " [label=\"" << ar.name;
                if (x(i, j) != 1) out << " " << x(i, j);
                out << "\"];\n";
            }
    }
    out << "}\n";
    return out.str();
}

}  // namespace sf
