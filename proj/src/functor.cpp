#include "stabfun/functor.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <tuple>

namespace sf {

namespace {

elem sign(int n, elem p) { return n % 2 == 0 ? 1 : p - 1; }

void place(ProjMap& big, const ProjMap& sub, int r0, int c0, const AlgPtr& alg, elem s) {
    for (std::size_t i = 0; i < sub.tgt.size(); ++i)
        for (std::size_t j = 0; j < sub.src.size(); ++j)
            big.e[r0 + i][c0 + j] = alg->add(big.e[r0 + i][c0 + j], alg->scale(sub.e[i][j], s));
}

ProjMap scalar_block(const AlgPtr& alg, const std::vector<int>& src, const std::vector<int>& tgt, const Matrix& m,
                     int v) {
    ProjMap f = zero_projmap(alg, src, tgt);
    for (int r = 0; r < m.rows(); ++r)
        for (int c = 0; c < m.cols(); ++c)
            if (m(r, c)) f.e[r][c] = alg->scale(alg->vertex_unit(v), m(r, c));
    return f;
}

// Chain maps for basis paths, cached by basis index.
class Mapper {
public:
    explicit Mapper(const FunctorData& f) : f_(f) {}

    ProjChainMap path(int b) {
        auto it = cache_.find(b);
        if (it != cache_.end()) return it->second;
        const BasisPath& bp = f_.src->basis_path(b);
        ProjChainMap out;
        if (bp.arrows.empty()) {
            out = proj_identity(f_.images[bp.src]);
        } else {
            const int a = bp.arrows.back();
            const Arrow& ar = f_.src->quiver().arrows[a];
            if (bp.prefix < 0 || f_.src->basis_path(bp.prefix).arrows.empty()) {
                out = f_.arrow_maps[a];
            } else {
                ProjChainMap pre = path(bp.prefix);
                out = proj_compose(pre, f_.arrow_maps[a], f_.images[ar.tgt], f_.images[ar.src], f_.images[bp.src]);
            }
        }
        cache_[b] = out;
        return out;
    }

    ProjChainMap element(const Vec& x, int u, int v) {
        const ProjComplex& tv = f_.images[v];
        const ProjComplex& tu = f_.images[u];
        ProjChainMap acc;
        for (int b : f_.src->paths_between(u, v)) {
            if (!x[b]) continue;
            acc = proj_add(acc, proj_scale(path(b), x[b], tv, tu), tv, tu);
        }
        return acc;
    }

private:
    const FunctorData& f_;
    std::map<int, ProjChainMap> cache_;
};

// Block offsets of the total complex: degree -> ((p, j, q) -> offset).
using Key = std::tuple<int, int, int>;
struct TotalLayout {
    std::map<int, std::vector<int>> verts;
    std::map<int, std::map<Key, int>> offset;
    int lo = 0, hi = -1;
};

TotalLayout total_layout(const FunctorData& f, const ProjComplex& c) {
    TotalLayout t;
    if (c.empty()) return t;
    int mn = 0, mx = 0;
    bool any = false;
    for (const auto& im : f.images) {
        if (im.empty()) continue;
        mn = any ? std::min(mn, im.lo) : im.lo;
        mx = any ? std::max(mx, im.hi()) : im.hi();
        any = true;
    }
    if (!any) return t;
    t.lo = c.lo + mn;
    t.hi = c.hi() + mx;
    for (int n = t.lo; n <= t.hi; ++n) {
        auto& vs = t.verts[n];
        for (int p = c.lo; p <= c.hi(); ++p) {
            const auto& cv = c.term(p);
            for (std::size_t j = 0; j < cv.size(); ++j) {
                const auto tv = f.images[cv[j]].term(n - p);
                if (tv.empty()) continue;
                t.offset[n][{p, int(j), n - p}] = int(vs.size());
                vs.insert(vs.end(), tv.begin(), tv.end());
            }
        }
    }
    return t;
}

}  // namespace

void FunctorData::validate() const {
    if (int(images.size()) != src->num_vertices()) throw std::invalid_argument("functor data: one image per vertex");
    if (int(arrow_maps.size()) != src->quiver().num_arrows())
        throw std::invalid_argument("functor data: one chain map per arrow");
    for (const auto& im : images) {
        if (!im.alg->same_as(*tgt)) throw std::invalid_argument("functor data: image over the wrong algebra");
        im.validate();
    }
    for (int a = 0; a < src->quiver().num_arrows(); ++a) {
        const Arrow& ar = src->quiver().arrows[a];
        if (!is_proj_chain_map(arrow_maps[a], images[ar.tgt], images[ar.src]))
            throw std::invalid_argument("functor data: arrow " + ar.name + " is not a chain map");
    }
    for (const auto& rel : src->relations()) {
        const Path& first = rel.front().path;
        const int u = src->quiver().arrows[first.front()].src, v = src->quiver().arrows[first.back()].tgt;
        ProjChainMap sum;
        for (const auto& term : rel) {
            ProjChainMap acc = proj_identity(images[v]);
            int cur = v;
            for (auto it = term.path.rbegin(); it != term.path.rend(); ++it) {
                const Arrow& ar = src->quiver().arrows[*it];
                acc = proj_compose(arrow_maps[*it], acc, images[v], images[cur], images[ar.src]);
                cur = ar.src;
            }
            long long c = term.coeff % (long long)tgt->prime();
            if (c < 0) c += tgt->prime();
            sum = proj_add(sum, proj_scale(acc, elem(c), images[v], images[u]), images[v], images[u]);
        }
        for (auto& [i, m] : sum.maps)
            if (!is_zero(tgt, m)) throw std::invalid_argument("functor data: a relation fails on the chain maps");
    }
}

FunctorData identity_functor(const AlgPtr& alg) {
    FunctorData f{"id", alg, alg, {}, {}, 0};
    for (int v = 0; v < alg->num_vertices(); ++v) f.images.push_back(proj_stalk(alg, {v}, 0));
    for (const auto& ar : alg->quiver().arrows) {
        ProjMap m = zero_projmap(alg, {ar.tgt}, {ar.src});
        m.e[0][0] = alg->reduce_path(ar.src, {alg->quiver().arrow(ar.name)});
        ProjChainMap c;
        c.maps[0] = m;
        f.arrow_maps.push_back(c);
    }
    return f;
}

FunctorData shift_down(const FunctorData& f, int n) {
    FunctorData g = f;
    g.name = f.name + "[-" + std::to_string(n) + "]";
    for (auto& im : g.images) im = proj_shift(im, -n);
    for (auto& am : g.arrow_maps) {
        ProjChainMap s;
        for (auto& [i, m] : am.maps) s.maps[i + n] = m;
        am = s;
    }
    g.width = f.width + n;
    return g;
}

FunctorData omega_functor(const AlgPtr& alg, int k) {
    if (k < 0) throw std::invalid_argument("omega_functor: negative count");
    FunctorData f = shift_down(identity_functor(alg), k);
    f.name = "omega" + std::to_string(k);
    return f;
}

ProjChainMap element_map(const FunctorData& f, const Vec& x, int u, int v) {
    Mapper m(f);
    return m.element(x, u, v);
}

ProjComplex apply(const FunctorData& f, const ProjComplex& c) {
    const AlgPtr& b = f.tgt;
    TotalLayout t = total_layout(f, c);
    ProjComplex out{b, t.lo, {}, {}};
    if (t.hi < t.lo) return ProjComplex{b, 0, {}, {}};
    Mapper mapper(f);
    const elem pr = b->prime();
    for (int n = t.lo; n <= t.hi; ++n) {
        out.verts.push_back(t.verts[n]);
        if (n == t.hi) break;
        ProjMap d = zero_projmap(b, t.verts[n], t.verts[n + 1]);
        for (auto& [key, off] : t.offset[n]) {
            auto [p, j, q] = key;
            const int vj = c.term(p)[j];
            const ProjComplex& tj = f.images[vj];
            auto vert = t.offset[n + 1].find({p, j, q + 1});
            if (vert != t.offset[n + 1].end()) place(d, tj.diff(q), vert->second, off, b, sign(p, pr));
            if (p + 1 > c.hi()) continue;
            const ProjMap dc = c.diff(p);
            for (std::size_t k = 0; k < dc.tgt.size(); ++k) {
                if (f.src->is_zero(dc.e[k][j])) continue;
                auto hor = t.offset[n + 1].find({p + 1, int(k), q});
                if (hor == t.offset[n + 1].end()) continue;
                ProjChainMap em = mapper.element(dc.e[k][j], dc.tgt[k], vj);
                place(d, pmap_at(em, tj, f.images[dc.tgt[k]], q), hor->second, off, b, 1);
            }
        }
        out.diffs.push_back(d);
    }
    return proj_trim(out);
}

ProjChainMap apply(const FunctorData& f, const ProjChainMap& g, const ProjComplex& x, const ProjComplex& y) {
    const AlgPtr& b = f.tgt;
    TotalLayout tx = total_layout(f, x), ty = total_layout(f, y);
    Mapper mapper(f);
    ProjChainMap out;
    for (auto& [n, blocks] : tx.offset) {
        if (!ty.verts.count(n) || ty.verts[n].empty() || tx.verts[n].empty()) continue;
        ProjMap m = zero_projmap(b, tx.verts[n], ty.verts[n]);
        bool nz = false;
        for (auto& [key, off] : blocks) {
            auto [p, j, q] = key;
            auto gp = g.maps.find(p);
            if (gp == g.maps.end()) continue;
            const int vj = x.term(p)[j];
            for (std::size_t k = 0; k < gp->second.tgt.size(); ++k) {
                if (f.src->is_zero(gp->second.e[k][j])) continue;
                auto it = ty.offset[n].find({p, int(k), q});
                if (it == ty.offset[n].end()) continue;
                const int wk = y.term(p)[k];
                ProjChainMap em = mapper.element(gp->second.e[k][j], wk, vj);
                place(m, pmap_at(em, f.images[vj], f.images[wk], q), it->second, off, b, 1);
                nz = true;
            }
        }
        if (nz) out.maps[n] = m;
    }
    return out;
}

ProjChainMap apply_transformation(const FunctorData& f, const FunctorData& g, const std::vector<ProjChainMap>& eta,
                                  const ProjComplex& c) {
    const AlgPtr& b = f.tgt;
    TotalLayout tx = total_layout(f, c), ty = total_layout(g, c);
    ProjChainMap out;
    for (auto& [n, blocks] : tx.offset) {
        if (!ty.verts.count(n) || ty.verts[n].empty() || tx.verts[n].empty()) continue;
        ProjMap m = zero_projmap(b, tx.verts[n], ty.verts[n]);
        for (auto& [key, off] : blocks) {
            auto [p, j, q] = key;
            auto it = ty.offset[n].find(key);
            if (it == ty.offset[n].end()) continue;
            const int vj = c.term(p)[j];
            place(m, pmap_at(eta[vj], f.images[vj], g.images[vj], q), it->second, off, b, 1);
        }
        out.maps[n] = m;
    }
    return out;
}

PaddedComplex pad_complex(const ProjComplex& t, int v) {
    const AlgPtr& b = t.alg;
    const int lo = t.empty() ? 0 : std::min(t.lo, 0), hi = t.empty() ? 1 : std::max(t.hi(), 1);
    PaddedComplex out{ProjComplex{b, lo, {}, {}}, {}, {}};
    for (int i = lo; i <= hi; ++i) {
        std::vector<int> vs = t.term(i);
        const int base = int(vs.size());
        if (i == 0 || i == 1) vs.push_back(v);
        out.c.verts.push_back(vs);
        if (base > 0) {
            ProjMap a = zero_projmap(b, t.term(i), vs), c = zero_projmap(b, vs, t.term(i));
            for (int k = 0; k < base; ++k) {
                a.e[k][k] = b->vertex_unit(vs[k]);
                c.e[k][k] = b->vertex_unit(vs[k]);
            }
            out.incl.maps[i] = a;
            out.proj.maps[i] = c;
        }
    }
    for (int i = lo; i < hi; ++i) {
        ProjMap d = zero_projmap(b, out.c.verts[i - lo], out.c.verts[i + 1 - lo]);
        if (i >= t.lo && i < t.hi()) place(d, t.diff(i), 0, 0, b, 1);
        if (i == 0) d.e[d.tgt.size() - 1][d.src.size() - 1] = b->vertex_unit(v);
        out.c.diffs.push_back(d);
    }
    return out;
}

PaddedFunctor padded_functor(const FunctorData& f, int v) {
    const AlgPtr& b = f.tgt;
    PaddedFunctor out;
    out.g = f;
    out.g.name = f.name + "+pad";
    out.g.width = std::max(f.width, 1);
    for (std::size_t w = 0; w < f.images.size(); ++w) {
        PaddedComplex pc = pad_complex(f.images[w], v);
        out.g.images[w] = pc.c;
        out.incl.push_back(pc.incl);
        out.proj.push_back(pc.proj);
    }
    for (int a = 0; a < f.src->quiver().num_arrows(); ++a) {
        const Arrow& ar = f.src->quiver().arrows[a];
        const ProjComplex &ts = out.g.images[ar.src], &tt = out.g.images[ar.tgt];
        ProjChainMap m;
        for (auto& [i, pm] : f.arrow_maps[a].maps) {
            ProjMap big = zero_projmap(b, tt.term(i), ts.term(i));
            place(big, pm, 0, 0, b, 1);
            m.maps[i] = big;
        }
        out.g.arrow_maps[a] = m;
    }
    return out;
}

ModuleImage apply_to_module(const FunctorData& f, const Rep& m, int window_lo) {
    ModuleImage out;
    out.res = resolve_module_complex(m, window_lo);
    out.fx = apply(f, out.res.p);
    return out;
}

MapImage apply_to_map(const FunctorData& f, const RepHom& phi, const Rep& x, const Rep& y, int window_lo) {
    MapImage out;
    out.x = apply_to_module(f, x, window_lo);
    out.y = apply_to_module(f, y, window_lo);
    ChainMap fm;
    Complex sx = stalk(x), sy = stalk(y);
    if (!out.x.res.p.empty()) fm.maps[0] = compose(phi, map_at(out.x.res.rho, materialize(out.x.res.p), sx, 0));
    if (!out.x.res.p.empty() && !out.y.res.p.empty()) out.lift = lift_through(out.x.res.p, fm, sy, out.y.res);
    out.image = apply(f, out.lift, out.x.res.p, out.y.res.p);
    return out;
}

FunctorData compose(const FunctorData& f, const FunctorData& g) {
    if (!f.tgt->same_as(*g.src)) throw std::invalid_argument("compose: algebra mismatch");
    FunctorData h{g.name + "*" + f.name, f.src, g.tgt, {}, {}, 0};
    for (const auto& im : f.images) {
        h.images.push_back(apply(g, im));
        if (!h.images.back().empty()) h.width = std::max(h.width, h.images.back().hi());
    }
    for (int a = 0; a < f.src->quiver().num_arrows(); ++a) {
        const Arrow& ar = f.src->quiver().arrows[a];
        h.arrow_maps.push_back(apply(g, f.arrow_maps[a], f.images[ar.tgt], f.images[ar.src]));
    }
    return h;
}

bool image_in_range(const ProjComplex& t, int width) {
    ProjComplex raw = proj_trim(t);
    if (raw.empty()) return true;
    if (raw.hi() > width) return false;
    if (raw.lo >= 0) return true;
    ProjComplex m = proj_trim(minimize(raw).p);
    return m.empty() || m.lo >= 0;
}

NonNegReport is_non_negative(const FunctorData& f) {
    NonNegReport r;
    for (std::size_t v = 0; v < f.images.size(); ++v) {
        if (!image_in_range(f.images[v], f.width)) {
            r.degrees = false;
            r.reason = "image of vertex " + std::to_string(v) + " leaves [0, width]";
        }
    }
    try {
        f.validate();
    } catch (const std::exception& e) {
        r.relations = false;
        r.reason = e.what();
    }
    if (r.degrees && r.relations) {
        const int w = -2 * f.width - 4;
        for (int v = 0; v < f.src->num_vertices() && r.simples; ++v) {
            Complex c = materialize(apply_to_module(f, simple(f.src, v), w).fx);
            for (int i = w + f.width + 1; i < 0; ++i)
                for (int d : homology_dims(c, i))
                    if (d) {
                        r.simples = false;
                        r.reason = "negative homology on simple " + std::to_string(v);
                    }
        }
    }
    r.ok = r.degrees && r.relations && r.simples;
    return r;
}

Vec transport(const AlgPtr& from, const AlgPtr& to, const Vec& x) {
    Vec out = to->zero();
    for (int b = 0; b < from->dim(); ++b) {
        if (!x[b]) continue;
        const BasisPath& bp = from->basis_path(b);
        const int src = to->quiver().vertex(from->quiver().vertices[bp.src]);
        Path p;
        for (int a : bp.arrows) p.push_back(to->quiver().arrow(from->quiver().arrows[a].name));
        out = to->add(out, to->scale(to->reduce_path(src, p), x[b]));
    }
    return out;
}

namespace {

std::vector<int> move_verts(const AlgPtr& from, const AlgPtr& to, const std::vector<int>& vs) {
    std::vector<int> out;
    for (int v : vs) out.push_back(to->quiver().vertex(from->quiver().vertices[v]));
    return out;
}

ProjMap move_map(const AlgPtr& from, const AlgPtr& to, const ProjMap& m) {
    ProjMap out{move_verts(from, to, m.src), move_verts(from, to, m.tgt), {}};
    for (const auto& row : m.e) {
        std::vector<Vec> r;
        for (const auto& x : row) r.push_back(transport(from, to, x));
        out.e.push_back(std::move(r));
    }
    return out;
}

ProjComplex move_complex(const AlgPtr& from, const AlgPtr& to, const ProjComplex& c) {
    ProjComplex out{to, c.lo, {}, {}};
    for (const auto& v : c.verts) out.verts.push_back(move_verts(from, to, v));
    for (const auto& d : c.diffs) out.diffs.push_back(move_map(from, to, d));
    return out;
}

}  // namespace

FunctorData dual_numbers_functor(const FunctorData& f, const AlgPtr& src_eps, const AlgPtr& tgt_eps) {
    FunctorData g{"k[eps]*" + f.name, src_eps, tgt_eps, {}, {}, f.width};
    g.images.resize(src_eps->num_vertices());
    for (int v = 0; v < f.src->num_vertices(); ++v)
        g.images[src_eps->quiver().vertex(f.src->quiver().vertices[v])] = move_complex(f.tgt, tgt_eps, f.images[v]);
    for (const auto& ar : src_eps->quiver().arrows) {
        ProjChainMap cm;
        if (ar.src == ar.tgt && ar.name.rfind("eps", 0) == 0 && ar.name.substr(3) == src_eps->quiver().vertices[ar.src]) {
            const ProjComplex& t = g.images[ar.src];
            for (int i = t.lo; i <= t.hi(); ++i) {
                const auto& vs = t.term(i);
                ProjMap m = zero_projmap(tgt_eps, vs, vs);
                for (std::size_t k = 0; k < vs.size(); ++k) {
                    const std::string loop = "eps" + tgt_eps->quiver().vertices[vs[k]];
                    m.e[k][k] = tgt_eps->reduce_path(vs[k], {tgt_eps->quiver().arrow(loop)});
                }
                if (!vs.empty()) cm.maps[i] = m;
            }
        } else {
            const ProjChainMap& base = f.arrow_maps[f.src->quiver().arrow(ar.name)];
            for (auto& [i, m] : base.maps) cm.maps[i] = move_map(f.tgt, tgt_eps, m);
        }
        g.arrow_maps.push_back(cm);
    }
    return g;
}

StandardResolution standard_resolution(const Complex& c) {
    const AlgPtr& b = c.alg;
    if (!b->relations().empty()) throw std::invalid_argument("standard resolution needs a path algebra without relations");
    const Quiver& q = b->quiver();
    const elem pr = b->prime();
    // generator lists of the two resolution terms of module degree m
    auto p0 = [&](const Rep& x) {
        std::vector<int> vs;
        for (int v = 0; v < q.num_vertices(); ++v) vs.insert(vs.end(), x.dims[v], v);
        return vs;
    };
    auto p1 = [&](const Rep& x) {
        std::vector<int> vs;
        for (const auto& a : q.arrows) vs.insert(vs.end(), x.dims[a.src], a.tgt);
        return vs;
    };
    StandardResolution out;
    out.p = ProjComplex{b, c.lo - 1, {}, {}};
    if (c.empty()) {
        out.p.lo = 0;
        return out;
    }
    // total degree n holds P0(c^n) then P1(c^{n+1})
    for (int n = c.lo - 1; n <= c.hi(); ++n) {
        Rep xn = c.term(n), xn1 = c.term(n + 1);
        auto a0 = p0(xn), a1 = p1(xn1);
        std::vector<int> vs = a0;
        vs.insert(vs.end(), a1.begin(), a1.end());
        out.p.verts.push_back(vs);
        if (n == c.hi()) break;
        Rep xn2 = c.term(n + 2);
        auto b0 = p0(xn1), b1 = p1(xn2);
        std::vector<int> ts = b0;
        ts.insert(ts.end(), b1.begin(), b1.end());
        ProjMap d = zero_projmap(b, vs, ts);
        RepHom dn = c.diff(n), dn1 = c.diff(n + 1);
        // horizontal on P0: generator (v, i) -> sum_k d(v)_{ki} (v, k)
        int ro = 0, co = 0;
        for (int v = 0; v < q.num_vertices(); ++v) {
            if (xn.dims[v] && xn1.dims[v]) place(d, scalar_block(b, std::vector<int>(xn.dims[v], v), std::vector<int>(xn1.dims[v], v), dn.at[v], v), ro, co, b, 1);
            ro += xn1.dims[v];
            co += xn.dims[v];
        }
        // horizontal on P1
        ro = int(b0.size());
        co = int(a0.size());
        for (const auto& a : q.arrows) {
            if (xn1.dims[a.src] && xn2.dims[a.src])
                place(d, scalar_block(b, std::vector<int>(xn1.dims[a.src], a.tgt), std::vector<int>(xn2.dims[a.src], a.tgt), dn1.at[a.src], a.tgt), ro, co, b, 1);
            ro += xn2.dims[a.src];
            co += xn1.dims[a.src];
        }
        // vertical P1(c^{n+1}) -> P0(c^{n+1}) with sign (-1)^{n+1}
        const elem sg = sign(n + 1, pr);
        std::vector<int> off0(q.num_vertices(), 0);
        for (int v = 1; v < q.num_vertices(); ++v) off0[v] = off0[v - 1] + xn1.dims[v - 1];
        co = int(a0.size());
        for (int ai = 0; ai < q.num_arrows(); ++ai) {
            const Arrow& a = q.arrows[ai];
            const Matrix& ma = xn1.mats[ai];
            for (int i = 0; i < xn1.dims[a.src]; ++i, ++co) {
                Vec& up = d.e[off0[a.src] + i][co];
                up = b->add(up, b->scale(b->reduce_path(a.src, {ai}), sg));
                for (int k = 0; k < xn1.dims[a.tgt]; ++k) {
                    if (!ma(k, i)) continue;
                    Vec& dn_ = d.e[off0[a.tgt] + k][co];
                    dn_ = b->add(dn_, b->scale(b->vertex_unit(a.tgt), mul_mod(neg_mod(sg, pr), ma(k, i), pr)));
                }
            }
        }
        out.p.diffs.push_back(d);
    }
    for (int n = c.lo; n <= c.hi(); ++n) {
        Rep xn = c.term(n);
        const auto& vs = out.p.term(n);
        std::vector<std::vector<elem>> gens;
        for (int v = 0; v < q.num_vertices(); ++v)
            for (int i = 0; i < xn.dims[v]; ++i) {
                std::vector<elem> g(xn.dims[v], 0);
                g[i] = 1;
                gens.push_back(g);
            }
        for (std::size_t j = gens.size(); j < vs.size(); ++j) gens.push_back(std::vector<elem>(xn.dims[vs[j]], 0));
        out.aug.maps[n] = hom_from_generators(xn, vs, gens);
    }
    out.p = proj_trim(out.p);
    return out;
}

ProjChainMap standard_resolution_map(const ChainMap& f, const Complex& x, const Complex& y) {
    const AlgPtr& b = x.alg;
    const Quiver& q = b->quiver();
    StandardResolution rx = standard_resolution(x), ry = standard_resolution(y);
    ProjChainMap out;
    for (int n = rx.p.lo; n <= rx.p.hi(); ++n) {
        const auto& vs = rx.p.term(n);
        const auto& ts = ry.p.term(n);
        if (vs.empty() || ts.empty()) continue;
        ProjMap m = zero_projmap(b, vs, ts);
        RepHom fn = map_at(f, x, y, n), fn1 = map_at(f, x, y, n + 1);
        Rep xn = x.term(n), yn = y.term(n), xn1 = x.term(n + 1), yn1 = y.term(n + 1);
        int ro = 0, co = 0;
        for (int v = 0; v < q.num_vertices(); ++v) {
            if (xn.dims[v] && yn.dims[v]) place(m, scalar_block(b, std::vector<int>(xn.dims[v], v), std::vector<int>(yn.dims[v], v), fn.at[v], v), ro, co, b, 1);
            ro += yn.dims[v];
            co += xn.dims[v];
        }
        for (const auto& a : q.arrows) {
            if (xn1.dims[a.src] && yn1.dims[a.src])
                place(m, scalar_block(b, std::vector<int>(xn1.dims[a.src], a.tgt), std::vector<int>(yn1.dims[a.src], a.tgt), fn1.at[a.src], a.tgt), ro, co, b, 1);
            ro += yn1.dims[a.src];
            co += xn1.dims[a.src];
        }
        out.maps[n] = m;
    }
    return out;
}

Complex hom_complex(const FunctorData& f, int v) {
    const AlgPtr& a = f.tgt;
    const AlgPtr& b = f.src;
    const elem pr = a->prime();
    Rep pv = projective(a, v);
    auto pm = path_mats(pv);
    const int nb = b->num_vertices();
    int lo = 0;
    for (const auto& im : f.images)
        if (!im.empty()) lo = std::min(lo, -im.hi());
    Complex c{b, lo, {}, {}};
    for (int m = lo; m <= 0; ++m) {
        Rep x = zero_rep(b);
        for (int w = 0; w < nb; ++w) x.dims[w] = hom_proj_dim(pv, f.images[w].term(-m));
        for (int ai = 0; ai < b->quiver().num_arrows(); ++ai) {
            const Arrow& ar = b->quiver().arrows[ai];
            const ProjMap g = pmap_at(f.arrow_maps[ai], f.images[ar.tgt], f.images[ar.src], -m);
            x.mats[ai] = precompose_matrix(a, pv, pm, g);
        }
        x.validate();
        c.terms.push_back(x);
    }
    for (int m = lo; m < 0; ++m) {
        RepHom d;
        const elem sg = neg_mod(sign(m, pr), pr);
        for (int w = 0; w < nb; ++w) d.at.push_back(scaled(precompose_matrix(a, pv, pm, f.images[w].diff(-m - 1)), sg));
        c.diffs.push_back(d);
    }
    c.validate();
    return c;
}

FunctorData hom_functor(const FunctorData& f) {
    const AlgPtr& a = f.tgt;
    FunctorData g{"Hom(T,-)", f.tgt, f.src, {}, {}, 0};
    std::vector<Complex> hc;
    for (int v = 0; v < a->num_vertices(); ++v) {
        hc.push_back(hom_complex(f, v));
        g.images.push_back(standard_resolution(hc.back()).p);
    }
    for (int ai = 0; ai < a->quiver().num_arrows(); ++ai) {
        const Arrow& ar = a->quiver().arrows[ai];
        ProjMap post = zero_projmap(a, {ar.tgt}, {ar.src});
        post.e[0][0] = a->reduce_path(ar.src, {ai});
        RepHom ph = to_hom(a, post);
        const Complex& x = hc[ar.tgt];
        const Complex& y = hc[ar.src];
        ChainMap cm;
        for (int m = x.lo; m <= x.hi(); ++m) {
            RepHom h;
            for (int w = 0; w < f.src->num_vertices(); ++w) {
                const auto& vs = f.images[w].term(-m);
                Matrix blk(y.term(m).dims[w], x.term(m).dims[w], a->prime());
                int r = 0, c = 0;
                for (int u : vs) {
                    put_block(blk, r, c, ph.at[u]);
                    r += ph.at[u].rows();
                    c += ph.at[u].cols();
                }
                h.at.push_back(blk);
            }
            cm.maps[m] = h;
        }
        g.arrow_maps.push_back(standard_resolution_map(cm, x, y));
    }
    return g;
}

namespace {

// Hom_K(p, q[n]) with a fixed basis of cycle representatives.
struct KSpace {
    ProjComplex p, q;
    int n = 0;
    HomKProj h;
    Matrix basis;
    Matrix full;  // [basis | boundaries]

    KSpace(const ProjComplex& p_, const ProjComplex& q_, int n_) : p(p_), q(q_), n(n_) {
        Complex mq = materialize(q);
        h = hom_K_proj(p, mq, n);
        const elem pr = p.alg->prime();
        if (h.cdim == 0) {
            basis = Matrix(0, 0, pr);
            full = Matrix(0, 0, pr);
            return;
        }
        Matrix bd = h.boundaries.cols() ? h.boundaries : Matrix(h.cdim, 0, pr);
        basis = select_cols(h.cycles, extending_cols(bd, h.cycles));
        full = hcat(basis, bd);
    }
    int dim() const { return basis.cols(); }

    ProjChainMap map(const std::vector<elem>& col) const {
        ProjChainMap g;
        const AlgPtr& alg = p.alg;
        Complex mq = materialize(q);
        for (auto [i, off] : h.layout) {
            const auto& vs = p.term(i);
            Rep yi = mq.term(i + n);
            std::vector<std::vector<elem>> cols;
            int r = off;
            for (int v : vs) {
                cols.emplace_back(col.begin() + r, col.begin() + r + yi.dims[v]);
                r += yi.dims[v];
            }
            g.maps[i] = projmap_from_columns(alg, vs, q.term(i + n), cols);
        }
        return g;
    }
    ProjChainMap basis_map(int k) const { return map(basis.col(k)); }

    std::vector<elem> column(const ProjChainMap& g) const {
        std::vector<elem> col(h.cdim, 0);
        const AlgPtr& alg = p.alg;
        for (auto [i, off] : h.layout) {
            auto it = g.maps.find(i);
            if (it == g.maps.end()) continue;
            RepHom f = to_hom(alg, it->second);
            const auto& vs = p.term(i);
            int r = off;
            for (std::size_t j = 0; j < vs.size(); ++j) {
                auto c = f.at[vs[j]].col(generator_position(alg, vs, int(j)));
                std::copy(c.begin(), c.end(), col.begin() + r);
                r += int(c.size());
            }
        }
        return col;
    }

    std::vector<elem> coords(const ProjChainMap& g) const {
        if (dim() == 0) return {};
        auto s = solve(full, Matrix::column(column(g), p.alg->prime()));
        if (!s) throw std::logic_error("hom_K coordinates: not a cycle");
        std::vector<elem> out(dim());
        for (int k = 0; k < dim(); ++k) out[k] = s->at(k, 0);
        return out;
    }
};

}  // namespace

std::vector<ProjChainMap> hom_K_basis(const ProjComplex& p, const ProjComplex& q, int n) {
    KSpace ks(p, q, n);
    std::vector<ProjChainMap> out;
    for (int k = 0; k < ks.dim(); ++k) out.push_back(ks.basis_map(k));
    return out;
}

bool is_null_homotopic(const ProjChainMap& g, const ProjComplex& p, const ProjComplex& q) {
    KSpace ks(p, q, 0);
    for (elem c : ks.coords(g))
        if (c) return false;
    return true;
}

namespace {

std::pair<int, int> support(const ProjComplex& c) {
    ProjComplex t = proj_trim(c);
    return {t.lo, t.hi()};
}

// P_v[-d] is a homotopy summand of the minimal complex x.
bool has_projective_summand(const ProjComplex& x, int v) {
    const AlgPtr& alg = x.alg;
    Rep pv = projective(alg, v);
    auto pm = path_mats(pv);
    Complex mx = materialize(x);
    const int e = alg->local_index(alg->trivial(v));
    for (int d = x.lo; d <= x.hi(); ++d) {
        const auto& vs = x.term(d);
        if (std::find(vs.begin(), vs.end(), v) == vs.end()) continue;
        // i: P_v -> x^d cycles are ker d^d at v
        Matrix ins = nullspace(mx.diff(d).at[v]);
        if (ins.cols() == 0) continue;
        // p: x^d -> P_v with p d^{d-1} = 0, in generator coordinates of Hom(x^d, P_v)
        Matrix pre = precompose_matrix(alg, pv, pm, x.diff(d - 1));
        Matrix outs = nullspace(pre);
        for (int a = 0; a < outs.cols(); ++a) {
            std::vector<std::vector<elem>> cols;
            int r = 0;
            auto col = outs.col(a);
            for (int w : vs) {
                cols.emplace_back(col.begin() + r, col.begin() + r + pv.dims[w]);
                r += pv.dims[w];
            }
            RepHom ph = to_hom(alg, projmap_from_columns(alg, vs, {v}, cols));
            Matrix form = ph.at[v] * ins;
            for (int k = 0; k < form.cols(); ++k)
                if (form.at(e, k)) return true;
        }
    }
    return false;
}

}  // namespace

TiltingReport check_tilting(const std::vector<ProjComplex>& summands, int search_depth) {
    TiltingReport r;
    if (summands.empty()) return r;
    const AlgPtr& alg = summands.front().alg;
    for (std::size_t i = 0; i < summands.size(); ++i)
        for (std::size_t j = 0; j < summands.size(); ++j) {
            auto [li, hi] = support(summands[i]);
            auto [lj, hj] = support(summands[j]);
            for (int n = lj - hi; n <= hj - li; ++n) {
                if (n == 0) continue;
                int d = hom_K(summands[i], summands[j], n);
                if (d) {
                    r.self_orthogonal = false;
                    r.failures.push_back("Hom(T" + std::to_string(i) + ", T" + std::to_string(j) + "[" +
                                         std::to_string(n) + "]) has dimension " + std::to_string(d));
                }
            }
        }
    std::vector<ProjComplex> objects;
    for (const auto& s : summands) objects.push_back(minimize(s).p);
    auto reached = [&] {
        for (int v = 0; v < alg->num_vertices(); ++v) {
            bool ok = false;
            for (const auto& o : objects)
                if (has_projective_summand(o, v)) {
                    ok = true;
                    break;
                }
            if (!ok) return false;
        }
        return true;
    };
    constexpr std::size_t kMaxObjects = 48;
    constexpr int kMaxRank = 16;
    for (int round = 0; round <= search_depth; ++round) {
        r.rounds = round;
        if (reached()) {
            r.generates = Generation::Yes;
            return r;
        }
        if (round == search_depth) break;
        std::vector<ProjComplex> fresh;
        for (std::size_t i = 0; i < objects.size(); ++i)
            for (std::size_t j = 0; j < objects.size(); ++j) {
                auto [li, hi] = support(objects[i]);
                auto [lj, hj] = support(objects[j]);
                for (int n = lj - hi; n <= hj - li; ++n) {
                    ProjComplex tgt = proj_shift(objects[j], n);
                    for (const auto& g : hom_K_basis(objects[i], objects[j], n)) {
                        ProjComplex c = minimize(proj_cone(g, objects[i], tgt).c).p;
                        if (c.rank() == 0 || c.rank() > kMaxRank) continue;
                        fresh.push_back(c);
                        if (objects.size() + fresh.size() >= kMaxObjects) break;
                    }
                }
            }
        objects.insert(objects.end(), fresh.begin(), fresh.end());
        if (objects.size() > kMaxObjects) objects.resize(kMaxObjects);
    }
    return r;
}

namespace {

// Scalar part of a local algebra element acting by left multiplication.
std::optional<elem> local_scalar(const Matrix& l) {
    const int d = l.rows();
    const elem p = l.prime();
    auto nilpotent_shift = [&](elem lam) {
        Matrix s = l;
        for (int i = 0; i < d; ++i) s.at(i, i) = sub_mod(s.at(i, i), lam, p);
        Matrix pw = s;
        for (int k = 1; k < d; ++k) pw = pw * s;
        return pw.is_zero();
    };
    if (d % int(p) != 0) {
        elem tr = 0;
        for (int i = 0; i < d; ++i) tr = add_mod(tr, l(i, i), p);
        const elem lam = mul_mod(tr, inv_mod(elem(d % int(p)), p), p);
        if (nilpotent_shift(lam)) return lam;
        return std::nullopt;
    }
    for (elem lam = 0; lam < p; ++lam)
        if (nilpotent_shift(lam)) return lam;
    return std::nullopt;
}

}  // namespace

EndoPresentation endomorphism_presentation(const std::vector<ProjComplex>& summands, elem pr) {
    EndoPresentation out;
    const int m0 = int(summands.size());
    std::vector<ProjComplex> t;
    for (const auto& s : summands) t.push_back(minimize(s).p);
    // spaces[a][b] = Hom_K(T_a, T_b)
    std::vector<std::vector<KSpace>> spaces;
    for (int a = 0; a < m0; ++a) {
        std::vector<KSpace> row;
        for (int b = 0; b < m0; ++b) row.emplace_back(t[a], t[b], 0);
        spaces.push_back(std::move(row));
    }
    auto comp = [&](const ProjChainMap& g, const ProjChainMap& f, int a, int b, int c) {
        return proj_compose(g, f, t[a], t[b], t[c]);
    };
    // scalar character on each local endomorphism ring
    std::vector<std::vector<elem>> chi(m0);
    for (int a = 0; a < m0; ++a) {
        const KSpace& e = spaces[a][a];
        for (int k = 0; k < e.dim(); ++k) {
            Matrix l(e.dim(), e.dim(), pr);
            for (int c = 0; c < e.dim(); ++c) {
                auto co = e.coords(comp(e.basis_map(k), e.basis_map(c), a, a, a));
                for (int r = 0; r < e.dim(); ++r) l.at(r, c) = co[r];
            }
            auto lam = local_scalar(l);
            if (!lam) throw std::invalid_argument("endomorphism presentation: summand " + std::to_string(a) + " is decomposable");
            chi[a].push_back(*lam);
        }
    }
    // drop summands isomorphic to earlier ones
    std::vector<int> keep;
    for (int a = 0; a < m0; ++a) {
        bool dup = false;
        for (int b : keep) {
            for (int i = 0; i < spaces[a][b].dim() && !dup; ++i)
                for (int j = 0; j < spaces[b][a].dim() && !dup; ++j) {
                    auto co = spaces[a][a].coords(comp(spaces[b][a].basis_map(j), spaces[a][b].basis_map(i), a, b, a));
                    elem s = 0;
                    for (std::size_t k = 0; k < co.size(); ++k) s = add_mod(s, mul_mod(co[k], chi[a][k], pr), pr);
                    if (s) dup = true;
                }
            if (dup) break;
        }
        if (dup)
            out.basic = false;
        else
            keep.push_back(a);
    }
    const int m = int(keep.size());
    // radical bases, as coordinate columns
    auto rad_basis = [&](int a, int b) {
        const KSpace& s = spaces[a][b];
        if (a != b) return Matrix::identity(s.dim(), pr);
        Matrix c(1, s.dim(), pr);
        for (int k = 0; k < s.dim(); ++k) c.at(0, k) = chi[a][k];
        return nullspace(c);
    };
    auto to_map = [&](int a, int b, const std::vector<elem>& co) {
        const KSpace& s = spaces[a][b];
        std::vector<elem> col(s.h.cdim, 0);
        for (int k = 0; k < s.dim(); ++k)
            if (co[k])
                for (int r = 0; r < s.h.cdim; ++r) col[r] = add_mod(col[r], mul_mod(co[k], s.basis(r, k), pr), pr);
        return s.map(col);
    };
    out.arrows.assign(m, std::vector<int>(m, 0));
    out.arrow_maps.assign(m, std::vector<std::vector<ProjChainMap>>(m));
    for (int ia = 0; ia < m; ++ia)
        for (int ib = 0; ib < m; ++ib) {
            const int a = keep[ia], b = keep[ib];
            out.dim += spaces[a][b].dim();
            Matrix rad = rad_basis(a, b);
            Matrix sq(spaces[a][b].dim(), 0, pr);
            for (int ic = 0; ic < m; ++ic) {
                const int c = keep[ic];
                Matrix r1 = rad_basis(a, c), r2 = rad_basis(c, b);
                for (int x = 0; x < r1.cols(); ++x)
                    for (int y = 0; y < r2.cols(); ++y) {
                        auto co = spaces[a][b].coords(comp(to_map(c, b, r2.col(y)), to_map(a, c, r1.col(x)), a, c, b));
                        sq = hcat(sq, Matrix::column(co, pr));
                    }
            }
            for (int k : extending_cols(sq, rad)) {
                // map T_a -> T_b is an arrow b -> a
                out.arrows[ib][ia] += 1;
                out.arrow_maps[ib][ia].push_back(to_map(a, b, rad.col(k)));
            }
        }
    // quiver and homogeneous relations
    Quiver q;
    for (int i = 0; i < m; ++i) q.vertices.push_back(std::to_string(i));
    struct Arr {
        int src, tgt;
        ProjChainMap map;  // T_tgt -> T_src
    };
    std::vector<Arr> arrs;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            for (std::size_t k = 0; k < out.arrow_maps[i][j].size(); ++k) {
                q.arrows.push_back({"x" + std::to_string(i) + "_" + std::to_string(j) + (k ? "_" + std::to_string(k) : ""), i, j});
                arrs.push_back({i, j, out.arrow_maps[i][j][k]});
            }
    struct Walk {
        Path path;
        int src, tgt;
        ProjChainMap map;  // T_tgt -> T_src
    };
    std::vector<Walk> cur;
    for (std::size_t k = 0; k < arrs.size(); ++k) cur.push_back({{int(k)}, arrs[k].src, arrs[k].tgt, arrs[k].map});
    std::vector<Relation> rels;
    for (int len = 2; len <= out.dim + 1 && !cur.empty(); ++len) {
        std::vector<Walk> next;
        for (const auto& w : cur)
            for (std::size_t k = 0; k < arrs.size(); ++k) {
                if (arrs[k].src != w.tgt) continue;
                Walk n{w.path, w.src, arrs[k].tgt, {}};
                n.path.push_back(int(k));
                n.map = comp(w.map, arrs[k].map, keep[arrs[k].tgt], keep[w.tgt], keep[w.src]);
                next.push_back(std::move(n));
            }
        std::vector<Walk> alive;
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) {
                std::vector<const Walk*> ws;
                for (const auto& w : next)
                    if (w.src == i && w.tgt == j) ws.push_back(&w);
                if (ws.empty()) continue;
                const KSpace& s = spaces[keep[j]][keep[i]];
                Matrix img(s.dim(), int(ws.size()), pr);
                for (std::size_t c = 0; c < ws.size(); ++c) {
                    auto co = s.coords(ws[c]->map);
                    for (int r = 0; r < s.dim(); ++r) img.at(r, int(c)) = co[r];
                }
                Matrix ker = nullspace(img);
                for (int c = 0; c < ker.cols(); ++c) {
                    Relation rel;
                    for (int r = 0; r < ker.rows(); ++r)
                        if (ker.at(r, c)) rel.push_back({(long long)ker.at(r, c), ws[r]->path});
                    rels.push_back(rel);
                }
                for (std::size_t c = 0; c < ws.size(); ++c)
                    if (!Matrix::column(img.col(int(c)), pr).is_zero()) alive.push_back(*ws[c]);
            }
        cur = std::move(alive);
    }
    out.relations = int(rels.size());
    try {
        AlgPtr alg = Algebra::create(q, rels, pr, "End(T)", std::max(kDefaultPathCap, out.dim + 2));
        if (alg->dim() == out.dim) out.algebra = alg;
    } catch (const std::exception&) {
    }
    return out;
}

}  // namespace sf
