#include "stabfun/stable.hpp"

#include <algorithm>
#include <stdexcept>

namespace sf {

namespace {

std::vector<elem> flatten(const RepHom& f) {
    std::vector<elem> out;
    for (const auto& m : f.at) out.insert(out.end(), m.data().begin(), m.data().end());
    return out;
}

bool same_rep(const Rep& a, const Rep& b) { return a.dims == b.dims && a.mats == b.mats; }

StableImage finish(const FunctorData& f, ModuleImage mi, Strategy s, int window) {
    StableImage out;
    out.window = window;
    out.image = std::move(mi);
    const ProjComplex& fx = out.image.fx;
    if (s == Strategy::Raw) {
        out.tri.c = fx;
        out.from_raw = proj_identity(fx);
        out.to_raw = proj_identity(fx);
    } else {
        Minimized mz = minimize(fx);
        if (s == Strategy::Minimal) {
            out.tri.c = mz.p;
            out.from_raw = mz.proj;
            out.to_raw = mz.incl;
        } else {
            PaddedComplex pc = pad_complex(mz.p, 0);
            out.tri.c = pc.c;
            out.from_raw = proj_compose(pc.incl, mz.proj, fx, mz.p, pc.c);
            out.to_raw = proj_compose(mz.incl, pc.proj, pc.c, mz.p, fx);
        }
    }
    Complex c = materialize(out.tri.c);
    if (c.empty()) c = zero_complex(f.tgt);
    Truncation t = good_truncate_geq0(c, -1);
    out.tri.d = t.c;
    if (t.c.empty()) {
        out.m = zero_rep(f.tgt);
        out.tri.q = zero_hom(c.term(0), out.m);
    } else {
        out.m = t.c.term(0);
        out.tri.q = t.map.maps.at(0);
    }
    const ProjComplex& pc = out.tri.c;
    out.tri.u = ProjComplex{f.tgt, 1, {}, {}};
    for (int i = 1; i <= pc.hi(); ++i) {
        out.tri.u.verts.push_back(pc.term(i));
        if (i < pc.hi()) out.tri.u.diffs.push_back(pc.diff(i));
    }
    out.strip = strip_projectives(out.m);
    return out;
}

void check_degrees(const FunctorData& f) {
    for (const auto& im : f.images)
        if (!image_in_range(im, f.width))
            throw std::invalid_argument("stable image: functor data " + f.name + " is not non-negative");
}

}  // namespace

bool StableHomSpace::is_zero(const RepHom& f) const {
    auto v = flatten(f);
    if (v.empty()) return true;
    if (factoring.cols() == 0) return std::all_of(v.begin(), v.end(), [](elem e) { return e == 0; });
    return in_span(factoring, Matrix::column(v, x.prime()));
}

bool StableHomSpace::equal(const RepHom& f, const RepHom& g) const { return is_zero(add(f, neg(g))); }

StableHomSpace stable_hom(const Rep& x, const Rep& y) {
    StableHomSpace s;
    s.x = x;
    s.y = y;
    s.basis = hom_space(x, y);
    s.hom_dim = int(s.basis.size());
    Cover cov = projective_cover(y);
    std::vector<std::vector<elem>> cols;
    for (const auto& g : hom_space(x, cov.proj)) cols.push_back(flatten(compose(cov.epi, g)));
    int len = int(flatten(zero_hom(x, y)).size());
    s.factoring = Matrix(len, int(cols.size()), x.prime());
    for (std::size_t k = 0; k < cols.size(); ++k) s.factoring.set_col(int(k), cols[k]);
    s.factoring = select_cols(s.factoring, independent_cols(s.factoring));
    s.dim = s.hom_dim - s.factoring.cols();
    return s;
}

bool stably_zero(const RepHom& f, const Rep& x, const Rep& y) { return stable_hom(x, y).is_zero(f); }

bool stable_iso(const Rep& x, const Rep& y) {
    Rep a = strip_projectives(x).core, b = strip_projectives(y).core;
    if (a.dims != b.dims) return false;
    return is_isomorphic(a, b);
}

std::string strategy_name(Strategy s) {
    switch (s) {
        case Strategy::Minimal: return "minimal";
        case Strategy::Raw: return "raw";
        case Strategy::Padded: return "padded";
    }
    return "?";
}

int stable_window(const FunctorData& f) { return -f.width - 3; }

StableImage stable_image(const FunctorData& f, const Rep& x, Strategy s) {
    check_degrees(f);
    const int w = stable_window(f);
    return finish(f, apply_to_module(f, x, w), s, w);
}

RepHom induced_on_m(const StableImage& a, const StableImage& b, const ProjChainMap& g) {
    if (a.m.is_zero() || b.m.is_zero()) return zero_hom(a.m, b.m);
    ChainMap mg = materialize(g, a.tri.c, b.tri.c);
    RepHom g0 = map_at(mg, materialize(a.tri.c), materialize(b.tri.c), 0);
    return factor_through_epi(a.tri.q, compose(b.tri.q, g0));
}

RepHom comparison(const StableImage& a, const StableImage& b) {
    ProjChainMap g = proj_compose(b.from_raw, a.to_raw, a.tri.c, a.image.fx, b.tri.c);
    return induced_on_m(a, b, g);
}

StableMap stable_image_map(const FunctorData& f, const RepHom& phi, const Rep& x, const Rep& y, Strategy s) {
    check_degrees(f);
    const int w = stable_window(f);
    MapImage mi = apply_to_map(f, phi, x, y, w);
    StableMap out;
    out.x = finish(f, mi.x, s, w);
    out.y = finish(f, mi.y, s, w);
    ProjChainMap g = proj_compose(mi.image, out.x.to_raw, out.x.tri.c, out.x.image.fx, out.y.image.fx);
    out.chain = proj_compose(out.y.from_raw, g, out.x.tri.c, out.y.image.fx, out.y.tri.c);
    out.b = induced_on_m(out.x, out.y, out.chain);
    out.core = compose(out.y.strip.proj, compose(out.b, out.x.strip.incl));
    return out;
}

bool is_short_exact(const Rep& x, const Rep& y, const Rep& z, const RepHom& f, const RepHom& g) {
    if (!is_hom(x, y, f) || !is_hom(y, z, g)) return false;
    if (!is_zero(compose(g, f))) return false;
    for (std::size_t v = 0; v < y.dims.size(); ++v) {
        const int rf = rank(f.at[v]), rg = rank(g.at[v]);
        if (rf != x.dims[v] || rg != z.dims[v] || rf + rg != y.dims[v]) return false;
    }
    return true;
}

ExactImage exact_sequence_image(const FunctorData& f, const Rep& x, const Rep& y, const Rep& z, const RepHom& fi,
                                const RepHom& gi) {
    if (!is_short_exact(x, y, z, fi, gi)) throw std::invalid_argument("exact_sequence_image: input is not exact");
    StableMap mf = stable_image_map(f, fi, x, y), mg = stable_image_map(f, gi, y, z);
    if (!same_rep(mf.y.m, mg.x.m) || mf.y.tri.c.verts != mg.x.tri.c.verts)
        throw std::logic_error("exact_sequence_image: middle image is not reproducible");
    const Complex &dx = mf.x.tri.d, &dy = mf.y.tri.d, &dz = mg.y.tri.d;
    const Complex cx = materialize(mf.x.tri.c), cy = materialize(mf.y.tri.c), cz = materialize(mg.y.tri.c);
    auto lift = [](const StableMap& sm, const Complex& a, const Complex& b) {
        ChainMap m = materialize(sm.chain, sm.x.tri.c, sm.y.tri.c);
        ChainMap out;
        for (int i = 1; i <= std::max(a.hi(), b.hi()); ++i) out.maps[i] = map_at(m, a, b, i);
        out.maps[0] = sm.b;
        return out;
    };
    ChainMap p = lift(mf, cx, cy), q = lift(mg, cy, cz);
    ChainMap qp = compose(q, p, dx, dy, dz);
    auto hsol = solve_homotopy(qp, dx, dz);
    if (!hsol) throw std::logic_error("exact_sequence_image: composite is not null-homotopic");
    auto h = [&](int i) {
        auto it = hsol->find(i);
        return it == hsol->end() ? zero_hom(dx.term(i), dz.term(i - 1)) : it->second;
    };
    auto pm = [&](const ChainMap& c, const Complex& a, const Complex& b, int i) { return map_at(c, a, b, i); };

    const Rep mx = dx.term(0), my = dy.term(0), mz = dz.term(0);
    std::vector<Rep> c1{dx.term(2), dy.term(1), mz}, c2{dx.term(3), dy.term(2), dz.term(1)};
    SumData s1 = direct_sum(c1), s2 = direct_sum(c2);
    RepHom d1 = block_hom(c2, c1,
                          {{neg(dx.diff(2)), zero_hom(c1[1], c2[0]), zero_hom(mz, c2[0])},
                           {pm(p, dx, dy, 2), dy.diff(1), zero_hom(mz, c2[1])},
                           {h(2), pm(q, dy, dz, 1), neg(dz.diff(0))}});
    Sub vsub = image(s1.sum, s2.sum, d1);
    const Rep& v = vsub.rep;
    RepHom onto = onto_image(s1.sum, vsub, d1);
    Cover cov = projective_cover(v);
    std::vector<std::vector<elem>> pre;
    for (std::size_t j = 0; j < cov.verts.size(); ++j) {
        const int u = cov.verts[j];
        auto sol = solve(onto.at[u], Matrix::column(cov.gens[j], v.prime()));
        if (!sol) throw std::logic_error("exact_sequence_image: image of d1 not reached");
        pre.push_back(sol->col(0));
    }
    RepHom sect = hom_from_generators(s1.sum, cov.verts, pre);
    auto inv = inverse(cov.epi);
    if (!inv) throw std::logic_error("exact_sequence_image: image of d1 is not projective");
    sect = compose(sect, *inv);

    ExactImage out;
    out.mx = mx;
    out.my = my;
    out.mz = mz;
    const Rep dx1 = dx.term(1);
    out.p = direct_sum_rep({v, dx1});
    out.q = direct_sum_rep({c1[0], c1[1]});
    std::vector<Rep> mid{my, v, dx1}, right{mz, c1[0], c1[1]};
    SumData sm = direct_sum(mid), sr = direct_sum(right);
    out.middle = sm.sum;
    out.right = sr.sum;
    out.left_map = block_hom(mid, {mx}, {{mf.b}, {zero_hom(mx, v)}, {neg(dx.diff(0))}});
    out.right_map = block_hom(right, mid,
                              {{mg.b, compose(s1.proj[2], sect), h(1)},
                               {zero_hom(my, c1[0]), compose(s1.proj[0], sect), neg(dx.diff(1))},
                               {dy.diff(0), compose(s1.proj[1], sect), pm(p, dx, dy, 1)}});
    out.exact = is_short_exact(mx, out.middle, out.right, out.left_map, out.right_map);
    out.projective_terms = is_projective(out.p) && is_projective(out.q);
    out.a = compose(sm.proj[0], out.left_map);
    out.u = compose(sr.proj[0], compose(out.right_map, sm.incl[0]));
    out.a_matches = stable_hom(mx, my).equal(out.a, mf.b);
    out.u_matches = stable_hom(my, mz).equal(out.u, mg.b);
    return out;
}

}  // namespace sf
