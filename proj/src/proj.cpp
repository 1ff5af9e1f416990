#include "stabfun/proj.hpp"

#include <algorithm>
#include <stdexcept>

namespace sf {

namespace {

elem sign(int n, elem p) { return n % 2 == 0 ? 1 : p - 1; }

ProjMap select(const ProjMap& f, const std::vector<int>& rows, const std::vector<int>& cols) {
    ProjMap g;
    for (int r : rows) g.tgt.push_back(f.tgt[r]);
    for (int c : cols) g.src.push_back(f.src[c]);
    for (int r : rows) {
        std::vector<Vec> row;
        for (int c : cols) row.push_back(f.e[r][c]);
        g.e.push_back(std::move(row));
    }
    return g;
}

std::vector<int> all_but(int n, int skip) {
    std::vector<int> out;
    for (int i = 0; i < n; ++i)
        if (i != skip) out.push_back(i);
    return out;
}

std::vector<int> concat(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> c = a;
    c.insert(c.end(), b.begin(), b.end());
    return c;
}

// 2x2 block ProjMap from (a, b) sources to (c, d) targets.
ProjMap block2(const AlgPtr& alg, const std::vector<int>& t0, const std::vector<int>& t1, const std::vector<int>& s0,
               const std::vector<int>& s1, const ProjMap& e00, const ProjMap& e01, const ProjMap& e10,
               const ProjMap& e11) {
    ProjMap f = zero_projmap(alg, concat(s0, s1), concat(t0, t1));
    auto put = [&](const ProjMap& b, int r0, int c0) {
        for (std::size_t i = 0; i < b.tgt.size(); ++i)
            for (std::size_t j = 0; j < b.src.size(); ++j) f.e[r0 + i][c0 + j] = b.e[i][j];
    };
    put(e00, 0, 0);
    put(e01, 0, int(s0.size()));
    put(e10, int(t0.size()), 0);
    put(e11, int(t0.size()), int(s0.size()));
    return f;
}

}  // namespace

int generator_position(const AlgPtr& alg, const std::vector<int>& verts, int j) {
    const int v = verts[j];
    return summand_offset(alg, verts, j, v) + alg->local_index(alg->trivial(v));
}

std::vector<int> ProjComplex::term(int i) const {
    if (i < lo || i > hi()) return {};
    return verts[i - lo];
}

ProjMap ProjComplex::diff(int i) const {
    if (i < lo || i >= hi()) return zero_projmap(alg, term(i), term(i + 1));
    return diffs[i - lo];
}

int ProjComplex::rank() const {
    int r = 0;
    for (const auto& v : verts) r += int(v.size());
    return r;
}

void ProjComplex::validate() const {
    if (!verts.empty() && diffs.size() + 1 != verts.size()) throw std::invalid_argument("projective complex has wrong number of differentials");
    for (int i = lo; i < hi(); ++i) {
        const ProjMap& d = diffs[i - lo];
        if (d.src != term(i) || d.tgt != term(i + 1)) throw std::invalid_argument("projective differential has wrong shape");
        for (std::size_t r = 0; r < d.tgt.size(); ++r)
            for (std::size_t c = 0; c < d.src.size(); ++c)
                if (alg->corner(d.e[r][c], d.tgt[r], d.src[c]) != d.e[r][c])
                    throw std::invalid_argument("projective differential entry is not in the right corner");
        if (i + 1 < hi() && !is_zero(alg, compose(alg, diff(i + 1), diff(i))))
            throw std::invalid_argument("projective differentials do not compose to zero");
    }
}

ProjComplex proj_stalk(const AlgPtr& alg, const std::vector<int>& verts, int degree) {
    return ProjComplex{alg, degree, {verts}, {}};
}

ProjComplex proj_shift(const ProjComplex& c, int n) {
    ProjComplex s{c.alg, c.lo - n, c.verts, {}};
    for (const auto& d : c.diffs) s.diffs.push_back(scale(c.alg, d, sign(n, c.alg->prime())));
    return s;
}

ProjComplex proj_trim(const ProjComplex& c) {
    int a = c.lo, b = c.hi();
    while (a <= b && c.term(a).empty()) ++a;
    while (b >= a && c.term(b).empty()) --b;
    ProjComplex out{c.alg, a > b ? 0 : a, {}, {}};
    for (int i = a; i <= b; ++i) {
        out.verts.push_back(c.term(i));
        if (i < b) out.diffs.push_back(c.diff(i));
    }
    return out;
}

Complex materialize(const ProjComplex& c) {
    Complex out{c.alg, c.lo, {}, {}};
    for (const auto& v : c.verts) out.terms.push_back(projective_sum(c.alg, v));
    for (const auto& d : c.diffs) out.diffs.push_back(to_hom(c.alg, d));
    return out;
}

ProjMap pmap_at(const ProjChainMap& f, const ProjComplex& x, const ProjComplex& y, int i) {
    auto it = f.maps.find(i);
    if (it == f.maps.end()) return zero_projmap(x.alg, x.term(i), y.term(i));
    return it->second;
}

ChainMap materialize(const ProjChainMap& f, const ProjComplex& x, const ProjComplex& y) {
    ChainMap g;
    for (const auto& [i, fi] : f.maps) {
        (void)fi;
        g.maps[i] = to_hom(x.alg, pmap_at(f, x, y, i));
    }
    return g;
}

ProjChainMap proj_identity(const ProjComplex& c) {
    ProjChainMap f;
    for (int i = c.lo; i <= c.hi(); ++i) f.maps[i] = identity_projmap(c.alg, c.term(i));
    return f;
}

ProjChainMap proj_compose(const ProjChainMap& g, const ProjChainMap& f, const ProjComplex& x, const ProjComplex& y,
                          const ProjComplex& z) {
    ProjChainMap h;
    for (const auto& [i, fi] : f.maps)
        if (g.maps.count(i)) h.maps[i] = compose(x.alg, pmap_at(g, y, z, i), fi);
    (void)x;
    return h;
}

ProjChainMap proj_add(const ProjChainMap& f, const ProjChainMap& g, const ProjComplex& x, const ProjComplex& y) {
    ProjChainMap h;
    for (int i = std::min(x.lo, y.lo); i <= std::max(x.hi(), y.hi()); ++i)
        if (f.maps.count(i) || g.maps.count(i)) h.maps[i] = add(x.alg, pmap_at(f, x, y, i), pmap_at(g, x, y, i));
    return h;
}

ProjChainMap proj_scale(const ProjChainMap& f, elem c, const ProjComplex& x, const ProjComplex& y) {
    ProjChainMap h;
    for (const auto& [i, fi] : f.maps) h.maps[i] = scale(x.alg, fi, c);
    (void)y;
    return h;
}

bool is_proj_chain_map(const ProjChainMap& f, const ProjComplex& x, const ProjComplex& y) {
    const AlgPtr& alg = x.alg;
    for (int i = std::min(x.lo, y.lo) - 1; i <= std::max(x.hi(), y.hi()); ++i) {
        ProjMap fi = pmap_at(f, x, y, i);
        if (fi.src != x.term(i) || fi.tgt != y.term(i)) return false;
        ProjMap lhs = compose(alg, y.diff(i), fi);
        ProjMap rhs = compose(alg, pmap_at(f, x, y, i + 1), x.diff(i));
        if (!is_zero(alg, add(alg, lhs, scale(alg, rhs, alg->prime() - 1)))) return false;
    }
    return true;
}

ProjComplex proj_direct_sum(const ProjComplex& x, const ProjComplex& y) {
    if (x.empty()) return y;
    if (y.empty()) return x;
    const AlgPtr& alg = x.alg;
    ProjComplex s{alg, std::min(x.lo, y.lo), {}, {}};
    const int b = std::max(x.hi(), y.hi());
    for (int i = s.lo; i <= b; ++i) s.verts.push_back(concat(x.term(i), y.term(i)));
    for (int i = s.lo; i < b; ++i)
        s.diffs.push_back(block2(alg, x.term(i + 1), y.term(i + 1), x.term(i), y.term(i), x.diff(i),
                                 zero_projmap(alg, y.term(i), x.term(i + 1)),
                                 zero_projmap(alg, x.term(i), y.term(i + 1)), y.diff(i)));
    return s;
}

ProjCone proj_cone(const ProjChainMap& f, const ProjComplex& x, const ProjComplex& y) {
    const AlgPtr& alg = x.alg;
    ProjCone out{ProjComplex{alg, 0, {}, {}}, {}, {}};
    if (x.empty() && y.empty()) return out;
    int a, b;
    if (x.empty()) {
        a = y.lo;
        b = y.hi();
    } else if (y.empty()) {
        a = x.lo - 1;
        b = x.hi() - 1;
    } else {
        a = std::min(x.lo - 1, y.lo);
        b = std::max(x.hi() - 1, y.hi());
    }
    out.c.lo = a;
    const elem m1 = alg->prime() - 1;
    for (int i = a; i <= b; ++i) {
        auto xs = x.term(i + 1), ys = y.term(i);
        out.c.verts.push_back(concat(xs, ys));
        ProjMap in = zero_projmap(alg, ys, concat(xs, ys));
        for (std::size_t k = 0; k < ys.size(); ++k) in.e[xs.size() + k][k] = alg->vertex_unit(ys[k]);
        out.from_target.maps[i] = in;
        ProjMap pr = zero_projmap(alg, concat(xs, ys), xs);
        for (std::size_t k = 0; k < xs.size(); ++k) pr.e[k][k] = alg->vertex_unit(xs[k]);
        out.to_source.maps[i] = pr;
    }
    for (int i = a; i < b; ++i)
        out.c.diffs.push_back(block2(alg, x.term(i + 2), y.term(i + 1), x.term(i + 1), y.term(i),
                                     scale(alg, x.diff(i + 1), m1), zero_projmap(alg, y.term(i), x.term(i + 2)),
                                     pmap_at(f, x, y, i + 1), y.diff(i)));
    return out;
}

ProjMap projmap_from_hom(const AlgPtr& alg, const std::vector<int>& src, const std::vector<int>& tgt, const RepHom& f) {
    std::vector<std::vector<elem>> cols;
    for (std::size_t j = 0; j < src.size(); ++j) cols.push_back(f.at[src[j]].col(generator_position(alg, src, int(j))));
    return projmap_from_columns(alg, src, tgt, cols);
}

std::optional<ProjComplex> as_proj_complex(const Complex& c) {
    ProjComplex p{c.alg, c.lo, {}, {}};
    std::vector<Cover> covers;
    for (const auto& t : c.terms) {
        Cover cv = projective_cover(t);
        if (!is_iso(cv.epi)) return std::nullopt;
        p.verts.push_back(cv.verts);
        covers.push_back(std::move(cv));
    }
    for (std::size_t k = 0; k + 1 < c.terms.size(); ++k) {
        RepHom back = *inverse(covers[k + 1].epi);
        RepHom d = compose(back, compose(c.diffs[k], covers[k].epi));
        p.diffs.push_back(projmap_from_hom(c.alg, p.verts[k], p.verts[k + 1], d));
    }
    return p;
}

Vec local_inverse(const AlgPtr& alg, const Vec& a, int v) {
    const elem p = alg->prime();
    const elem lam = a[alg->trivial(v)];
    const elem li = inv_mod(lam, p);
    Vec r = a;
    r[alg->trivial(v)] = 0;
    Vec t = alg->scale(r, neg_mod(li, p));
    Vec sum = alg->vertex_unit(v), pw = sum;
    for (int k = 0; k <= alg->dim() && !alg->is_zero(pw); ++k) {
        pw = alg->mul(pw, t);
        sum = alg->add(sum, pw);
    }
    return alg->scale(sum, li);
}

namespace {

struct Unit {
    int degree, row, col;
};

std::optional<Unit> find_unit(const ProjComplex& c) {
    for (int i = c.lo; i < c.hi(); ++i) {
        const ProjMap& d = c.diffs[i - c.lo];
        for (std::size_t r = 0; r < d.tgt.size(); ++r)
            for (std::size_t s = 0; s < d.src.size(); ++s)
                if (d.tgt[r] == d.src[s] && d.e[r][s][c.alg->trivial(d.src[s])] != 0) return Unit{i, int(r), int(s)};
    }
    return std::nullopt;
}

}  // namespace

Minimized minimize(const ProjComplex& c) {
    const AlgPtr& alg = c.alg;
    const elem m1 = alg->prime() - 1;
    Minimized out{c, proj_identity(c), proj_identity(c)};
    while (auto u = find_unit(out.p)) {
        const ProjComplex& cur = out.p;
        const int i = u->degree;
        const auto& src = cur.term(i);
        const auto& tgt = cur.term(i + 1);
        const ProjMap& d = cur.diffs[i - cur.lo];
        const int v = src[u->col];
        auto keep_s = all_but(int(src.size()), u->col);
        auto keep_t = all_but(int(tgt.size()), u->row);
        ProjMap a = select(d, {u->row}, {u->col});
        Vec ainv = local_inverse(alg, a.e[0][0], v);
        ProjMap ainv_m = zero_projmap(alg, {v}, {v});
        ainv_m.e[0][0] = ainv;
        ProjMap b = select(d, {u->row}, keep_s);
        ProjMap cc = select(d, keep_t, {u->col});
        ProjMap delta = select(d, keep_t, keep_s);
        ProjMap ainv_b = compose(alg, ainv_m, b);
        ProjMap cainv = compose(alg, cc, ainv_m);

        ProjComplex next{alg, cur.lo, cur.verts, cur.diffs};
        next.verts[i - cur.lo] = select(d, {}, keep_s).src;
        next.verts[i + 1 - cur.lo] = select(d, keep_t, {}).tgt;
        next.diffs[i - cur.lo] = add(alg, delta, scale(alg, compose(alg, cc, ainv_b), m1));
        if (i - 1 >= cur.lo) {
            const ProjMap& dp = cur.diffs[i - 1 - cur.lo];
            next.diffs[i - 1 - cur.lo] = select(dp, keep_s, all_but(int(dp.src.size()), -1));
        }
        if (i + 1 < cur.hi()) {
            const ProjMap& dn = cur.diffs[i + 1 - cur.lo];
            next.diffs[i + 1 - cur.lo] = select(dn, all_but(int(dn.tgt.size()), -1), keep_t);
        }

        ProjChainMap iota = proj_identity(next), pi = proj_identity(next);
        // iota: next -> cur
        {
            ProjMap in_i = zero_projmap(alg, next.term(i), src);
            for (std::size_t k = 0; k < keep_s.size(); ++k) {
                in_i.e[keep_s[k]][k] = alg->vertex_unit(src[keep_s[k]]);
                in_i.e[u->col][k] = alg->scale(ainv_b.e[0][k], m1);
            }
            iota.maps[i] = in_i;
            ProjMap in_n = zero_projmap(alg, next.term(i + 1), tgt);
            for (std::size_t k = 0; k < keep_t.size(); ++k) in_n.e[keep_t[k]][k] = alg->vertex_unit(tgt[keep_t[k]]);
            iota.maps[i + 1] = in_n;
        }
        // pi: cur -> next
        {
            ProjMap pr_i = zero_projmap(alg, src, next.term(i));
            for (std::size_t k = 0; k < keep_s.size(); ++k) pr_i.e[k][keep_s[k]] = alg->vertex_unit(src[keep_s[k]]);
            pi.maps[i] = pr_i;
            ProjMap pr_n = zero_projmap(alg, tgt, next.term(i + 1));
            for (std::size_t k = 0; k < keep_t.size(); ++k) {
                pr_n.e[k][keep_t[k]] = alg->vertex_unit(tgt[keep_t[k]]);
                pr_n.e[k][u->row] = alg->scale(cainv.e[k][0], m1);
            }
            pi.maps[i + 1] = pr_n;
        }
        out.incl = proj_compose(out.incl, iota, next, cur, c);
        out.proj = proj_compose(pi, out.proj, c, cur, next);
        out.p = std::move(next);
    }
    out.p = proj_trim(out.p);
    return out;
}

bool is_minimal(const ProjComplex& c) { return !find_unit(c).has_value(); }

Resolved projective_resolution(const Complex& c, int window_lo) {
    const AlgPtr& alg = c.alg;
    Resolved out{ProjComplex{alg, 0, {}, {}}, {}};
    if (c.empty() || window_lo > c.hi()) return out;
    const int top = c.hi();
    std::map<int, std::vector<int>> verts;
    std::map<int, ProjMap> dp;
    std::map<int, RepHom> rho;
    std::map<int, Rep> pterm;
    auto pt = [&](int i) { return pterm.count(i) ? pterm[i] : zero_rep(alg); };
    for (int i = top; i >= window_lo; --i) {
        Rep p1 = pt(i + 1), p2 = pt(i + 2);
        Rep ci = c.term(i), c1 = c.term(i + 1);
        SumData here = direct_sum({p1, ci});
        SumData there = direct_sum({p2, c1});
        RepHom d_p1 = dp.count(i + 1) ? to_hom(alg, dp[i + 1]) : zero_hom(p1, p2);
        RepHom rho1 = rho.count(i + 1) ? rho[i + 1] : zero_hom(p1, c1);
        RepHom D = block_hom({p2, c1}, {p1, ci}, {{neg(d_p1), zero_hom(ci, p2)}, {rho1, c.diff(i)}});
        Sub z = kernel(here.sum, there.sum, D);
        RepHom hit = factor_through_mono(z.incl, compose(here.incl[1], c.diff(i - 1)));
        auto rad = radical_spaces(z.rep);
        std::vector<int> vs;
        std::vector<std::vector<elem>> pcols, xgens;
        for (int v = 0; v < alg->num_vertices(); ++v) {
            Matrix span = hcat(rad[v], hit.at[v]);
            Matrix id = Matrix::identity(z.rep.dims[v], alg->prime());
            for (int k : extending_cols(span, id)) {
                std::vector<elem> g = z.incl.at[v].col(k);
                std::vector<elem> pp(g.begin(), g.begin() + p1.dims[v]);
                std::vector<elem> xx(g.begin() + p1.dims[v], g.end());
                for (auto& e : pp) e = neg_mod(e, alg->prime());
                vs.push_back(v);
                pcols.push_back(std::move(pp));
                xgens.push_back(std::move(xx));
            }
        }
        verts[i] = vs;
        pterm[i] = projective_sum(alg, vs);
        dp[i] = projmap_from_columns(alg, vs, verts.count(i + 1) ? verts[i + 1] : std::vector<int>{}, pcols);
        rho[i] = hom_from_generators(ci, vs, xgens);
    }
    ProjComplex raw{alg, window_lo, {}, {}};
    for (int i = window_lo; i <= top; ++i) {
        raw.verts.push_back(verts[i]);
        if (i < top) raw.diffs.push_back(dp[i]);
    }
    Minimized m = minimize(raw);
    ChainMap rho_raw;
    for (auto& [i, r] : rho) rho_raw.maps[i] = r;
    ChainMap incl = materialize(m.incl, m.p, raw);
    Complex mp = materialize(m.p), mraw = materialize(raw);
    out.p = m.p;
    out.rho = compose(rho_raw, incl, mp, mraw, c);
    return out;
}

Resolved resolve_module_complex(const Rep& m, int window_lo) { return projective_resolution(stalk(m, 0), window_lo); }

namespace {

struct CLayout {
    std::vector<std::pair<int, int>> blocks;  // (degree, offset)
    int dim = 0;
    int offset(int i) const {
        for (auto [d, o] : blocks)
            if (d == i) return o;
        return -1;
    }
};

CLayout layout(const ProjComplex& p, const Complex& y, int n) {
    CLayout l;
    for (int i = p.lo; i <= p.hi(); ++i) {
        int d = hom_proj_dim(y.term(i + n), p.term(i));
        if (d == 0) continue;
        l.blocks.push_back({i, l.dim});
        l.dim += d;
    }
    return l;
}

Matrix proj_hom_differential(const ProjComplex& p, const Complex& y, int n, const CLayout& src, const CLayout& tgt) {
    const AlgPtr& alg = p.alg;
    Matrix d(tgt.dim, src.dim, alg->prime());
    const elem sg = neg_mod(sign(n, alg->prime()), alg->prime());
    for (auto [i, off] : src.blocks) {
        const auto& vs = p.term(i);
        int to = tgt.offset(i);
        if (to >= 0) {
            RepHom dy = y.diff(i + n);
            Rep yi = y.term(i + n), yn = y.term(i + n + 1);
            int r = to, c = off;
            for (int v : vs) {
                put_block(d, r, c, dy.at[v]);
                r += yn.dims[v];
                c += yi.dims[v];
            }
        }
        int tb = tgt.offset(i - 1);
        if (tb >= 0) {
            Rep yi = y.term(i + n);
            auto pm = path_mats(yi);
            Matrix pre = precompose_matrix(alg, yi, pm, p.diff(i - 1));
            put_block(d, tb, off, scaled(pre, sg));
        }
    }
    return d;
}

}  // namespace

HomKProj hom_K_proj(const ProjComplex& p, const Complex& y, int n) {
    HomKProj out;
    if (p.empty() || y.empty()) {
        out.cycles = Matrix(0, 0, p.alg->prime());
        out.boundaries = Matrix(0, 0, p.alg->prime());
        return out;
    }
    CLayout prev = layout(p, y, n - 1), cur = layout(p, y, n), next = layout(p, y, n + 1);
    Matrix din = proj_hom_differential(p, y, n - 1, prev, cur);
    Matrix dout = proj_hom_differential(p, y, n, cur, next);
    out.cycles = nullspace(dout);
    out.boundaries = din;
    out.layout = cur.blocks;
    out.cdim = cur.dim;
    out.dim = out.cycles.cols() - rank(din);
    return out;
}

int hom_K(const ProjComplex& p, const ProjComplex& q, int n) { return hom_K_proj(p, materialize(q), n).dim; }

int hom_D_cutoff(const Complex& y, int n) { return y.lo - n - 2; }

int hom_D_window(const Complex& x, const Complex& y, int n, int window_lo) {
    if (x.empty() || y.empty()) return 0;
    Resolved r = projective_resolution(x, window_lo);
    return hom_K_proj(r.p, y, n).dim;
}

int hom_D(const Complex& x, const Complex& y, int n) {
    Complex ty = trim(y);
    if (ty.empty()) return 0;
    return hom_D_window(trim(x), ty, n, hom_D_cutoff(ty, n));
}

bool perpendicularity_holds(const Complex& x, const Complex& y) {
    for (int i = x.lo; i <= x.hi(); ++i)
        for (int j = y.lo; j <= y.hi() && j < i; ++j) {
            Rep xi = x.term(i), yj = y.term(j);
            if (xi.is_zero() || yj.is_zero()) continue;
            for (int t = 1; t <= i - j + 4; ++t)
                if (ext_dim(xi, yj, t) != 0) return false;
        }
    return true;
}

Comparison localization_compare(const Complex& x0, const Complex& y0, int n) {
    Complex x = trim(x0), y = trim(y0);
    Comparison out;
    if (x.empty() || y.empty()) return out;
    out.hypothesis = perpendicularity_holds(x, y);
    HomK hk = hom_K_general(x, y, n);
    out.hom_k = hk.dim;
    Resolved r = projective_resolution(x, hom_D_cutoff(y, n));
    HomKProj hd = hom_K_proj(r.p, y, n);
    out.hom_d = hd.dim;
    const AlgPtr& alg = x.alg;
    Matrix q(hd.cdim, int(hk.basis.size()), alg->prime());
    for (std::size_t k = 0; k < hk.basis.size(); ++k) {
        for (auto [i, off] : hd.layout) {
            auto it = hk.basis[k].find(i);
            if (it == hk.basis[k].end()) continue;
            RepHom f = compose(it->second, map_at(r.rho, materialize(r.p), x, i));
            const auto& vs = r.p.term(i);
            int row = off;
            for (std::size_t j = 0; j < vs.size(); ++j) {
                auto col = f.at[vs[j]].col(generator_position(alg, vs, int(j)));
                for (std::size_t t = 0; t < col.size(); ++t) q.at(row + int(t), int(k)) = col[t];
                row += int(col.size());
            }
        }
    }
    out.rank = rank(hcat(q, hd.boundaries)) - rank(hd.boundaries);
    return out;
}

std::map<int, RepHom> null_homotopy(const ProjComplex& p, const Complex& e, const ChainMap& u) {
    const AlgPtr& alg = p.alg;
    std::map<int, RepHom> h;
    for (int i = p.hi(); i >= p.lo; --i) {
        const auto& vs = p.term(i);
        Rep pi = projective_sum(alg, vs);
        auto ui = u.maps.find(i);
        RepHom t = ui != u.maps.end() ? ui->second : zero_hom(pi, e.term(i));
        if (h.count(i + 1)) t = add(t, neg(compose(h[i + 1], to_hom(alg, p.diff(i)))));
        RepHom de = e.diff(i - 1);
        std::vector<std::vector<elem>> gens;
        for (std::size_t j = 0; j < vs.size(); ++j) {
            const int v = vs[j];
            Matrix target = Matrix::column(t.at[v].col(generator_position(alg, vs, int(j))), alg->prime());
            auto s = solve(de.at[v], target);
            if (!s) throw std::runtime_error("null homotopy: target not exact in degree " + std::to_string(i));
            gens.push_back(s->col(0));
        }
        h[i] = hom_from_generators(e.term(i - 1), vs, gens);
    }
    return h;
}

ProjChainMap lift_through(const ProjComplex& p, const ChainMap& f, const Complex& y, const Resolved& q) {
    const AlgPtr& alg = p.alg;
    Complex mq = materialize(q.p);
    Cone cn = cone(q.rho, mq, y);
    ChainMap u;
    Complex mp = materialize(p);
    for (int i = p.lo; i <= p.hi(); ++i) u.maps[i] = compose(map_at(cn.from_target, y, cn.c, i), map_at(f, mp, y, i));
    auto h = null_homotopy(p, cn.c, u);
    ProjChainMap g;
    for (auto& [i, hi] : h) {
        // hi : P^i -> cone^{i-1} = Q^i + y^{i-1}; keep the Q^i rows
        Rep qi = mq.term(i);
        RepHom top;
        for (int v = 0; v < alg->num_vertices(); ++v) top.at.push_back(block(hi.at[v], 0, 0, qi.dims[v], hi.at[v].cols()));
        g.maps[i] = projmap_from_hom(alg, p.term(i), q.p.term(i), top);
    }
    return g;
}

}  // namespace sf
