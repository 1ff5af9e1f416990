#include "stabfun/module.hpp"

#include <algorithm>
#include <random>
#include <sstream>
#include <stdexcept>

namespace sf {

namespace {

Matrix zero_cols(int rows, elem p) { return Matrix(rows, 0, p); }

Matrix independent(const Matrix& m) { return select_cols(m, independent_cols(m)); }

// Section s with q * s = identity, for a surjective q.
Matrix section(const Matrix& q) {
    auto s = solve(q, Matrix::identity(q.rows(), q.prime()));
    if (!s) throw std::runtime_error("expected a surjective matrix");
    return *s;
}

std::vector<elem> unit_vector(int n, int i) {
    std::vector<elem> v(n, 0);
    v[i] = 1;
    return v;
}

}  // namespace

int Rep::total_dim() const {
    int s = 0;
    for (int d : dims) s += d;
    return s;
}

void Rep::validate() const {
    const Quiver& q = alg->quiver();
    if (int(dims.size()) != q.num_vertices()) throw std::invalid_argument("representation has wrong vertex count");
    if (int(mats.size()) != q.num_arrows()) throw std::invalid_argument("representation has wrong arrow count");
    for (int d : dims)
        if (d < 0) throw std::invalid_argument("negative dimension");
    for (int a = 0; a < q.num_arrows(); ++a) {
        const auto& ar = q.arrows[a];
        if (mats[a].rows() != dims[ar.tgt] || mats[a].cols() != dims[ar.src] || mats[a].prime() != alg->prime())
            throw std::invalid_argument("matrix for arrow '" + ar.name + "' has the wrong shape");
    }
    for (std::size_t r = 0; r < alg->relations().size(); ++r) {
        const auto& rel = alg->relations()[r];
        const int s = q.arrows[rel.front().path.front()].src;
        const int t = q.arrows[rel.front().path.back()].tgt;
        Matrix acc(dims[t], dims[s], alg->prime());
        for (const auto& term : rel) {
            Matrix m = Matrix::identity(dims[s], alg->prime());
            for (int a : term.path) m = mats[a] * m;
            acc = acc + scaled(m, elem(term.coeff));
        }
        if (!acc.is_zero()) throw std::invalid_argument("relation " + std::to_string(r) + " does not vanish");
    }
}

Rep zero_rep(const AlgPtr& alg) {
    Rep m{alg, std::vector<int>(alg->num_vertices(), 0), {}};
    for (const auto& a : alg->quiver().arrows) {
        (void)a;
        m.mats.emplace_back(0, 0, alg->prime());
    }
    return m;
}

Rep simple(const AlgPtr& alg, int v) {
    Rep m = zero_rep(alg);
    m.dims[v] = 1;
    for (int a = 0; a < alg->quiver().num_arrows(); ++a) {
        const auto& ar = alg->quiver().arrows[a];
        m.mats[a] = Matrix(m.dims[ar.tgt], m.dims[ar.src], alg->prime());
    }
    return m;
}

Rep projective(const AlgPtr& alg, int v) {
    const Quiver& q = alg->quiver();
    Rep m{alg, std::vector<int>(q.num_vertices()), {}};
    for (int u = 0; u < q.num_vertices(); ++u) m.dims[u] = int(alg->paths_between(v, u).size());
    for (int a = 0; a < q.num_arrows(); ++a) {
        const auto& ar = q.arrows[a];
        Matrix mat(m.dims[ar.tgt], m.dims[ar.src], alg->prime());
        for (int b : alg->paths_between(v, ar.src)) {
            Vec x = alg->right_arrow(alg->unit(b), a);
            for (int c : alg->paths_between(v, ar.tgt)) mat.at(alg->local_index(c), alg->local_index(b)) = x[c];
        }
        m.mats.push_back(std::move(mat));
    }
    return m;
}

Rep projective_sum(const AlgPtr& alg, const std::vector<int>& verts) {
    std::vector<Rep> parts;
    for (int v : verts) parts.push_back(projective(alg, v));
    if (parts.empty()) return zero_rep(alg);
    return direct_sum_rep(parts);
}

std::vector<Matrix> path_mats(const Rep& m) {
    const AlgPtr& alg = m.alg;
    std::vector<Matrix> pm(alg->dim());
    for (int b = 0; b < alg->dim(); ++b) {
        const auto& bp = alg->basis_path(b);
        if (bp.arrows.empty())
            pm[b] = Matrix::identity(m.dims[bp.src], alg->prime());
        else
            pm[b] = m.mats[bp.arrows.back()] * pm[bp.prefix];
    }
    return pm;
}

Matrix act(const Rep& m, const std::vector<Matrix>& pm, const Vec& x, int src, int tgt) {
    Matrix out(m.dims[tgt], m.dims[src], m.prime());
    for (int b : m.alg->paths_between(src, tgt))
        if (x[b]) out = out + scaled(pm[b], x[b]);
    return out;
}

RepHom zero_hom(const Rep& m, const Rep& n) {
    RepHom f;
    for (std::size_t v = 0; v < m.dims.size(); ++v) f.at.emplace_back(n.dims[v], m.dims[v], m.prime());
    return f;
}

RepHom identity_hom(const Rep& m) {
    RepHom f;
    for (int d : m.dims) f.at.push_back(Matrix::identity(d, m.prime()));
    return f;
}

RepHom compose(const RepHom& g, const RepHom& f) {
    RepHom h;
    for (std::size_t v = 0; v < f.at.size(); ++v) h.at.push_back(g.at[v] * f.at[v]);
    return h;
}

RepHom add(const RepHom& f, const RepHom& g) {
    RepHom h;
    for (std::size_t v = 0; v < f.at.size(); ++v) h.at.push_back(f.at[v] + g.at[v]);
    return h;
}

RepHom scale(const RepHom& f, elem c) {
    RepHom h;
    for (const auto& m : f.at) h.at.push_back(scaled(m, c));
    return h;
}

RepHom neg(const RepHom& f) {
    RepHom h;
    for (const auto& m : f.at) h.at.push_back(-m);
    return h;
}

bool is_zero(const RepHom& f) {
    return std::all_of(f.at.begin(), f.at.end(), [](const Matrix& m) { return m.is_zero(); });
}

bool equal(const RepHom& f, const RepHom& g) { return is_zero(add(f, neg(g))); }

bool is_hom(const Rep& m, const Rep& n, const RepHom& f) {
    if (f.at.size() != m.dims.size()) return false;
    for (std::size_t v = 0; v < f.at.size(); ++v)
        if (f.at[v].rows() != n.dims[v] || f.at[v].cols() != m.dims[v]) return false;
    for (int a = 0; a < m.alg->quiver().num_arrows(); ++a) {
        const auto& ar = m.alg->quiver().arrows[a];
        if (n.mats[a] * f.at[ar.src] != f.at[ar.tgt] * m.mats[a]) return false;
    }
    return true;
}

bool is_iso(const RepHom& f) {
    for (const auto& m : f.at)
        if (m.rows() != m.cols() || rank(m) != m.rows()) return false;
    return true;
}

std::optional<RepHom> inverse(const RepHom& f) {
    RepHom g;
    for (const auto& m : f.at) {
        auto inv = inverse(m);
        if (!inv) return std::nullopt;
        g.at.push_back(*inv);
    }
    return g;
}

SumData direct_sum(const std::vector<Rep>& ms) {
    if (ms.empty()) throw std::invalid_argument("direct_sum needs at least one summand");
    const AlgPtr& alg = ms.front().alg;
    const int nv = alg->num_vertices();
    const elem p = alg->prime();
    SumData s;
    s.sum = zero_rep(alg);
    for (const auto& m : ms)
        for (int v = 0; v < nv; ++v) s.sum.dims[v] += m.dims[v];
    for (int a = 0; a < alg->quiver().num_arrows(); ++a) {
        const auto& ar = alg->quiver().arrows[a];
        Matrix mat(s.sum.dims[ar.tgt], s.sum.dims[ar.src], p);
        int r = 0, c = 0;
        for (const auto& m : ms) {
            put_block(mat, r, c, m.mats[a]);
            r += m.dims[ar.tgt];
            c += m.dims[ar.src];
        }
        s.sum.mats[a] = std::move(mat);
    }
    std::vector<int> off(nv, 0);
    for (const auto& m : ms) {
        RepHom in, out;
        for (int v = 0; v < nv; ++v) {
            Matrix i(s.sum.dims[v], m.dims[v], p), o(m.dims[v], s.sum.dims[v], p);
            for (int k = 0; k < m.dims[v]; ++k) {
                i.at(off[v] + k, k) = 1;
                o.at(k, off[v] + k) = 1;
            }
            in.at.push_back(std::move(i));
            out.at.push_back(std::move(o));
            off[v] += m.dims[v];
        }
        s.incl.push_back(std::move(in));
        s.proj.push_back(std::move(out));
    }
    return s;
}

Rep direct_sum_rep(const std::vector<Rep>& ms) { return direct_sum(ms).sum; }

RepHom block_hom(const std::vector<Rep>& tgt, const std::vector<Rep>& src,
                 const std::vector<std::vector<RepHom>>& entries) {
    const AlgPtr& alg = tgt.empty() ? src.front().alg : tgt.front().alg;
    const int nv = alg->num_vertices();
    RepHom f;
    for (int v = 0; v < nv; ++v) {
        int rows = 0, cols = 0;
        for (const auto& t : tgt) rows += t.dims[v];
        for (const auto& s : src) cols += s.dims[v];
        Matrix m(rows, cols, alg->prime());
        int r = 0;
        for (std::size_t i = 0; i < tgt.size(); ++i) {
            int c = 0;
            for (std::size_t j = 0; j < src.size(); ++j) {
                if (!entries[i][j].at.empty()) put_block(m, r, c, entries[i][j].at[v]);
                c += src[j].dims[v];
            }
            r += tgt[i].dims[v];
        }
        f.at.push_back(std::move(m));
    }
    return f;
}

Sub submodule(const Rep& m, const std::vector<Matrix>& spaces) {
    const AlgPtr& alg = m.alg;
    Sub s;
    s.rep = zero_rep(alg);
    for (int v = 0; v < alg->num_vertices(); ++v) {
        s.incl.at.push_back(independent(spaces[v]));
        s.rep.dims[v] = s.incl.at[v].cols();
    }
    for (int a = 0; a < alg->quiver().num_arrows(); ++a) {
        const auto& ar = alg->quiver().arrows[a];
        auto x = solve(s.incl.at[ar.tgt], m.mats[a] * s.incl.at[ar.src]);
        if (!x) throw std::runtime_error("subspaces are not stable under arrow '" + ar.name + "'");
        s.rep.mats[a] = *x;
    }
    return s;
}

Quot quotient(const Rep& m, const std::vector<Matrix>& spaces) {
    const AlgPtr& alg = m.alg;
    const elem p = alg->prime();
    Quot q;
    q.rep = zero_rep(alg);
    std::vector<Matrix> lift(alg->num_vertices());
    for (int v = 0; v < alg->num_vertices(); ++v) {
        Matrix s = independent(spaces[v]);
        Matrix id = Matrix::identity(m.dims[v], p);
        Matrix c = select_cols(id, extending_cols(s, id));
        Matrix t = hcat(s, c);
        Matrix tinv = *inverse(t);
        q.proj.at.push_back(block(tinv, s.cols(), 0, c.cols(), m.dims[v]));
        q.rep.dims[v] = c.cols();
        lift[v] = c;
    }
    for (int a = 0; a < alg->quiver().num_arrows(); ++a) {
        const auto& ar = alg->quiver().arrows[a];
        q.rep.mats[a] = q.proj.at[ar.tgt] * m.mats[a] * lift[ar.src];
    }
    return q;
}

Sub generated_submodule(const Rep& m, const std::vector<Matrix>& gens) {
    const AlgPtr& alg = m.alg;
    std::vector<Matrix> span(alg->num_vertices());
    for (int v = 0; v < alg->num_vertices(); ++v) span[v] = independent(gens[v]);
    bool grew = true;
    while (grew) {
        grew = false;
        for (int a = 0; a < alg->quiver().num_arrows(); ++a) {
            const auto& ar = alg->quiver().arrows[a];
            Matrix img = m.mats[a] * span[ar.src];
            auto extra = extending_cols(span[ar.tgt], img);
            if (!extra.empty()) {
                span[ar.tgt] = hcat(span[ar.tgt], select_cols(img, extra));
                grew = true;
            }
        }
    }
    return submodule(m, span);
}

Sub kernel(const Rep& m, const Rep& n, const RepHom& f) {
    (void)n;
    std::vector<Matrix> spaces;
    for (const auto& fv : f.at) spaces.push_back(nullspace(fv));
    return submodule(m, spaces);
}

Sub image(const Rep& m, const Rep& n, const RepHom& f) {
    (void)m;
    std::vector<Matrix> spaces;
    for (const auto& fv : f.at) spaces.push_back(independent(fv));
    return submodule(n, spaces);
}

Quot cokernel(const Rep& m, const Rep& n, const RepHom& f) {
    (void)m;
    std::vector<Matrix> spaces;
    for (const auto& fv : f.at) spaces.push_back(independent(fv));
    return quotient(n, spaces);
}

RepHom onto_image(const Rep& m, const Sub& img, const RepHom& f) {
    (void)m;
    return factor_through_mono(img.incl, f);
}

RepHom factor_through_mono(const RepHom& incl, const RepHom& f) {
    RepHom g;
    for (std::size_t v = 0; v < f.at.size(); ++v) {
        auto x = solve(incl.at[v], f.at[v]);
        if (!x) throw std::runtime_error("map does not factor through the given monomorphism");
        g.at.push_back(*x);
    }
    return g;
}

RepHom factor_through_epi(const RepHom& q, const RepHom& f) {
    RepHom g;
    for (std::size_t v = 0; v < f.at.size(); ++v) g.at.push_back(f.at[v] * section(q.at[v]));
    return g;
}

std::vector<Matrix> radical_spaces(const Rep& m) {
    const AlgPtr& alg = m.alg;
    std::vector<Matrix> spaces;
    for (int v = 0; v < alg->num_vertices(); ++v) spaces.push_back(zero_cols(m.dims[v], alg->prime()));
    for (int a = 0; a < alg->quiver().num_arrows(); ++a) {
        int t = alg->quiver().arrows[a].tgt;
        spaces[t] = hcat(spaces[t], m.mats[a]);
    }
    for (auto& s : spaces) s = independent(s);
    return spaces;
}

Sub radical(const Rep& m) { return submodule(m, radical_spaces(m)); }

Quot top(const Rep& m) { return quotient(m, radical_spaces(m)); }

std::vector<int> top_dims(const Rep& m) {
    auto rad = radical_spaces(m);
    std::vector<int> out;
    for (std::size_t v = 0; v < rad.size(); ++v) out.push_back(m.dims[v] - rad[v].cols());
    return out;
}

ProjMap zero_projmap(const AlgPtr& alg, const std::vector<int>& src, const std::vector<int>& tgt) {
    return {src, tgt, std::vector<std::vector<Vec>>(tgt.size(), std::vector<Vec>(src.size(), alg->zero()))};
}

ProjMap identity_projmap(const AlgPtr& alg, const std::vector<int>& verts) {
    ProjMap f = zero_projmap(alg, verts, verts);
    for (std::size_t i = 0; i < verts.size(); ++i) f.e[i][i] = alg->vertex_unit(verts[i]);
    return f;
}

ProjMap compose(const AlgPtr& alg, const ProjMap& g, const ProjMap& f) {
    if (g.src != f.tgt) throw std::invalid_argument("projective maps are not composable");
    ProjMap h = zero_projmap(alg, f.src, g.tgt);
    for (std::size_t k = 0; k < g.tgt.size(); ++k)
        for (std::size_t i = 0; i < f.tgt.size(); ++i) {
            if (alg->is_zero(g.e[k][i])) continue;
            for (std::size_t j = 0; j < f.src.size(); ++j)
                if (!alg->is_zero(f.e[i][j])) h.e[k][j] = alg->add(h.e[k][j], alg->mul(g.e[k][i], f.e[i][j]));
        }
    return h;
}

ProjMap add(const AlgPtr& alg, const ProjMap& f, const ProjMap& g) {
    if (f.src != g.src || f.tgt != g.tgt) throw std::invalid_argument("projective maps have different shapes");
    ProjMap h = f;
    for (std::size_t i = 0; i < f.tgt.size(); ++i)
        for (std::size_t j = 0; j < f.src.size(); ++j) h.e[i][j] = alg->add(f.e[i][j], g.e[i][j]);
    return h;
}

ProjMap scale(const AlgPtr& alg, const ProjMap& f, elem c) {
    ProjMap h = f;
    for (auto& row : h.e)
        for (auto& x : row) x = alg->scale(x, c);
    return h;
}

bool is_zero(const AlgPtr& alg, const ProjMap& f) {
    for (const auto& row : f.e)
        for (const auto& x : row)
            if (!alg->is_zero(x)) return false;
    return true;
}

int summand_offset(const AlgPtr& alg, const std::vector<int>& verts, int j, int u) {
    int off = 0;
    for (int k = 0; k < j; ++k) off += int(alg->paths_between(verts[k], u).size());
    return off;
}

RepHom to_hom(const AlgPtr& alg, const ProjMap& f) {
    const int nv = alg->num_vertices();
    RepHom h;
    for (int u = 0; u < nv; ++u) {
        int rows = summand_offset(alg, f.tgt, int(f.tgt.size()), u);
        int cols = summand_offset(alg, f.src, int(f.src.size()), u);
        Matrix m(rows, cols, alg->prime());
        int c0 = 0;
        for (std::size_t j = 0; j < f.src.size(); ++j) {
            const auto& paths = alg->paths_between(f.src[j], u);
            int r0 = 0;
            for (std::size_t i = 0; i < f.tgt.size(); ++i) {
                const auto& tpaths = alg->paths_between(f.tgt[i], u);
                if (!alg->is_zero(f.e[i][j]))
                    for (std::size_t k = 0; k < paths.size(); ++k) {
                        Vec x = alg->mul(f.e[i][j], alg->unit(paths[k]));
                        for (int b : tpaths) m.at(r0 + alg->local_index(b), c0 + int(k)) = x[b];
                    }
                r0 += int(tpaths.size());
            }
            c0 += int(paths.size());
        }
        h.at.push_back(std::move(m));
    }
    return h;
}

ProjMap projmap_from_columns(const AlgPtr& alg, const std::vector<int>& src, const std::vector<int>& tgt,
                             const std::vector<std::vector<elem>>& cols) {
    ProjMap f = zero_projmap(alg, src, tgt);
    for (std::size_t j = 0; j < src.size(); ++j) {
        int off = 0;
        for (std::size_t i = 0; i < tgt.size(); ++i) {
            const auto& paths = alg->paths_between(tgt[i], src[j]);
            for (std::size_t k = 0; k < paths.size(); ++k) f.e[i][j][paths[k]] = cols[j][off + k];
            off += int(paths.size());
        }
    }
    return f;
}

ProjMap dual_projmap(const AlgPtr& alg, const ProjMap& f) {
    AlgPtr op = alg->opposite();
    ProjMap g = zero_projmap(op, f.tgt, f.src);
    for (std::size_t i = 0; i < f.tgt.size(); ++i)
        for (std::size_t j = 0; j < f.src.size(); ++j) g.e[j][i] = alg->to_opposite(f.e[i][j]);
    return g;
}

RepHom hom_from_generators(const Rep& n, const std::vector<int>& verts, const std::vector<std::vector<elem>>& gens) {
    const AlgPtr& alg = n.alg;
    auto pm = path_mats(n);
    RepHom h;
    for (int u = 0; u < alg->num_vertices(); ++u) {
        int cols = summand_offset(alg, verts, int(verts.size()), u);
        Matrix m(n.dims[u], cols, alg->prime());
        int c = 0;
        for (std::size_t j = 0; j < verts.size(); ++j)
            for (int b : alg->paths_between(verts[j], u)) {
                m.set_col(c++, mat_vec(pm[b], gens[j]));
            }
        h.at.push_back(std::move(m));
    }
    return h;
}

Cover projective_cover(const Rep& m) {
    const AlgPtr& alg = m.alg;
    auto rad = radical_spaces(m);
    Cover c;
    for (int v = 0; v < alg->num_vertices(); ++v) {
        Matrix id = Matrix::identity(m.dims[v], alg->prime());
        for (int k : extending_cols(rad[v], id)) {
            c.verts.push_back(v);
            c.gens.push_back(unit_vector(m.dims[v], k));
        }
    }
    c.proj = projective_sum(alg, c.verts);
    c.epi = hom_from_generators(m, c.verts, c.gens);
    return c;
}

namespace {

// Generator columns of a cover of a submodule, in ambient coordinates.
std::vector<std::vector<elem>> ambient_gens(const Cover& c, const RepHom& incl) {
    std::vector<std::vector<elem>> cols;
    for (std::size_t j = 0; j < c.verts.size(); ++j) cols.push_back(mat_vec(incl.at[c.verts[j]], c.gens[j]));
    return cols;
}

}  // namespace

Presentation presentation(const Rep& m) {
    Presentation pr;
    pr.cover = projective_cover(m);
    Sub k = kernel(pr.cover.proj, m, pr.cover.epi);
    Cover kc = projective_cover(k.rep);
    pr.rel = projmap_from_columns(m.alg, kc.verts, pr.cover.verts, ambient_gens(kc, k.incl));
    return pr;
}

Resolution resolve_module(const Rep& m, int length) {
    Resolution r;
    r.alg = m.alg;
    r.cover = projective_cover(m);
    r.verts.push_back(r.cover.verts);
    Rep cur = r.cover.proj;
    Rep below = m;
    RepHom map = r.cover.epi;
    for (int i = 0; i < length; ++i) {
        Sub k = kernel(cur, below, map);
        if (k.rep.is_zero()) {
            r.finite = true;
            break;
        }
        Cover kc = projective_cover(k.rep);
        r.d.push_back(projmap_from_columns(m.alg, kc.verts, r.verts.back(), ambient_gens(kc, k.incl)));
        r.verts.push_back(kc.verts);
        map = compose(k.incl, kc.epi);
        below = cur;
        cur = kc.proj;
    }
    if (!r.finite && int(r.d.size()) == length) {
        Sub k = kernel(cur, below, map);
        r.finite = k.rep.is_zero();
    }
    return r;
}

int hom_proj_dim(const Rep& n, const std::vector<int>& verts) {
    int s = 0;
    for (int v : verts) s += n.dims[v];
    return s;
}

Matrix precompose_matrix(const AlgPtr& alg, const Rep& n, const std::vector<Matrix>& pm, const ProjMap& f) {
    Matrix out(hom_proj_dim(n, f.src), hom_proj_dim(n, f.tgt), alg->prime());
    int r = 0;
    for (std::size_t j = 0; j < f.src.size(); ++j) {
        int c = 0;
        for (std::size_t i = 0; i < f.tgt.size(); ++i) {
            if (!alg->is_zero(f.e[i][j])) put_block(out, r, c, act(n, pm, f.e[i][j], f.tgt[i], f.src[j]));
            c += n.dims[f.tgt[i]];
        }
        r += n.dims[f.src[j]];
    }
    return out;
}

std::vector<RepHom> hom_space(const Rep& m, const Rep& n) {
    if (!m.alg->same_as(*n.alg)) throw std::invalid_argument("hom_space: modules over different algebras");
    Presentation pr = presentation(m);
    auto pm = path_mats(n);
    Matrix constraint = precompose_matrix(m.alg, n, pm, pr.rel);
    Matrix sol = nullspace(constraint);
    std::vector<Matrix> sections;
    for (const auto& q : pr.cover.epi.at) sections.push_back(section(q));
    std::vector<RepHom> out;
    for (int k = 0; k < sol.cols(); ++k) {
        std::vector<std::vector<elem>> gens;
        int off = 0;
        for (int v : pr.cover.verts) {
            std::vector<elem> g(n.dims[v]);
            for (int t = 0; t < n.dims[v]; ++t) g[t] = sol(off + t, k);
            off += n.dims[v];
            gens.push_back(std::move(g));
        }
        RepHom phi = hom_from_generators(n, pr.cover.verts, gens);
        RepHom f;
        for (std::size_t v = 0; v < phi.at.size(); ++v) f.at.push_back(phi.at[v] * sections[v]);
        out.push_back(std::move(f));
    }
    return out;
}

std::vector<RepHom> hom_space_direct(const Rep& m, const Rep& n) {
    if (!m.alg->same_as(*n.alg)) throw std::invalid_argument("hom_space: modules over different algebras");
    const AlgPtr& alg = m.alg;
    const int nv = alg->num_vertices();
    std::vector<int> off(nv + 1, 0);
    for (int v = 0; v < nv; ++v) off[v + 1] = off[v] + n.dims[v] * m.dims[v];
    int rows = 0;
    for (const auto& ar : alg->quiver().arrows) rows += n.dims[ar.tgt] * m.dims[ar.src];
    Matrix sys(rows, off[nv], alg->prime());
    int r = 0;
    for (int a = 0; a < alg->quiver().num_arrows(); ++a) {
        const auto& ar = alg->quiver().arrows[a];
        const int v = ar.src, w = ar.tgt;
        for (int i = 0; i < n.dims[w]; ++i)
            for (int j = 0; j < m.dims[v]; ++j, ++r) {
                for (int k = 0; k < n.dims[v]; ++k) {
                    int c = off[v] + k * m.dims[v] + j;
                    sys.at(r, c) = add_mod(sys(r, c), n.mats[a](i, k), alg->prime());
                }
                for (int k = 0; k < m.dims[w]; ++k) {
                    int c = off[w] + i * m.dims[w] + k;
                    sys.at(r, c) = sub_mod(sys(r, c), m.mats[a](k, j), alg->prime());
                }
            }
    }
    Matrix sol = nullspace(sys);
    std::vector<RepHom> out;
    for (int k = 0; k < sol.cols(); ++k) {
        RepHom f;
        for (int v = 0; v < nv; ++v) {
            Matrix fv(n.dims[v], m.dims[v], alg->prime());
            for (int i = 0; i < n.dims[v]; ++i)
                for (int j = 0; j < m.dims[v]; ++j) fv.at(i, j) = sol(off[v] + i * m.dims[v] + j, k);
            f.at.push_back(std::move(fv));
        }
        out.push_back(std::move(f));
    }
    return out;
}

int hom_dim(const Rep& m, const Rep& n) { return int(hom_space(m, n).size()); }

int ext_dim_with_length(const Rep& m, const Rep& n, int i, int length) {
    if (i < 0) throw std::invalid_argument("negative ext degree");
    if (length < i + 1) throw std::invalid_argument("resolution too short for requested degree");
    if (i == 0) return hom_dim(m, n);
    Resolution r = resolve_module(m, length);
    if (int(r.verts.size()) <= i) return 0;
    auto pm = path_mats(n);
    const int ci = hom_proj_dim(n, r.verts[i]);
    int out_rank = 0, in_rank = 0;
    if (int(r.d.size()) > i) out_rank = rank(precompose_matrix(m.alg, n, pm, r.d[i]));
    in_rank = rank(precompose_matrix(m.alg, n, pm, r.d[i - 1]));
    return ci - out_rank - in_rank;
}

int ext_dim(const Rep& m, const Rep& n, int i) { return ext_dim_with_length(m, n, i, i + 1); }

StripResult strip_projectives(const Rep& m) {
    const AlgPtr& alg = m.alg;
    StripResult res{m, identity_hom(m), identity_hom(m), {}};
    bool changed = true;
    while (changed) {
        changed = false;
        for (int v = 0; v < alg->num_vertices() && !changed; ++v) {
            const Rep& cur = res.core;
            if (cur.dims[v] == 0) continue;
            Rep pv = projective(alg, v);
            const int ev = alg->local_index(alg->trivial(v));
            for (const auto& g : hom_space(cur, pv)) {
                int col = -1;
                for (int c = 0; c < cur.dims[v] && col < 0; ++c)
                    if (g.at[v](ev, c)) col = c;
                if (col < 0) continue;
                std::vector<elem> mv(cur.dims[v], 0);
                mv[col] = 1;
                RepHom f = hom_from_generators(cur, std::vector<int>{v}, std::vector<std::vector<elem>>{mv});
                RepHom gf_inv = *inverse(compose(g, f));
                RepHom e = compose(f, compose(gf_inv, g));
                Sub k = kernel(cur, pv, g);
                RepHom to_k = factor_through_mono(k.incl, add(identity_hom(cur), neg(e)));
                res.incl = compose(res.incl, k.incl);
                res.proj = compose(to_k, res.proj);
                res.core = k.rep;
                res.removed.push_back(v);
                changed = true;
                break;
            }
        }
    }
    std::sort(res.removed.begin(), res.removed.end());
    return res;
}

bool is_projective(const Rep& m) { return strip_projectives(m).core.is_zero(); }

Rep syzygy(const Rep& m, int k) {
    if (k < 0) throw std::invalid_argument("negative syzygy index");
    Rep cur = m;
    for (int i = 0; i < k; ++i) {
        Cover c = projective_cover(cur);
        cur = kernel(c.proj, cur, c.epi).rep;
        if (cur.is_zero()) break;
    }
    return strip_projectives(cur).core;
}

Rep dual(const Rep& m) {
    AlgPtr op = m.alg->opposite();
    Rep d{op, m.dims, {}};
    for (const auto& mat : m.mats) d.mats.push_back(sf::transpose(mat));
    return d;
}

RepHom dual(const RepHom& f) {
    RepHom g;
    for (const auto& m : f.at) g.at.push_back(sf::transpose(m));
    return g;
}

Rep transpose(const Rep& m) {
    AlgPtr op = m.alg->opposite();
    if (m.is_zero()) return zero_rep(op);
    Presentation pr = presentation(m);
    ProjMap d = dual_projmap(m.alg, pr.rel);
    Rep src = projective_sum(op, d.src), tgt = projective_sum(op, d.tgt);
    return cokernel(src, tgt, to_hom(op, d)).rep;
}

namespace {

Matrix mat_pow(Matrix m, int e) {
    Matrix r = Matrix::identity(m.rows(), m.prime());
    while (e > 0) {
        if (e & 1) r = r * m;
        m = m * m;
        e >>= 1;
    }
    return r;
}

RepHom hom_pow(const RepHom& f, int e) {
    RepHom g;
    for (const auto& m : f.at) g.at.push_back(mat_pow(m, e));
    return g;
}

bool is_nilpotent(const RepHom& f) {
    for (const auto& m : f.at)
        if (!mat_pow(m, m.rows()).is_zero()) return false;
    return true;
}

std::vector<elem> flatten(const RepHom& f) {
    std::vector<elem> out;
    for (const auto& m : f.at) out.insert(out.end(), m.data().begin(), m.data().end());
    return out;
}

Matrix as_columns(const std::vector<RepHom>& fs, int len, elem p) {
    Matrix m(len, int(fs.size()), p);
    for (std::size_t j = 0; j < fs.size(); ++j) m.set_col(int(j), flatten(fs[j]));
    return m;
}

RepHom random_combination(const std::vector<RepHom>& basis, std::mt19937_64& rng, elem p) {
    std::uniform_int_distribution<elem> d(0, p - 1);
    RepHom f = scale(basis[0], d(rng));
    for (std::size_t k = 1; k < basis.size(); ++k) f = add(f, scale(basis[k], d(rng)));
    return f;
}

}  // namespace

bool has_local_endomorphisms(const Rep& m) {
    const int total = m.total_dim();
    if (total == 0) return false;
    const elem p = m.prime();
    auto ends = hom_space(m, m);
    RepHom id = identity_hom(m);
    std::vector<RepHom> nil;
    for (const auto& e : ends) {
        std::optional<elem> lambda;
        if (total % p != 0) {
            elem tr = 0;
            for (const auto& mat : e.at)
                for (int i = 0; i < mat.rows(); ++i) tr = add_mod(tr, mat(i, i), p);
            elem l = mul_mod(tr, inv_mod(elem(total % p), p), p);
            if (is_nilpotent(add(e, scale(id, neg_mod(l, p))))) lambda = l;
        } else if (p <= 1000) {
            for (elem l = 0; l < p && !lambda; ++l)
                if (is_nilpotent(add(e, scale(id, neg_mod(l, p))))) lambda = l;
        }
        if (!lambda) return false;
        nil.push_back(add(e, scale(id, neg_mod(*lambda, p))));
    }
    const int len = int(flatten(id).size());
    Matrix nb = as_columns(nil, len, p);
    if (rank(nb) != int(ends.size()) - 1) return false;
    std::vector<RepHom> gens;
    for (int c : independent_cols(nb)) gens.push_back(nil[c]);
    std::vector<RepHom> power = gens;
    for (int step = 0; step <= total; ++step) {
        if (power.empty()) return true;
        std::vector<RepHom> next;
        for (const auto& x : power)
            for (const auto& y : gens) next.push_back(compose(x, y));
        Matrix cols = as_columns(next, len, p);
        power.clear();
        for (int c : independent_cols(cols)) power.push_back(next[c]);
    }
    return false;
}

Decomposition decompose(const Rep& m, std::uint64_t seed) {
    Decomposition out;
    out.seed = seed;
    std::mt19937_64 rng(seed);
    std::vector<Rep> work{m};
    while (!work.empty()) {
        Rep cur = work.back();
        work.pop_back();
        const int total = cur.total_dim();
        if (total == 0) continue;
        auto ends = hom_space(cur, cur);
        if (total == 1 || ends.size() == 1) {
            out.parts.push_back(cur);
            continue;
        }
        bool split = false;
        std::vector<RepHom> trials = ends;
        for (int t = 0; t < 40; ++t) trials.push_back(random_combination(ends, rng, m.prime()));
        for (const auto& phi : trials) {
            RepHom f = hom_pow(phi, total);
            if (is_zero(f) || is_iso(f)) continue;
            Sub im = image(cur, cur, f);
            Sub ker = kernel(cur, cur, f);
            work.push_back(ker.rep);
            work.push_back(im.rep);
            split = true;
            break;
        }
        if (split) continue;
        if (!has_local_endomorphisms(cur))
            throw std::runtime_error("decompose: could not certify a summand of dimension " + std::to_string(total) +
                                     " after splitting into " + std::to_string(out.parts.size()) + " parts");
        out.parts.push_back(cur);
    }
    return out;
}

std::optional<RepHom> find_iso(const Rep& m, const Rep& n, std::uint64_t seed) {
    if (!m.alg->same_as(*n.alg)) return std::nullopt;
    if (m.dims != n.dims) return std::nullopt;
    if (m.is_zero()) return zero_hom(m, n);
    auto homs = hom_space(m, n);
    if (homs.empty()) return std::nullopt;
    const elem p = m.prime();
    std::mt19937_64 rng(seed);
    for (int t = 0; t < 30; ++t) {
        RepHom f = random_combination(homs, rng, p);
        if (is_iso(f)) return f;
    }
    double space = 1;
    for (std::size_t k = 0; k < homs.size() && space <= 1e5; ++k) space *= double(p);
    if (space > 1e5) return std::nullopt;
    std::vector<elem> c(homs.size(), 0);
    while (true) {
        std::size_t k = 0;
        while (k < c.size() && ++c[k] == p) c[k++] = 0;
        if (k == c.size()) break;
        RepHom f = zero_hom(m, n);
        for (std::size_t j = 0; j < c.size(); ++j)
            if (c[j]) f = add(f, scale(homs[j], c[j]));
        if (is_iso(f)) return f;
    }
    return std::nullopt;
}

bool is_isomorphic(const Rep& m, const Rep& n, std::uint64_t seed) { return find_iso(m, n, seed).has_value(); }

std::string dim_vector(const Rep& m) {
    std::ostringstream os;
    os << "(";
    for (std::size_t v = 0; v < m.dims.size(); ++v) os << (v ? "," : "") << m.dims[v];
    os << ")";
    return os.str();
}

std::string describe(const Rep& m) {
    std::ostringstream os;
    os << "dim " << m.total_dim() << " " << dim_vector(m);
    return os.str();
}

}  // namespace sf
