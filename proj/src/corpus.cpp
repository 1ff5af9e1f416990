#include "stabfun/corpus.hpp"

#include <algorithm>
#include <stdexcept>

namespace sf {

AlgPtr algebra_A(int n, elem p) {
    Quiver q;
    for (int v = 0; v <= 2 * n + 1; ++v) q.vertices.push_back(std::to_string(v));
    std::vector<int> alpha(2 * n + 2, -1), beta(2 * n + 2, -1);
    for (int j = 0; j <= n; ++j) {
        int v = 2 * j + 1;
        alpha[v] = q.num_arrows();
        q.arrows.push_back({"alpha" + std::to_string(v), v, v - 1});
        if (j < n) {
            beta[v] = q.num_arrows();
            q.arrows.push_back({"beta" + std::to_string(v), v, v + 2});
        }
    }
    std::vector<Relation> rels;
    for (int j = 0; j < n; ++j) rels.push_back({{1, {beta[2 * j + 1], alpha[2 * j + 3]}}});
    return Algebra::create(std::move(q), std::move(rels), p, "A" + std::to_string(n));
}

AlgPtr algebra_B(int n, elem p) { return path_algebra_linear(2 * n + 2, p, "B" + std::to_string(n)); }

Rep random_module(const AlgPtr& alg, std::mt19937_64& rng, int max_gens, double density) {
    const int nv = alg->num_vertices();
    std::uniform_int_distribution<int> vd(0, nv - 1), cnt(1, max_gens);
    std::uniform_int_distribution<elem> cd(0, alg->prime() - 1);
    std::bernoulli_distribution keep(density);
    std::vector<int> tgt, src;
    for (int k = cnt(rng); k > 0; --k) tgt.push_back(vd(rng));
    for (int k = std::uniform_int_distribution<int>(0, max_gens)(rng); k > 0; --k) src.push_back(vd(rng));
    std::sort(tgt.begin(), tgt.end());
    std::sort(src.begin(), src.end());
    ProjMap f = zero_projmap(alg, src, tgt);
    for (std::size_t i = 0; i < tgt.size(); ++i)
        for (std::size_t j = 0; j < src.size(); ++j)
            for (int b : alg->paths_between(tgt[i], src[j]))
                if (!alg->basis_path(b).arrows.empty() && keep(rng)) f.e[i][j][b] = cd(rng);
    Rep s = projective_sum(alg, src), t = projective_sum(alg, tgt);
    return cokernel(s, t, to_hom(alg, f)).rep;
}

Example worked_example(int n, elem p) {
    Example ex;
    ex.n = n;
    ex.A = algebra_A(n, p);
    ex.B = algebra_B(n, p);
    ex.Lambda = dual_numbers_extension(ex.A, "Lambda" + std::to_string(n));
    ex.Gamma = dual_numbers_extension(ex.B, "Gamma" + std::to_string(n));
    const AlgPtr& a = ex.A;
    const Quiver& qa = a->quiver();
    // T_{2i+1} = P_{2i+1} in degree 1, T_{2i} = P_{2i} -> P_{2i+1} in degrees 0, 1
    for (int v = 0; v <= 2 * n + 1; ++v) {
        if (v % 2) {
            ex.tilting.push_back(proj_stalk(a, {v}, 1));
        } else {
            ProjMap d = zero_projmap(a, {v}, {v + 1});
            d.e[0][0] = a->reduce_path(v + 1, {qa.arrow("alpha" + std::to_string(v + 1))});
            ex.tilting.push_back(ProjComplex{a, 0, {{v}, {v + 1}}, {d}});
        }
    }
    FunctorData f{"F", ex.B, a, ex.tilting, {}, 1};
    for (const auto& ar : ex.B->quiver().arrows) {
        ProjChainMap cm;
        if (ar.src % 2 == 0) {
            // T_{2i+1} -> T_{2i}: identity on P_{2i+1} in degree 1
            cm.maps[1] = identity_projmap(a, {ar.tgt});
        } else {
            // T_{2i+2} -> T_{2i+1}: beta on the degree-1 terms
            ProjMap m = zero_projmap(a, {ar.tgt + 1}, {ar.src});
            m.e[0][0] = a->reduce_path(ar.src, {qa.arrow("beta" + std::to_string(ar.src))});
            cm.maps[1] = m;
        }
        f.arrow_maps.push_back(cm);
    }
    f.validate();
    ex.F = f;
    FunctorData h = hom_functor(f);
    int lo = 0;
    for (const auto& im : h.images) {
        ProjComplex m = proj_trim(minimize(im).p);
        if (!m.empty()) lo = std::min(lo, m.lo);
    }
    ex.g_shift = -lo;
    ex.G = shift_down(h, ex.g_shift);
    ex.G.name = "G";
    ex.G.width = 0;
    for (const auto& im : ex.G.images)
        if (!im.empty()) ex.G.width = std::max(ex.G.width, im.hi());
    ex.Fp = dual_numbers_functor(ex.F, ex.Gamma, ex.Lambda);
    ex.Fp.name = "F'";
    ex.Gp = dual_numbers_functor(ex.G, ex.Lambda, ex.Gamma);
    ex.Gp.name = "G'";
    return ex;
}

Rep eps_module(const AlgPtr& gamma, const Rep& base, const std::vector<Matrix>& eps) {
    Rep m = zero_rep(gamma);
    const Quiver& q = gamma->quiver();
    const Quiver& qb = base.alg->quiver();
    for (int v = 0; v < q.num_vertices(); ++v) m.dims[v] = base.dims[qb.vertex(q.vertices[v])];
    for (int k = 0; k < q.num_arrows(); ++k) {
        const Arrow& ar = q.arrows[k];
        if (ar.src == ar.tgt && ar.name == "eps" + q.vertices[ar.src])
            m.mats[k] = eps[qb.vertex(q.vertices[ar.src])];
        else
            m.mats[k] = base.mats[qb.arrow(ar.name)];
    }
    m.validate();
    return m;
}

Rep simple_tensor(const AlgPtr& gamma, const Rep& x) {
    std::vector<Matrix> eps;
    for (int v = 0; v < x.alg->num_vertices(); ++v) eps.push_back(Matrix(x.dims[v], x.dims[v], x.prime()));
    return eps_module(gamma, x, eps);
}

Rep free_tensor(const AlgPtr& gamma, const Rep& x) {
    Rep xx = direct_sum_rep({x, x});
    std::vector<Matrix> eps;
    for (int v = 0; v < x.alg->num_vertices(); ++v) {
        Matrix e(2 * x.dims[v], 2 * x.dims[v], x.prime());
        for (int i = 0; i < x.dims[v]; ++i) e.at(x.dims[v] + i, i) = 1;
        eps.push_back(e);
    }
    return eps_module(gamma, xx, eps);
}

Rep gp_module(const Example& ex, int i, int l) {
    const int top = 2 * ex.n + 2;
    if (i < 0 || l < 1 || i + l > top) throw std::invalid_argument("gp_module: need 1 <= l <= 2n+2-i");
    Rep qi = projective(ex.B, i);
    if (i + l == top) return simple_tensor(ex.Gamma, qi);
    Rep ql = projective(ex.B, i + l);
    Rep sum = direct_sum_rep({qi, ql});
    // inclusion Q_{i+l} -> Q_i at each vertex
    RepHom inc = hom_from_generators(qi, {i + l}, {std::vector<elem>(qi.dims[i + l], 1)});
    std::vector<Matrix> eps;
    for (int v = 0; v < ex.B->num_vertices(); ++v) {
        Matrix e(sum.dims[v], sum.dims[v], sum.prime());
        put_block(e, 0, qi.dims[v], inc.at[v]);
        eps.push_back(e);
    }
    return eps_module(ex.Gamma, sum, eps);
}

std::vector<GPModule> gp_modules(const Example& ex) {
    std::vector<GPModule> out;
    const int top = 2 * ex.n + 2;
    for (int i = 0; i < top; ++i)
        for (int l = 1; i + l <= top; ++l) out.push_back({i, l, gp_module(ex, i, l)});
    return out;
}

std::vector<ShortExact> gp_sequences(const Example& ex) {
    std::vector<ShortExact> out;
    const int top = 2 * ex.n + 2;
    for (int i = 0; i < top; ++i)
        for (int l = 1; i + l < top; ++l) {
            Rep qi = projective(ex.B, i), ql = projective(ex.B, i + l);
            Rep x = simple_tensor(ex.Gamma, qi), z = simple_tensor(ex.Gamma, ql);
            Rep y = gp_module(ex, i, l);
            RepHom f, g;
            for (int v = 0; v < ex.Gamma->num_vertices(); ++v) {
                Matrix fv(y.dims[v], x.dims[v], y.prime()), gv(z.dims[v], y.dims[v], y.prime());
                for (int k = 0; k < x.dims[v]; ++k) fv.at(k, k) = 1;
                for (int k = 0; k < z.dims[v]; ++k) gv.at(k, x.dims[v] + k) = 1;
                f.at.push_back(fv);
                g.at.push_back(gv);
            }
            out.push_back({"M(" + std::to_string(i) + "," + std::to_string(l) + ")", x, y, z, f, g});
        }
    return out;
}

std::vector<Rep> tree_string_modules(const AlgPtr& alg) {
    const Quiver& q = alg->quiver();
    const int nv = q.num_vertices();
    if (nv > 20) throw std::invalid_argument("tree_string_modules: quiver too large");
    std::vector<Rep> out;
    for (unsigned mask = 1; mask < (1u << nv); ++mask) {
        // connectivity through arrows inside the set
        int first = __builtin_ctz(mask);
        unsigned seen = 1u << first, frontier = seen;
        while (frontier) {
            unsigned next = 0;
            for (const auto& ar : q.arrows) {
                unsigned s = 1u << ar.src, t = 1u << ar.tgt;
                if (!(mask & s) || !(mask & t) || ar.src == ar.tgt) continue;
                if ((frontier & s) && !(seen & t)) next |= t;
                if ((frontier & t) && !(seen & s)) next |= s;
            }
            seen |= next;
            frontier = next;
        }
        if (seen != mask) continue;
        Rep m = zero_rep(alg);
        for (int v = 0; v < nv; ++v) m.dims[v] = (mask >> v) & 1;
        for (int k = 0; k < q.num_arrows(); ++k) {
            const Arrow& ar = q.arrows[k];
            m.mats[k] = Matrix(m.dims[ar.tgt], m.dims[ar.src], alg->prime());
            if (m.dims[ar.src] && m.dims[ar.tgt] && ar.src != ar.tgt) m.mats[k].at(0, 0) = 1;
        }
        try {
            m.validate();
        } catch (const std::exception&) {
            continue;
        }
        out.push_back(m);
    }
    return out;
}

}  // namespace sf
