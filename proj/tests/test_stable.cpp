#include <random>

#include "complex_gen.hpp"
#include "doctest.h"
#include "stabfun/corpus.hpp"
#include "stabfun/stable.hpp"

using namespace sf;

namespace {

constexpr elem P = 101;

const Example& ex1() {
    static const Example ex = worked_example(1, P);
    return ex;
}

// Maps factoring through some projective, spanned by composites through every P_v.
int brute_factoring_dim(const Rep& x, const Rep& y) {
    std::vector<std::vector<elem>> cols;
    for (int v = 0; v < x.alg->num_vertices(); ++v) {
        Rep pv = projective(x.alg, v);
        for (const auto& a : hom_space(x, pv))
            for (const auto& b : hom_space(pv, y)) {
                std::vector<elem> c;
                for (const auto& m : compose(b, a).at) c.insert(c.end(), m.data().begin(), m.data().end());
                cols.push_back(c);
            }
    }
    if (cols.empty() || cols[0].empty()) return 0;
    Matrix m(int(cols[0].size()), int(cols.size()), P);
    for (std::size_t k = 0; k < cols.size(); ++k) m.set_col(int(k), cols[k]);
    return rank(m);
}

AlgPtr dual_k() { return dual_numbers_extension(one_vertex(P)); }

std::vector<Rep> small_corpus(const AlgPtr& alg, std::mt19937_64& rng, int count) {
    std::vector<Rep> out;
    for (int v = 0; v < alg->num_vertices(); ++v) out.push_back(simple(alg, v));
    while (int(out.size()) < count) out.push_back(random_module(alg, rng));
    return out;
}

}  // namespace

TEST_CASE("stable hom spaces") {
    auto k = dual_k();
    Rep s = simple(k, 0);
    CHECK(stable_hom(s, s).dim == 1);
    Rep kk = projective(k, 0);
    CHECK(stable_hom(kk, s).dim == 0);
    CHECK(stable_hom(s, kk).dim == 0);
    const Example& ex = ex1();
    Rep sp1 = simple_tensor(ex.Lambda, projective(ex.A, 1));
    CHECK(stable_hom(sp1, sp1).dim > 0);
    std::mt19937_64 rng(11);
    for (const AlgPtr& alg : {ex.A, ex.Gamma, k}) {
        for (int t = 0; t < 6; ++t) {
            Rep x = random_module(alg, rng), y = random_module(alg, rng);
            StableHomSpace sh = stable_hom(x, y);
            CHECK(sh.hom_dim - sh.dim == brute_factoring_dim(x, y));
            for (int v = 0; v < alg->num_vertices(); ++v) CHECK(stable_hom(projective(alg, v), y).dim == 0);
        }
    }
}

TEST_CASE("stable isomorphism") {
    std::mt19937_64 rng(12);
    const Example& ex = ex1();
    for (int t = 0; t < 5; ++t) {
        Rep x = random_module(ex.Gamma, rng);
        for (int v = 0; v < 4; ++v) CHECK(stable_iso(x, direct_sum_rep({x, projective(ex.Gamma, v)})));
    }
    CHECK_FALSE(stable_iso(simple(ex.A, 0), simple(ex.A, 1)));
    CHECK(stable_iso(projective(ex.A, 2), zero_rep(ex.A)));
}

TEST_CASE("identity data gives the module back") {
    std::mt19937_64 rng(13);
    const Example& ex = ex1();
    for (const AlgPtr& alg : {ex.A, ex.Gamma}) {
        FunctorData id = identity_functor(alg);
        for (const Rep& x : small_corpus(alg, rng, 8)) {
            StableImage si = stable_image(id, x);
            CHECK(stable_iso(si.m, x));
            CHECK(si.tri.u.empty());
        }
    }
}

TEST_CASE("non-negativity is required") {
    auto a = algebra_A(1, P);
    FunctorData neg = shift_down(identity_functor(a), -1);
    CHECK_THROWS_AS(stable_image(neg, simple(a, 0)), std::invalid_argument);
}

TEST_CASE("shift data gives syzygies") {
    std::mt19937_64 rng(14);
    const Example& ex = ex1();
    auto k = dual_k();
    CHECK(stable_iso(stable_image(omega_functor(k, 1), simple(k, 0)).m, simple(k, 0)));
    for (int kk = 0; kk <= 2; ++kk) {
        FunctorData om = omega_functor(ex.Gamma, kk);
        for (const Rep& x : small_corpus(ex.Gamma, rng, 10)) {
            StableImage si = stable_image(om, x);
            CHECK(stable_iso(si.m, syzygy(x, kk)));
            CHECK(si.core().dims == strip_projectives(syzygy(x, kk)).core.dims);
        }
    }
}

TEST_CASE("the worked functor on odd simple tensors") {
    const Example& ex = ex1();
    for (int i = 0; i <= ex.n; ++i) {
        const int v = 2 * i + 1;
        Rep x = simple_tensor(ex.Gamma, projective(ex.B, v));
        StableImage si = stable_image(ex.Fp, x);
        Rep expect = simple_tensor(ex.Lambda, projective(ex.A, v));
        CHECK(stable_iso(si.m, expect));
        CHECK(stable_iso(syzygy(expect, 1), expect));
    }
}

TEST_CASE("the truncation triangle") {
    std::mt19937_64 rng(15);
    const Example& ex = ex1();
    for (const Rep& x : small_corpus(ex.Gamma, rng, 8)) {
        StableImage si = stable_image(ex.Fp, x);
        CHECK(si.tri.u.lo == 1);
        CHECK_NOTHROW(si.tri.u.validate());
        CHECK(si.tri.c.hi() <= ex.Fp.width);
        Complex c = materialize(si.tri.c);
        Complex d = si.tri.d;
        for (int i = 0; i <= c.hi(); ++i) CHECK(homology_dims(c, i) == homology_dims(d, i));
        CHECK(is_hom(c.term(0), si.m, si.tri.q));
    }
}

TEST_CASE("resolution strategies agree naturally") {
    std::mt19937_64 rng(16);
    const Example& ex = ex1();
    auto mods = small_corpus(ex.Gamma, rng, 6);
    for (const Rep& x : mods) {
        StableImage m = stable_image(ex.Fp, x, Strategy::Minimal);
        for (Strategy s : {Strategy::Raw, Strategy::Padded}) {
            StableImage o = stable_image(ex.Fp, x, s);
            CHECK(stable_iso(m.m, o.m));
            RepHom th = comparison(o, m);
            CHECK(is_iso(compose(m.strip.proj, compose(th, o.strip.incl))));
        }
    }
    for (int t = 0; t < 6; ++t) {
        const Rep& x = mods[rng() % mods.size()];
        const Rep& y = mods[rng() % mods.size()];
        RepHom phi = gen::random_hom(x, y, rng);
        StableMap a = stable_image_map(ex.Fp, phi, x, y, Strategy::Minimal);
        for (Strategy s : {Strategy::Raw, Strategy::Padded}) {
            StableMap b = stable_image_map(ex.Fp, phi, x, y, s);
            RepHom tx = comparison(b.x, a.x), ty = comparison(b.y, a.y);
            StableHomSpace sh = stable_hom(b.x.m, a.y.m);
            CHECK(sh.equal(compose(ty, b.b), compose(a.b, tx)));
        }
    }
}

TEST_CASE("homotopy-equivalent data give naturally isomorphic images") {
    std::mt19937_64 rng(17);
    const Example& ex = ex1();
    PaddedFunctor pf = padded_functor(ex.Fp, 1);
    CHECK_NOTHROW(pf.g.validate());
    auto mods = small_corpus(ex.Gamma, rng, 6);
    for (const Rep& x : mods) {
        StableImage a = stable_image(ex.Fp, x, Strategy::Raw), b = stable_image(pf.g, x, Strategy::Raw);
        CHECK(stable_iso(a.m, b.m));
        ProjChainMap eta = apply_transformation(ex.Fp, pf.g, pf.incl, a.image.res.p);
        CHECK(is_proj_chain_map(eta, a.image.fx, b.image.fx));
        RepHom th = induced_on_m(a, b, eta);
        CHECK(is_iso(compose(b.strip.proj, compose(th, a.strip.incl))));
    }
}

TEST_CASE("maps under the stable functor") {
    std::mt19937_64 rng(18);
    const Example& ex = ex1();
    auto mods = small_corpus(ex.Gamma, rng, 6);
    for (const Rep& x : mods) {
        StableMap id = stable_image_map(ex.Fp, identity_hom(x), x, x);
        CHECK(stable_hom(id.x.m, id.y.m).equal(id.b, identity_hom(id.x.m)));
        Cover c = projective_cover(x);
        RepHom through = compose(c.epi, gen::random_hom(x, c.proj, rng));
        StableMap z = stable_image_map(ex.Fp, through, x, x);
        CHECK(stable_hom(z.x.m, z.y.m).is_zero(z.b));
    }
    for (int t = 0; t < 6; ++t) {
        const Rep& x = mods[rng() % mods.size()];
        SumData sd = direct_sum({x, projective(ex.Gamma, int(rng() % 4))});
        StableMap in = stable_image_map(ex.Fp, sd.incl[0], x, sd.sum);
        StableMap out = stable_image_map(ex.Fp, sd.proj[0], sd.sum, x);
        CHECK(is_iso(in.core));
        CHECK(is_iso(out.core));
    }
}

TEST_CASE("composition and syzygies") {
    std::mt19937_64 rng(19);
    const Example& ex = ex1();
    FunctorData om = omega_functor(ex.Lambda, 1);
    FunctorData fo = compose(ex.Fp, om);
    for (const Rep& x : small_corpus(ex.Gamma, rng, 8)) {
        Rep fx = stable_image(ex.Fp, x).m;
        CHECK(stable_iso(stable_image(fo, x).m, syzygy(fx, 1)));
        CHECK(stable_iso(stable_image(ex.Fp, syzygy(x, 1)).m, syzygy(fx, 1)));
    }
    FunctorData fg = compose(ex.Fp, ex.Gp);
    for (const Rep& x : small_corpus(ex.Gamma, rng, 6)) {
        Rep two = stable_image(ex.Gp, stable_image(ex.Fp, x).core()).m;
        CHECK(stable_iso(stable_image(fg, x).m, two));
    }
}

TEST_CASE("exact sequences go to exact sequences") {
    std::mt19937_64 rng(20);
    auto a = algebra_A(1, P);
    Rep p1 = projective(a, 1);
    Sub r = radical(p1);
    Quot s = cokernel(r.rep, p1, r.incl);
    ExactImage e = exact_sequence_image(identity_functor(a), r.rep, p1, s.rep, r.incl, s.proj);
    CHECK(e.ok());
    CHECK(stable_iso(e.mx, r.rep));
    CHECK(stable_iso(e.mz, s.rep));

    const Example& ex = ex1();
    for (int t = 0; t < 5; ++t) {
        Rep x = random_module(ex.Gamma, rng), z = random_module(ex.Gamma, rng);
        SumData sd = direct_sum({x, z});
        ExactImage se = exact_sequence_image(ex.Fp, x, sd.sum, z, sd.incl[0], sd.proj[1]);
        CHECK(se.ok());
    }
    for (int t = 0; t < 5; ++t) {
        Rep y = random_module(ex.Gamma, rng);
        Sub kk = radical(y);
        Quot q = cokernel(kk.rep, y, kk.incl);
        ExactImage ee = exact_sequence_image(ex.Fp, kk.rep, y, q.rep, kk.incl, q.proj);
        CHECK(ee.ok());
    }
    Rep x = simple(ex.Gamma, 0);
    CHECK_THROWS_AS(exact_sequence_image(ex.Fp, x, x, x, identity_hom(x), identity_hom(x)), std::invalid_argument);
}

TEST_CASE("the quasi-inverse undoes the worked functor up to syzygy") {
    std::mt19937_64 rng(21);
    const Example& ex = ex1();
    FunctorData fg = compose(ex.Fp, ex.Gp);
    CHECK(is_non_negative(fg).ok);
    for (const auto& g : gp_modules(ex)) CHECK(stable_iso(stable_image(fg, g.m).m, syzygy(g.m, ex.g_shift)));
    for (const Rep& x : small_corpus(ex.Gamma, rng, 6)) CHECK(stable_iso(stable_image(fg, x).m, syzygy(x, ex.g_shift)));
}

TEST_CASE("images of the Gorenstein projective corpus") {
    const Example& ex = ex1();
    for (const auto& g : gp_modules(ex)) {
        Rep core = stable_image(ex.Fp, g.m).core();
        if (g.i % 2 == 0 && g.l == 1) CHECK(stable_iso(core, simple(ex.Lambda, g.i)));
        if (g.i % 2 == 0 && g.i + g.l == 2 * ex.n + 2) {
            std::vector<int> dims(2 * ex.n + 2, 0);
            dims[g.i] = 2;
            for (int v = g.i + 1; v <= 2 * ex.n + 1; v += 2) dims[v] = 1;
            CHECK(core.dims == dims);
        }
    }
}
