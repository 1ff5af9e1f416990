#include "stabfun/complex.hpp"

#include <algorithm>
#include <stdexcept>

namespace sf {

namespace {

std::vector<elem> flatten(const RepHom& f) {
    std::vector<elem> out;
    for (const auto& m : f.at) out.insert(out.end(), m.data().begin(), m.data().end());
    return out;
}

elem sign(int n, elem p) { return n % 2 == 0 ? 1 : p - 1; }

}  // namespace

Rep Complex::term(int i) const {
    if (i < lo || i > hi()) return zero_rep(alg);
    return terms[i - lo];
}

RepHom Complex::diff(int i) const {
    if (i < lo || i >= hi()) return zero_hom(term(i), term(i + 1));
    return diffs[i - lo];
}

void Complex::validate() const {
    if (!terms.empty() && diffs.size() + 1 != terms.size()) throw std::invalid_argument("complex has wrong number of differentials");
    for (int i = lo; i < hi(); ++i) {
        if (!is_hom(term(i), term(i + 1), diff(i)))
            throw std::invalid_argument("differential in degree " + std::to_string(i) + " is not a module map");
        if (i + 1 < hi() && !is_zero(compose(diff(i + 1), diff(i))))
            throw std::invalid_argument("differentials do not compose to zero at degree " + std::to_string(i));
    }
}

Complex make_complex(const AlgPtr& alg, int lo, std::vector<Rep> terms, std::vector<RepHom> diffs) {
    Complex c{alg, lo, std::move(terms), std::move(diffs)};
    c.validate();
    return c;
}

Complex zero_complex(const AlgPtr& alg) { return Complex{alg, 0, {}, {}}; }

Complex stalk(const Rep& m, int degree) { return Complex{m.alg, degree, {m}, {}}; }

Complex trim(const Complex& c) {
    int a = c.lo, b = c.hi();
    while (a <= b && c.term(a).is_zero()) ++a;
    while (b >= a && c.term(b).is_zero()) --b;
    if (a > b) return zero_complex(c.alg);
    Complex out{c.alg, a, {}, {}};
    for (int i = a; i <= b; ++i) {
        out.terms.push_back(c.term(i));
        if (i < b) out.diffs.push_back(c.diff(i));
    }
    return out;
}

RepHom map_at(const ChainMap& f, const Complex& x, const Complex& y, int i) {
    auto it = f.maps.find(i);
    if (it == f.maps.end() || it->second.at.empty()) return zero_hom(x.term(i), y.term(i));
    return it->second;
}

ChainMap identity_chain(const Complex& c) {
    ChainMap f;
    for (int i = c.lo; i <= c.hi(); ++i) f.maps[i] = identity_hom(c.term(i));
    return f;
}

ChainMap compose(const ChainMap& g, const ChainMap& f, const Complex& x, const Complex& y, const Complex& z) {
    ChainMap h;
    for (const auto& [i, fi] : f.maps) {
        (void)fi;
        if (g.maps.count(i)) h.maps[i] = compose(map_at(g, y, z, i), map_at(f, x, y, i));
    }
    return h;
}

ChainMap add(const ChainMap& f, const ChainMap& g, const Complex& x, const Complex& y) {
    ChainMap h;
    int a = std::min(x.lo, y.lo), b = std::max(x.hi(), y.hi());
    for (int i = a; i <= b; ++i)
        if (f.maps.count(i) || g.maps.count(i)) h.maps[i] = add(map_at(f, x, y, i), map_at(g, x, y, i));
    return h;
}

ChainMap neg(const ChainMap& f) {
    ChainMap h;
    for (const auto& [i, fi] : f.maps) h.maps[i] = neg(fi);
    return h;
}

bool is_chain_map(const ChainMap& f, const Complex& x, const Complex& y) {
    int a = std::min(x.lo, y.lo) - 1, b = std::max(x.hi(), y.hi()) + 1;
    for (int i = a; i <= b; ++i) {
        RepHom fi = map_at(f, x, y, i);
        if (!is_hom(x.term(i), y.term(i), fi)) return false;
        RepHom lhs = compose(y.diff(i), fi);
        RepHom rhs = compose(map_at(f, x, y, i + 1), x.diff(i));
        if (!equal(lhs, rhs)) return false;
    }
    return true;
}

bool is_zero(const ChainMap& f) {
    for (const auto& [i, fi] : f.maps) {
        (void)i;
        if (!is_zero(fi)) return false;
    }
    return true;
}

Complex shift(const Complex& c, int n) {
    Complex s{c.alg, c.lo - n, c.terms, {}};
    const elem sg = sign(n, c.alg->prime());
    for (const auto& d : c.diffs) s.diffs.push_back(scale(d, sg));
    return s;
}

ChainMap shift(const ChainMap& f, int n) {
    ChainMap g;
    for (const auto& [i, fi] : f.maps) g.maps[i - n] = fi;
    return g;
}

Cone cone(const ChainMap& f, const Complex& x, const Complex& y) {
    const AlgPtr& alg = x.alg;
    Cone out{zero_complex(alg), {}, {}};
    int a, b;
    if (x.empty() && y.empty()) return out;
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
    for (int i = a; i <= b; ++i) {
        SumData s = direct_sum({x.term(i + 1), y.term(i)});
        out.c.terms.push_back(s.sum);
        out.from_target.maps[i] = s.incl[1];
        out.to_source.maps[i] = s.proj[0];
    }
    for (int i = a; i < b; ++i) {
        std::vector<Rep> src{x.term(i + 1), y.term(i)}, tgt{x.term(i + 2), y.term(i + 1)};
        RepHom d = block_hom(tgt, src, {{neg(x.diff(i + 1)), zero_hom(y.term(i), x.term(i + 2))},
                                        {map_at(f, x, y, i + 1), y.diff(i)}});
        out.c.diffs.push_back(std::move(d));
    }
    return out;
}

Truncation brutal_truncate_geq(const Complex& c, int m) {
    Truncation t{zero_complex(c.alg), {}};
    int a = std::max(c.lo, m);
    if (a > c.hi()) return t;
    t.c.lo = a;
    for (int i = a; i <= c.hi(); ++i) {
        t.c.terms.push_back(c.term(i));
        if (i < c.hi()) t.c.diffs.push_back(c.diff(i));
        t.map.maps[i] = identity_hom(c.term(i));
    }
    return t;
}

Truncation brutal_truncate_lt(const Complex& c, int m) {
    Truncation t{zero_complex(c.alg), {}};
    int b = std::min(c.hi(), m - 1);
    if (b < c.lo) return t;
    t.c.lo = c.lo;
    for (int i = c.lo; i <= b; ++i) {
        t.c.terms.push_back(c.term(i));
        if (i < b) t.c.diffs.push_back(c.diff(i));
        t.map.maps[i] = identity_hom(c.term(i));
    }
    return t;
}

Truncation good_truncate_geq0(const Complex& c, std::optional<int> check_from) {
    for (int i = std::max(c.lo, check_from.value_or(c.lo)); i < 0; ++i)
        for (int d : homology_dims(c, i))
            if (d) throw std::runtime_error("good truncation: nonzero homology in degree " + std::to_string(i));
    Truncation t{zero_complex(c.alg), {}};
    if (c.hi() < 0) return t;
    Quot q = cokernel(c.term(-1), c.term(0), c.diff(-1));
    t.c.lo = 0;
    t.c.terms.push_back(q.rep);
    t.map.maps[0] = q.proj;
    for (int i = 1; i <= c.hi(); ++i) {
        t.c.terms.push_back(c.term(i));
        t.map.maps[i] = identity_hom(c.term(i));
    }
    if (c.hi() >= 1) t.c.diffs.push_back(factor_through_epi(q.proj, c.diff(0)));
    for (int i = 1; i < c.hi(); ++i) t.c.diffs.push_back(c.diff(i));
    return t;
}

std::vector<int> homology_dims(const Complex& c, int i) {
    RepHom out = c.diff(i), in = c.diff(i - 1);
    std::vector<int> dims;
    for (int v = 0; v < c.alg->num_vertices(); ++v)
        dims.push_back(c.term(i).dims[v] - rank(out.at[v]) - rank(in.at[v]));
    return dims;
}

Rep homology(const Complex& c, int i) {
    Sub k = kernel(c.term(i), c.term(i + 1), c.diff(i));
    RepHom b = factor_through_mono(k.incl, c.diff(i - 1));
    return cokernel(c.term(i - 1), k.rep, b).rep;
}

bool is_acyclic_in(const Complex& c, int from, int to) {
    for (int i = std::max(from, c.lo); i <= std::min(to, c.hi()); ++i)
        for (int d : homology_dims(c, i))
            if (d) return false;
    return true;
}

bool is_acyclic(const Complex& c) { return is_acyclic_in(c, c.lo, c.hi()); }

RepHom homology_map(const ChainMap& f, const Complex& x, const Complex& y, int i) {
    Sub kx = kernel(x.term(i), x.term(i + 1), x.diff(i));
    Sub ky = kernel(y.term(i), y.term(i + 1), y.diff(i));
    Quot qx = cokernel(x.term(i - 1), kx.rep, factor_through_mono(kx.incl, x.diff(i - 1)));
    Quot qy = cokernel(y.term(i - 1), ky.rep, factor_through_mono(ky.incl, y.diff(i - 1)));
    RepHom g = factor_through_mono(ky.incl, compose(map_at(f, x, y, i), kx.incl));
    return factor_through_epi(qx.proj, compose(qy.proj, g));
}

bool is_quasi_iso(const ChainMap& f, const Complex& x, const Complex& y) {
    int a = std::min(x.empty() ? y.lo : x.lo, y.empty() ? x.lo : y.lo);
    int b = std::max(x.empty() ? y.hi() : x.hi(), y.empty() ? x.hi() : y.hi());
    for (int i = a; i <= b; ++i) {
        if (homology_dims(x, i) != homology_dims(y, i)) return false;
        if (!is_iso(homology_map(f, x, y, i))) return false;
    }
    return true;
}

namespace {

struct HomBlock {
    int i = 0;
    int off = 0;
    std::vector<RepHom> basis;
    Coordinates coords;
};

struct HomDegree {
    std::vector<HomBlock> blocks;
    int dim = 0;
    const HomBlock* find(int i) const {
        for (const auto& b : blocks)
            if (b.i == i) return &b;
        return nullptr;
    }
};

HomDegree hom_degree(const Complex& x, const Complex& y, int n) {
    HomDegree h;
    if (x.empty() || y.empty()) return h;
    const elem p = x.alg->prime();
    for (int i = std::max(x.lo, y.lo - n); i <= std::min(x.hi(), y.hi() - n); ++i) {
        HomBlock b;
        b.i = i;
        b.off = h.dim;
        b.basis = hom_space(x.term(i), y.term(i + n));
        if (b.basis.empty()) continue;
        Matrix cols(int(flatten(b.basis[0]).size()), int(b.basis.size()), p);
        for (std::size_t k = 0; k < b.basis.size(); ++k) cols.set_col(int(k), flatten(b.basis[k]));
        b.coords = Coordinates(cols);
        h.dim += int(b.basis.size());
        h.blocks.push_back(std::move(b));
    }
    return h;
}

void add_coords(Matrix& m, int col, const HomDegree& tgt, int i, const RepHom& f) {
    if (is_zero(f)) return;
    const HomBlock* b = tgt.find(i);
    if (!b) throw std::logic_error("total hom complex: component outside the window");
    auto c = b->coords.of(flatten(f));
    for (std::size_t k = 0; k < c.size(); ++k) m.at(b->off + int(k), col) = add_mod(m(b->off + int(k), col), c[k], m.prime());
}

Matrix hom_differential(const Complex& x, const Complex& y, int n, const HomDegree& src, const HomDegree& tgt) {
    const elem p = x.alg->prime();
    Matrix d(tgt.dim, src.dim, p);
    const elem sg = neg_mod(sign(n, p), p);
    for (const auto& b : src.blocks)
        for (std::size_t k = 0; k < b.basis.size(); ++k) {
            const int col = b.off + int(k);
            add_coords(d, col, tgt, b.i, compose(y.diff(b.i + n), b.basis[k]));
            add_coords(d, col, tgt, b.i - 1, scale(compose(b.basis[k], x.diff(b.i - 1)), sg));
        }
    return d;
}

}  // namespace

HomK hom_K_general(const Complex& x, const Complex& y, int n) {
    HomDegree prev = hom_degree(x, y, n - 1), cur = hom_degree(x, y, n), next = hom_degree(x, y, n + 1);
    Matrix din = hom_differential(x, y, n - 1, prev, cur);
    Matrix dout = hom_differential(x, y, n, cur, next);
    HomK out;
    Matrix z = nullspace(dout);
    for (int c : extending_cols(din, z)) {
        std::map<int, RepHom> f;
        for (const auto& b : cur.blocks) {
            RepHom g = zero_hom(x.term(b.i), y.term(b.i + n));
            for (std::size_t k = 0; k < b.basis.size(); ++k) {
                elem coef = z(b.off + int(k), c);
                if (coef) g = add(g, scale(b.basis[k], coef));
            }
            f[b.i] = g;
        }
        out.basis.push_back(std::move(f));
    }
    out.dim = int(out.basis.size());
    return out;
}

std::optional<std::map<int, RepHom>> solve_homotopy(const ChainMap& u, const Complex& x, const Complex& y) {
    HomDegree prev = hom_degree(x, y, -1), cur = hom_degree(x, y, 0);
    Matrix din = hom_differential(x, y, -1, prev, cur);
    Matrix rhs(cur.dim, 1, x.alg->prime());
    for (const auto& [i, f] : u.maps) {
        if (i < x.lo || i > x.hi() || i < y.lo || i > y.hi()) continue;
        add_coords(rhs, 0, cur, i, f);
    }
    auto sol = solve(din, rhs);
    if (!sol) return std::nullopt;
    std::map<int, RepHom> h;
    for (const auto& b : prev.blocks) {
        RepHom g = zero_hom(x.term(b.i), y.term(b.i - 1));
        for (std::size_t k = 0; k < b.basis.size(); ++k) {
            elem coef = (*sol)(b.off + int(k), 0);
            if (coef) g = add(g, scale(b.basis[k], coef));
        }
        h[b.i] = g;
    }
    return h;
}

}  // namespace sf
