#include "stabfun/algebra.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace sf {

int Quiver::vertex(const std::string& label) const {
    for (int i = 0; i < num_vertices(); ++i)
        if (vertices[i] == label) return i;
    throw std::invalid_argument("unknown vertex '" + label + "'");
}

int Quiver::arrow(const std::string& name) const {
    for (int i = 0; i < num_arrows(); ++i)
        if (arrows[i].name == name) return i;
    throw std::invalid_argument("unknown arrow '" + name + "'");
}

namespace {

void validate_quiver(const Quiver& q) {
    std::set<std::string> seen;
    for (const auto& v : q.vertices)
        if (!seen.insert(v).second) throw std::invalid_argument("duplicate vertex label '" + v + "'");
    seen.clear();
    for (const auto& a : q.arrows) {
        if (!seen.insert(a.name).second) throw std::invalid_argument("duplicate arrow name '" + a.name + "'");
        if (a.src < 0 || a.src >= q.num_vertices() || a.tgt < 0 || a.tgt >= q.num_vertices())
            throw std::invalid_argument("arrow '" + a.name + "' has an unknown endpoint");
    }
}

std::vector<Relation> normalise_relations(const Quiver& q, const std::vector<Relation>& rels, elem p) {
    std::vector<Relation> out;
    for (std::size_t r = 0; r < rels.size(); ++r) {
        std::map<Path, elem> acc;
        int src = -1, tgt = -1, len = -1;
        for (const auto& t : rels[r]) {
            if (t.path.size() < 2)
                throw std::invalid_argument("relation " + std::to_string(r) + " has a term of length below 2");
            for (int a : t.path)
                if (a < 0 || a >= q.num_arrows())
                    throw std::invalid_argument("relation " + std::to_string(r) + " uses an unknown arrow");
            for (std::size_t i = 1; i < t.path.size(); ++i)
                if (q.arrows[t.path[i - 1]].tgt != q.arrows[t.path[i]].src)
                    throw std::invalid_argument("relation " + std::to_string(r) + " has a non-composable path");
            int s = q.arrows[t.path.front()].src, e = q.arrows[t.path.back()].tgt;
            if (src < 0) {
                src = s;
                tgt = e;
                len = int(t.path.size());
            } else if (s != src || e != tgt) {
                throw std::invalid_argument("relation " + std::to_string(r) + " mixes non-parallel paths");
            } else if (int(t.path.size()) != len) {
                throw std::invalid_argument("relation " + std::to_string(r) + " is not homogeneous");
            }
            acc[t.path] = add_mod(acc[t.path], reduce(t.coeff, p), p);
        }
        Relation clean;
        for (auto& [path, c] : acc)
            if (c) clean.push_back({c, path});
        if (!clean.empty()) out.push_back(std::move(clean));
    }
    return out;
}

}  // namespace

AlgPtr Algebra::create(Quiver q, std::vector<Relation> rels, elem p, std::string name, int cap) {
    check_prime(p);
    validate_quiver(q);
    std::shared_ptr<Algebra> a(new Algebra());
    a->relations_ = normalise_relations(q, rels, p);
    a->quiver_ = std::move(q);
    a->p_ = p;
    a->name_ = std::move(name);
    a->build(cap);
    return a;
}

void Algebra::build(int cap) {
    const int na = quiver_.num_arrows();
    const int nv = quiver_.num_vertices();
    auto names_less = [&](const Path& x, const Path& y) {
        return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end(), [&](int a, int b) {
            return quiver_.arrows[a].name < quiver_.arrows[b].name;
        });
    };

    trivial_.resize(nv);
    std::vector<std::vector<int>> levels(1);
    for (int v = 0; v < nv; ++v) {
        trivial_[v] = int(basis_.size());
        levels[0].push_back(int(basis_.size()));
        basis_.push_back({v, v, {}, -1});
    }
    rmul_.resize(basis_.size() * na);

    for (int len = 1;; ++len) {
        struct Cand {
            int base;
            int arrow;
            Path path;
        };
        std::vector<Cand> cands;
        for (int b : levels[len - 1])
            for (int a = 0; a < na; ++a)
                if (quiver_.arrows[a].src == basis_[b].tgt) {
                    Path path = basis_[b].arrows;
                    path.push_back(a);
                    cands.push_back({b, a, std::move(path)});
                }
        if (cands.empty()) break;
        if (len > cap) throw std::runtime_error("relations are not admissible: nonzero paths beyond length cap");
        std::sort(cands.begin(), cands.end(), [&](const Cand& x, const Cand& y) { return names_less(y.path, x.path); });
        std::map<std::pair<int, int>, int> col;
        for (int c = 0; c < int(cands.size()); ++c) col[{cands[c].base, cands[c].arrow}] = c;

        std::vector<std::vector<elem>> rows;
        for (const auto& rel : relations_) {
            const int k = int(rel.front().path.size());
            if (k > len) continue;
            const int rsrc = quiver_.arrows[rel.front().path.front()].src;
            for (int u : levels[len - k]) {
                if (basis_[u].tgt != rsrc) continue;
                std::vector<elem> row(cands.size(), 0);
                for (const auto& t : rel) {
                    Vec x = unit(u);
                    for (int i = 0; i + 1 < int(t.path.size()); ++i) x = right_arrow(x, t.path[i]);
                    for (int b = 0; b < int(x.size()); ++b)
                        if (x[b]) {
                            int c = col.at({b, t.path.back()});
                            row[c] = add_mod(row[c], mul_mod(elem(t.coeff), x[b], p_), p_);
                        }
                }
                rows.push_back(std::move(row));
            }
        }
        Matrix m(int(rows.size()), int(cands.size()), p_);
        for (int i = 0; i < m.rows(); ++i)
            for (int j = 0; j < m.cols(); ++j) m.at(i, j) = rows[i][j];
        Rref r = rref(std::move(m));
        std::vector<int> pivot_row(cands.size(), -1);
        for (int i = 0; i < int(r.pivots.size()); ++i) pivot_row[r.pivots[i]] = i;

        std::vector<int> survivors;
        for (int c = int(cands.size()) - 1; c >= 0; --c)
            if (pivot_row[c] < 0) survivors.push_back(c);
        std::vector<int> new_index(cands.size(), -1);
        levels.emplace_back();
        for (int c : survivors) {
            new_index[c] = int(basis_.size());
            levels[len].push_back(int(basis_.size()));
            basis_.push_back({basis_[cands[c].base].src, quiver_.arrows[cands[c].arrow].tgt, cands[c].path, cands[c].base});
        }
        rmul_.resize(basis_.size() * na);
        for (int c = 0; c < int(cands.size()); ++c) {
            auto& slot = rmul_[std::size_t(cands[c].base) * na + cands[c].arrow];
            if (pivot_row[c] < 0) {
                slot = {{new_index[c], 1}};
                continue;
            }
            for (int j : survivors) {
                elem v = r.form(pivot_row[c], j);
                if (v) slot.push_back({new_index[j], neg_mod(v, p_)});
            }
        }
        if (survivors.empty()) break;
    }

    for (const auto& b : basis_) index_[{b.src, b.arrows}] = int(&b - basis_.data());
    between_.assign(nv, std::vector<std::vector<int>>(nv));
    local_.resize(basis_.size());
    for (int b = 0; b < dim(); ++b) {
        auto& list = between_[basis_[b].src][basis_[b].tgt];
        local_[b] = int(list.size());
        list.push_back(b);
    }
    table_.assign(basis_.size() * basis_.size(), {});
    for (int i = 0; i < dim(); ++i)
        for (int j = 0; j < dim(); ++j) {
            if (basis_[i].tgt != basis_[j].src) continue;
            Vec x = unit(i);
            for (int a : basis_[j].arrows) x = right_arrow(x, a);
            auto& slot = table_[std::size_t(i) * dim() + j];
            for (int k = 0; k < dim(); ++k)
                if (x[k]) slot.push_back({k, x[k]});
        }
}

std::string Algebra::path_label(int b) const {
    const auto& bp = basis_[b];
    if (bp.arrows.empty()) return "e" + quiver_.vertices[bp.src];
    std::string s;
    for (std::size_t i = 0; i < bp.arrows.size(); ++i) s += (i ? "." : "") + quiver_.arrows[bp.arrows[i]].name;
    return s;
}

Vec Algebra::unit(int b) const {
    Vec x(basis_.size(), 0);
    x[b] = 1;
    return x;
}

Vec Algebra::reduce_path(int src, const Path& path) const {
    Vec x = vertex_unit(src);
    for (int a : path) {
        if (a < 0 || a >= quiver_.num_arrows()) throw std::invalid_argument("path uses an unknown arrow");
        x = right_arrow(x, a);
    }
    return x;
}

Vec Algebra::right_arrow(const Vec& x, int arrow) const {
    const int na = quiver_.num_arrows();
    Vec out(x.size(), 0);
    const int s = quiver_.arrows[arrow].src;
    for (int b = 0; b < int(x.size()); ++b) {
        if (!x[b] || basis_[b].tgt != s) continue;
        for (auto [k, c] : rmul_[std::size_t(b) * na + arrow]) out[k] = add_mod(out[k], mul_mod(x[b], c, p_), p_);
    }
    return out;
}

Vec Algebra::mul(const Vec& x, const Vec& y) const {
    Vec out(basis_.size(), 0);
    const int d = dim();
    for (int i = 0; i < d; ++i) {
        if (!x[i]) continue;
        for (int j = 0; j < d; ++j) {
            if (!y[j]) continue;
            const elem c = mul_mod(x[i], y[j], p_);
            for (auto [k, t] : table_[std::size_t(i) * d + j]) out[k] = add_mod(out[k], mul_mod(c, t, p_), p_);
        }
    }
    return out;
}

Vec Algebra::add(const Vec& x, const Vec& y) const {
    Vec out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = add_mod(x[i], y[i], p_);
    return out;
}

Vec Algebra::scale(const Vec& x, elem c) const {
    Vec out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = mul_mod(x[i], c, p_);
    return out;
}

bool Algebra::is_zero(const Vec& x) const {
    return std::all_of(x.begin(), x.end(), [](elem e) { return e == 0; });
}

Vec Algebra::corner(const Vec& x, int src, int tgt) const {
    Vec out(x.size(), 0);
    for (int b : between_[src][tgt]) out[b] = x[b];
    return out;
}

AlgPtr Algebra::opposite() const {
    std::lock_guard<std::mutex> lock(op_mutex_);
    if (auto back = op_back_.lock()) return back;
    if (op_) return op_;
    Quiver q = quiver_;
    for (auto& a : q.arrows) std::swap(a.src, a.tgt);
    std::vector<Relation> rels = relations_;
    for (auto& r : rels)
        for (auto& t : r) std::reverse(t.path.begin(), t.path.end());
    std::string nm = name_.size() > 3 && name_.substr(name_.size() - 3) == "^op" ? name_.substr(0, name_.size() - 3)
                                                                                 : name_ + "^op";
    auto op = create(std::move(q), std::move(rels), p_, nm);
    std::const_pointer_cast<Algebra>(op)->op_back_ = weak_from_this();
    op_ = op;
    return op_;
}

Vec Algebra::to_opposite(const Vec& x) const {
    AlgPtr op = opposite();
    Vec out = op->zero();
    for (int b = 0; b < dim(); ++b) {
        if (!x[b]) continue;
        Path rev(basis_[b].arrows.rbegin(), basis_[b].arrows.rend());
        out = op->add(out, op->scale(op->reduce_path(basis_[b].tgt, rev), x[b]));
    }
    return out;
}

AlgPtr dual_numbers_extension(const AlgPtr& alg, const std::string& name) {
    Quiver q = alg->quiver();
    const int na = q.num_arrows();
    std::vector<int> eps(q.num_vertices());
    for (int v = 0; v < q.num_vertices(); ++v) {
        eps[v] = q.num_arrows();
        q.arrows.push_back({"eps" + q.vertices[v], v, v});
    }
    std::vector<Relation> rels = alg->relations();
    for (int v = 0; v < q.num_vertices(); ++v) rels.push_back({{1, {eps[v], eps[v]}}});
    for (int a = 0; a < na; ++a) {
        const auto& ar = q.arrows[a];
        rels.push_back({{1, {a, eps[ar.tgt]}}, {-1, {eps[ar.src], a}}});
    }
    return Algebra::create(std::move(q), std::move(rels), alg->prime(),
                           name.empty() ? "k[eps]*" + alg->name() : name);
}

AlgPtr path_algebra_linear(int n, elem p, const std::string& name) {
    Quiver q;
    for (int i = 0; i < n; ++i) q.vertices.push_back(std::to_string(i));
    for (int i = 0; i + 1 < n; ++i) q.arrows.push_back({"a" + std::to_string(i), i, i + 1});
    return Algebra::create(std::move(q), {}, p, name);
}

AlgPtr one_vertex(elem p, const std::string& name) {
    Quiver q;
    q.vertices.push_back("0");
    return Algebra::create(std::move(q), {}, p, name);
}

}  // namespace sf
