#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "stabfun/field.hpp"
#include "stabfun/matrix.hpp"

namespace sf {

struct Arrow {
    std::string name;
    int src = 0;
    int tgt = 0;
};

struct Quiver {
    std::vector<std::string> vertices;
    std::vector<Arrow> arrows;

    int vertex(const std::string& label) const;
    int arrow(const std::string& name) const;
    int num_vertices() const { return int(vertices.size()); }
    int num_arrows() const { return int(arrows.size()); }
};

// A path is a list of arrow indices in traversal order.
using Path = std::vector<int>;

struct PathTerm {
    long long coeff = 1;
    Path path;
};

using Relation = std::vector<PathTerm>;

struct BasisPath {
    int src = 0;
    int tgt = 0;
    Path arrows;
    // basis index of arrows[0..len-2], or -1 for trivial paths
    int prefix = -1;
};

// Algebra elements are dense coefficient vectors over the path basis.
using Vec = std::vector<elem>;

class Algebra;
using AlgPtr = std::shared_ptr<const Algebra>;

inline constexpr int kDefaultPathCap = 32;

// Path algebra of a quiver modulo homogeneous relations, with a fixed
// monomial basis. Multiplication mul(x, y) means "x then y".
class Algebra : public std::enable_shared_from_this<Algebra> {
public:
    static AlgPtr create(Quiver q, std::vector<Relation> rels, elem p, std::string name = "",
                         int cap = kDefaultPathCap);

    const std::string& name() const { return name_; }
    const Quiver& quiver() const { return quiver_; }
    const std::vector<Relation>& relations() const { return relations_; }
    elem prime() const { return p_; }
    int dim() const { return int(basis_.size()); }
    int num_vertices() const { return quiver_.num_vertices(); }
    const std::vector<BasisPath>& basis() const { return basis_; }
    const BasisPath& basis_path(int i) const { return basis_[i]; }
    int trivial(int v) const { return trivial_[v]; }
    std::string path_label(int b) const;

    Vec zero() const { return Vec(basis_.size(), 0); }
    Vec unit(int b) const;
    Vec vertex_unit(int v) const { return unit(trivial_[v]); }

    // Reduction of an arbitrary path starting at `src`.
    Vec reduce_path(int src, const Path& path) const;
    Vec right_arrow(const Vec& x, int arrow) const;
    Vec mul(const Vec& x, const Vec& y) const;
    Vec add(const Vec& x, const Vec& y) const;
    Vec scale(const Vec& x, elem c) const;
    Vec neg(const Vec& x) const { return scale(x, p_ - 1); }
    bool is_zero(const Vec& x) const;
    // Restriction of x to the paths from `src` to `tgt`.
    Vec corner(const Vec& x, int src, int tgt) const;

    // Basis indices of the paths from src to tgt, in basis order.
    const std::vector<int>& paths_between(int src, int tgt) const { return between_[src][tgt]; }
    // Position of basis path b inside paths_between(src(b), tgt(b)).
    int local_index(int b) const { return local_[b]; }

    AlgPtr opposite() const;
    // Image of x under the anti-isomorphism onto opposite().
    Vec to_opposite(const Vec& x) const;

    bool same_as(const Algebra& o) const { return this == &o; }

private:
    Algebra() = default;
    void build(int cap);

    std::string name_;
    Quiver quiver_;
    std::vector<Relation> relations_;
    elem p_ = kDefaultPrime;
    std::vector<BasisPath> basis_;
    std::vector<int> trivial_;
    std::map<std::pair<int, Path>, int> index_;
    // rmul_[b * arrows + a]: sparse reduction of basis path b followed by arrow a
    std::vector<std::vector<std::pair<int, elem>>> rmul_;
    std::vector<std::vector<std::pair<int, elem>>> table_;
    std::vector<std::vector<std::vector<int>>> between_;
    std::vector<int> local_;

    mutable std::mutex op_mutex_;
    mutable AlgPtr op_;
    mutable std::weak_ptr<const Algebra> op_back_;
};

// k[eps] tensor alg: a loop eps<label> at each vertex, eps^2 = 0 and eps
// commuting with every arrow.
AlgPtr dual_numbers_extension(const AlgPtr& alg, const std::string& name = "");

// Convenience builders.
AlgPtr path_algebra_linear(int n, elem p, const std::string& name = "");
AlgPtr one_vertex(elem p, const std::string& name = "k");

}  // namespace sf
