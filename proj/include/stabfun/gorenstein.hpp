#pragma once

#include <optional>
#include <string>
#include <vector>

#include "stabfun/stable.hpp"

namespace sf {

// dim Ext^i(x, P_v) for 1 <= i <= d, summed over v; entry i - 1 holds degree i.
std::vector<int> ext_regular(const Rep& x, int d);
// Ext^i(x, P_v) = 0 for every v and m < i <= d.
bool perp_check(const Rep& x, int m, int d);

enum class GPVerdict { UpToDepth, Refuted };

struct GPReport {
    Rep module;
    int depth = 0;
    std::vector<int> ext_left;   // Ext^i(x, A)
    std::vector<int> ext_right;  // Ext^i(Tr x, A^op)
    GPVerdict verdict = GPVerdict::UpToDepth;
    int witness_degree = 0;  // refuted: first nonzero degree
    std::string witness_side;

    bool gp() const { return verdict == GPVerdict::UpToDepth; }
};
GPReport is_gorenstein_projective(const Rep& x, int d = 8);

struct CosyzygySequence {
    std::vector<Rep> modules;       // X^0 .. X^d
    std::vector<Rep> projectives;   // P^1 .. P^d
    std::vector<RepHom> embeddings; // X^i -> P^{i+1}
    std::vector<RepHom> quotients;  // P^{i+1} -> X^{i+1}
};
// Throws std::invalid_argument when x is refuted, and std::runtime_error
// naming the step when a cokernel fails the remaining-depth check.
CosyzygySequence cosyzygy_sequence(const Rep& x, int d);
// Tr Omega Tr x with projective summands removed.
Rep cosyzygy(const Rep& x);

struct GPPreservation {
    bool source_gp = false;
    bool image_gp = false;
    // (m, holds) for perp_check(x, m, d) implying perp_check(image, m, d)
    std::vector<std::pair<int, bool>> perp;
    bool ok() const;
};
GPPreservation gp_preservation_check(const FunctorData& f, const Rep& x, int d);

// Least k with syzygy(x, k) projective, or nullopt past the bound.
std::optional<int> projdim(const Rep& x, int bound);

struct FindimRow {
    Rep module;
    std::optional<int> pd_x, pd_image;
    bool ok = true;
};
struct FindimReport {
    std::vector<FindimRow> rows;
    int width = 0;
    bool ok() const;
};
// projdim(image) <= projdim(x) <= projdim(image) + width for each module.
FindimReport findim_bounds_check(const FunctorData& f, const std::vector<Rep>& modules, int bound);
// Largest finite projdim over the list (values past the bound ignored).
int findim_over(const std::vector<Rep>& modules, int bound);

}  // namespace sf
