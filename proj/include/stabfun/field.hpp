#pragma once

#include <cstdint>
#include <stdexcept>

namespace sf {

using elem = std::uint32_t;

inline constexpr elem kDefaultPrime = 101;

inline elem reduce(long long v, elem p) {
    long long r = v % static_cast<long long>(p);
    return static_cast<elem>(r < 0 ? r + p : r);
}

inline elem add_mod(elem a, elem b, elem p) {
    std::uint64_t s = std::uint64_t(a) + b;
    return static_cast<elem>(s >= p ? s - p : s);
}

inline elem sub_mod(elem a, elem b, elem p) { return a >= b ? a - b : a + (p - b); }

inline elem mul_mod(elem a, elem b, elem p) {
    return static_cast<elem>((std::uint64_t(a) * b) % p);
}

inline elem neg_mod(elem a, elem p) { return a == 0 ? 0 : p - a; }

inline elem pow_mod(elem a, std::uint64_t e, elem p) {
    std::uint64_t r = 1, b = a % p;
    while (e) {
        if (e & 1) r = r * b % p;
        b = b * b % p;
        e >>= 1;
    }
    return static_cast<elem>(r);
}

inline elem inv_mod(elem a, elem p) {
    if (a % p == 0) throw std::domain_error("inverse of zero in prime field");
    return pow_mod(a, p - 2, p);
}

bool is_prime(std::uint64_t n);

// Largest accepted prime; keeps products of two residues inside 64 bits.
inline constexpr elem kMaxPrime = 2147483647u;

void check_prime(elem p);

}  // namespace sf
