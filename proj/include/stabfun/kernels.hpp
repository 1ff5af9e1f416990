#pragma once

// Row kernels mod p. The scalar versions are the reference; the AVX2
// versions are chosen at runtime when the CPU supports them and p is small
// enough for 32-bit lane arithmetic.

#include <cstddef>

#include "stabfun/field.hpp"

namespace sf::kernels {

// dst[i] = dst[i] + c * src[i] mod p
using AxpyFn = void (*)(elem* dst, const elem* src, elem c, elem p, std::size_t n);
// dst[i] = c * dst[i] mod p
using ScaleFn = void (*)(elem* dst, elem c, elem p, std::size_t n);

// p + p*p must fit below 2^31 for the lane reduction.
inline constexpr elem kSimdPrimeLimit = 46340;

void axpy_scalar(elem* dst, const elem* src, elem c, elem p, std::size_t n);
void scale_scalar(elem* dst, elem c, elem p, std::size_t n);

bool avx2_compiled();
bool avx2_supported();
void axpy_avx2(elem* dst, const elem* src, elem c, elem p, std::size_t n);
void scale_avx2(elem* dst, elem c, elem p, std::size_t n);

struct Table {
    AxpyFn axpy;
    ScaleFn scale;
    const char* name;
};

const Table& active();

inline void axpy(elem* dst, const elem* src, elem c, elem p, std::size_t n) {
    if (c != 0) active().axpy(dst, src, c, p, n);
}

inline void scale(elem* dst, elem c, elem p, std::size_t n) { active().scale(dst, c, p, n); }

}  // namespace sf::kernels
