#include "stabfun/kernels.hpp"

#if defined(__x86_64__) || defined(__i386__)
#define SF_X86 1
#include <immintrin.h>
#else
#define SF_X86 0
#endif

namespace sf::kernels {

#if SF_X86

bool avx2_compiled() { return true; }

bool avx2_supported() {
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2");
}

namespace {

// Barrett step for lanes holding t < 2^31: q = (t * m) >> 31 with
// m = floor(2^31 / p) undershoots by at most one, so a single conditional
// subtraction finishes.
__attribute__((target("avx2"))) inline __m256i reduce_lanes(__m256i t, __m256i vm, __m256i vp) {
    __m256i qe = _mm256_srli_epi64(_mm256_mul_epu32(t, vm), 31);
    __m256i qo = _mm256_srli_epi64(_mm256_mul_epu32(_mm256_srli_epi64(t, 32), vm), 31);
    __m256i q = _mm256_blend_epi32(qe, _mm256_slli_epi64(qo, 32), 0xAA);
    __m256i r = _mm256_sub_epi32(t, _mm256_mullo_epi32(q, vp));
    return _mm256_min_epu32(r, _mm256_sub_epi32(r, vp));
}

}  // namespace

__attribute__((target("avx2"))) void axpy_avx2(elem* dst, const elem* src, elem c, elem p, std::size_t n) {
    const __m256i vc = _mm256_set1_epi32(static_cast<int>(c));
    const __m256i vp = _mm256_set1_epi32(static_cast<int>(p));
    const __m256i vm = _mm256_set1_epi32(static_cast<int>((1u << 31) / p));
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        __m256i s = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
        __m256i d = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst + i));
        __m256i t = _mm256_add_epi32(d, _mm256_mullo_epi32(s, vc));
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), reduce_lanes(t, vm, vp));
    }
    axpy_scalar(dst + i, src + i, c, p, n - i);
}

__attribute__((target("avx2"))) void scale_avx2(elem* dst, elem c, elem p, std::size_t n) {
    const __m256i vc = _mm256_set1_epi32(static_cast<int>(c));
    const __m256i vp = _mm256_set1_epi32(static_cast<int>(p));
    const __m256i vm = _mm256_set1_epi32(static_cast<int>((1u << 31) / p));
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        __m256i d = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst + i));
        __m256i t = _mm256_mullo_epi32(d, vc);
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), reduce_lanes(t, vm, vp));
    }
    scale_scalar(dst + i, c, p, n - i);
}

#else

bool avx2_compiled() { return false; }
bool avx2_supported() { return false; }
void axpy_avx2(elem* dst, const elem* src, elem c, elem p, std::size_t n) { axpy_scalar(dst, src, c, p, n); }
void scale_avx2(elem* dst, elem c, elem p, std::size_t n) { scale_scalar(dst, c, p, n); }

#endif

}  // namespace sf::kernels
