#include "stabfun/kernels.hpp"

#include <cstdint>
#include <cstdlib>

namespace sf {

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

void check_prime(elem p) {
    if (p < 3 || p > kMaxPrime || !is_prime(p)) throw std::invalid_argument("modulus must be an odd prime");
}

namespace kernels {

void axpy_scalar(elem* dst, const elem* src, elem c, elem p, std::size_t n) {
    const std::uint64_t cc = c;
    for (std::size_t i = 0; i < n; ++i) dst[i] = static_cast<elem>((dst[i] + cc * src[i]) % p);
}

void scale_scalar(elem* dst, elem c, elem p, std::size_t n) {
    const std::uint64_t cc = c;
    for (std::size_t i = 0; i < n; ++i) dst[i] = static_cast<elem>((cc * dst[i]) % p);
}

namespace {

void axpy_dispatch_small(elem* dst, const elem* src, elem c, elem p, std::size_t n) {
    if (p < kSimdPrimeLimit)
        axpy_avx2(dst, src, c, p, n);
    else
        axpy_scalar(dst, src, c, p, n);
}

void scale_dispatch_small(elem* dst, elem c, elem p, std::size_t n) {
    if (p < kSimdPrimeLimit)
        scale_avx2(dst, c, p, n);
    else
        scale_scalar(dst, c, p, n);
}

Table select() {
    const char* force = std::getenv("STABFUN_SCALAR");
    if ((force == nullptr || force[0] == '0') && avx2_compiled() && avx2_supported())
        return {axpy_dispatch_small, scale_dispatch_small, "avx2"};
    return {axpy_scalar, scale_scalar, "scalar"};
}

}  // namespace

const Table& active() {
    static const Table table = select();
    return table;
}

}  // namespace kernels
}  // namespace sf
