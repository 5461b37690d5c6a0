#include "actp/kernels.hpp"

#include <cstdlib>
#include <stdexcept>

#if defined(__x86_64__) || defined(_M_X64)
#include <cpuid.h>
#endif

namespace actp::kernels {

namespace {

double dot_scalar(const double* a, const double* b, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
    return acc;
}

void axpy_scalar(double* y, double s, const double* x, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += s * x[i];
}

void mul_scalar(double* out, const double* a, const double* b, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = a[i] * b[i];
}

double sum_scalar(const double* a, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += a[i];
    return acc;
}

void matvec_scalar(double* out, const double* m, std::size_t rows, std::size_t cols,
                   const double* v) {
    for (std::size_t r = 0; r < rows; ++r) out[r] = dot_scalar(m + r * cols, v, cols);
}

ArgmaxResult argmax_dot_scalar(const double* mat, std::size_t rows, std::size_t n,
                               const double* w) {
    ArgmaxResult best{0, dot_scalar(mat, w, n)};
    for (std::size_t r = 1; r < rows; ++r) {
        const double v = dot_scalar(mat + r * n, w, n);
        if (v > best.value) best = {r, v};
    }
    return best;
}

}  // namespace

namespace detail {
const Ops scalar_ops{dot_scalar,    axpy_scalar,       mul_scalar, sum_scalar,
                     matvec_scalar, argmax_dot_scalar, "scalar"};
}  // namespace detail

bool avx2_compiled() {
#if defined(__x86_64__) || defined(_M_X64)
    return true;
#else
    return false;
#endif
}

bool avx2_supported() {
#if defined(__x86_64__) || defined(_M_X64)
    if (__get_cpuid_max(0, nullptr) < 7) return false;
    unsigned int eax, ebx, ecx, edx;
    __get_cpuid_count(7, 0, &eax, &ebx, &ecx, &edx);
    const bool avx2 = (ebx & (1u << 5)) != 0;
    __get_cpuid(1, &eax, &ebx, &ecx, &edx);
    const bool fma = (ecx & (1u << 12)) != 0;
    return avx2 && fma;
#else
    return false;
#endif
}

namespace {

const Ops& resolve() {
    const char* force = std::getenv("ACTP_KERNELS");
    if (force != nullptr) {
        const std::string want(force);
        if (want == "scalar") return detail::scalar_ops;
#if defined(__x86_64__) || defined(_M_X64)
        if (want == "avx2") {
            if (!avx2_supported())
                throw std::runtime_error("ACTP_KERNELS=avx2 but host lacks AVX2+FMA");
            return detail::avx2_ops;
        }
#endif
        throw std::runtime_error("unknown ACTP_KERNELS value: " + want);
    }
#if defined(__x86_64__) || defined(_M_X64)
    if (avx2_supported()) return detail::avx2_ops;
#endif
    return detail::scalar_ops;
}

}  // namespace

const Ops& ops() {
    static const Ops& active = resolve();
    return active;
}

}  // namespace actp::kernels
