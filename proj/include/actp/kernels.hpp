#pragma once

#include <cstddef>
#include <span>
#include <string>

namespace actp::kernels {

// Hot numeric loops used by the planners. Scalar reference implementations
// live in kernels.cpp; an AVX2/FMA variant is selected at runtime on x86-64
// hosts that support it. Set ACTP_KERNELS=scalar|avx2 to force a backend
// (forcing avx2 on a host without it aborts at dispatch time).

struct ArgmaxResult {
    std::size_t index;
    double value;
};

struct Ops {
    // sum_i a[i]*b[i]
    double (*dot)(const double* a, const double* b, std::size_t n);
    // y[i] += s * x[i]
    void (*axpy)(double* y, double s, const double* x, std::size_t n);
    // out[i] = a[i] * b[i]
    void (*mul)(double* out, const double* a, const double* b, std::size_t n);
    // sum_i a[i]
    double (*sum)(const double* a, std::size_t n);
    // out[r] = sum_c m[r*cols + c] * v[c]   (row-major, rows x cols)
    void (*matvec)(double* out, const double* m, std::size_t rows, std::size_t cols,
                   const double* v);
    // index of the row of `rows x n` matrix with the largest dot against w;
    // first row wins ties (strict > comparison).
    ArgmaxResult (*argmax_dot)(const double* mat, std::size_t rows, std::size_t n,
                               const double* w);
    const char* name;
};

// Active backend, resolved once on first use.
const Ops& ops();

// Names of the compiled-in backends ("scalar", "avx2" when available).
bool avx2_compiled();
bool avx2_supported();

// Convenience wrappers.
inline double dot(std::span<const double> a, std::span<const double> b) {
    return ops().dot(a.data(), b.data(), a.size());
}
inline double sum(std::span<const double> a) { return ops().sum(a.data(), a.size()); }

namespace detail {
extern const Ops scalar_ops;
#if defined(__x86_64__) || defined(_M_X64)
extern const Ops avx2_ops;
#endif
}  // namespace detail

}  // namespace actp::kernels
