#pragma once

#include <cstdlib>
#include <vector>

#include <dlfcn.h>

namespace idus {
namespace blas {

using SgemmFn = void (*)(int order, int ta, int tb, int m, int n, int k, float alpha,
                         const float* a, int lda, const float* b, int ldb, float beta, float* c,
                         int ldc);
using DgemmFn = void (*)(int order, int ta, int tb, int m, int n, int k, double alpha,
                         const double* a, int lda, const double* b, int ldb, double beta,
                         double* c, int ldc);

namespace detail {

struct Backend {
  SgemmFn sgemm = nullptr;
  DgemmFn dgemm = nullptr;
};

// OpenBLAS selects its kernels when the library is loaded, and its CPUID
// probe falls back to a slow generic kernel on VMs that mask the CPU model.
// Loading lazily lets us pin OPENBLAS_CORETYPE from the feature flags first.
inline const Backend& backend() {
  static Backend b = [] {
    Backend r;
    if (!std::getenv("OPENBLAS_CORETYPE")) {
#if defined(__x86_64__)
      __builtin_cpu_init();
      if (__builtin_cpu_supports("avx512f"))
        ::setenv("OPENBLAS_CORETYPE", "SKYLAKEX", 0);
      else if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma"))
        ::setenv("OPENBLAS_CORETYPE", "HASWELL", 0);
#endif
    }
    for (const char* name : {"libopenblas.so.0", "libopenblas.so"}) {
      if (void* h = ::dlopen(name, RTLD_NOW | RTLD_LOCAL)) {
        r.sgemm = reinterpret_cast<SgemmFn>(::dlsym(h, "cblas_sgemm"));
        r.dgemm = reinterpret_cast<DgemmFn>(::dlsym(h, "cblas_dgemm"));
        if (r.sgemm && r.dgemm) break;
        r.sgemm = nullptr;
        r.dgemm = nullptr;
      }
    }
    return r;
  }();
  return b;
}

// Portable fallback, blocked over k for locality. Row-major, no transposes.
template <typename T>
void gemm_naive(int m, int n, int k, T alpha, const T* a, int lda, const T* b, int ldb, T beta,
                T* c, int ldc) {
  for (int i = 0; i < m; ++i) {
    T* ci = c + static_cast<std::size_t>(i) * ldc;
    for (int j = 0; j < n; ++j) ci[j] *= beta;
    for (int p = 0; p < k; ++p) {
      const T aip = alpha * a[static_cast<std::size_t>(i) * lda + p];
      if (aip == T{0}) continue;
      const T* bp = b + static_cast<std::size_t>(p) * ldb;
      for (int j = 0; j < n; ++j) ci[j] += aip * bp[j];
    }
  }
}

}  // namespace detail

enum { kRowMajor = 101, kNoTrans = 111, kTrans = 112 };

// C = alpha * op(A) op(B) + beta * C, row-major.
inline void gemm(bool trans_a, bool trans_b, int m, int n, int k, float alpha, const float* a,
                 int lda, const float* b, int ldb, float beta, float* c, int ldc) {
  if (auto fn = detail::backend().sgemm) {
    fn(kRowMajor, trans_a ? kTrans : kNoTrans, trans_b ? kTrans : kNoTrans, m, n, k, alpha, a, lda,
       b, ldb, beta, c, ldc);
    return;
  }
  // Fallback handles the no-transpose case via the blocked kernel and
  // materializes transposes otherwise (only reached without OpenBLAS).
  if (!trans_a && !trans_b) {
    detail::gemm_naive(m, n, k, alpha, a, lda, b, ldb, beta, c, ldc);
    return;
  }
  std::vector<float> at, bt;
  const float* ap = a;
  const float* bp = b;
  int alda = lda, bldb = ldb;
  if (trans_a) {
    at.resize(static_cast<std::size_t>(m) * k);
    for (int i = 0; i < m; ++i)
      for (int p = 0; p < k; ++p) at[static_cast<std::size_t>(i) * k + p] = a[static_cast<std::size_t>(p) * lda + i];
    ap = at.data();
    alda = k;
  }
  if (trans_b) {
    bt.resize(static_cast<std::size_t>(k) * n);
    for (int p = 0; p < k; ++p)
      for (int j = 0; j < n; ++j) bt[static_cast<std::size_t>(p) * n + j] = b[static_cast<std::size_t>(j) * ldb + p];
    bp = bt.data();
    bldb = n;
  }
  detail::gemm_naive(m, n, k, alpha, ap, alda, bp, bldb, beta, c, ldc);
}

inline void gemm(bool trans_a, bool trans_b, int m, int n, int k, double alpha, const double* a,
                 int lda, const double* b, int ldb, double beta, double* c, int ldc) {
  if (auto fn = detail::backend().dgemm) {
    fn(kRowMajor, trans_a ? kTrans : kNoTrans, trans_b ? kTrans : kNoTrans, m, n, k, alpha, a, lda,
       b, ldb, beta, c, ldc);
    return;
  }
  if (!trans_a && !trans_b) {
    detail::gemm_naive(m, n, k, alpha, a, lda, b, ldb, beta, c, ldc);
    return;
  }
  std::vector<double> at, bt;
  const double* ap = a;
  const double* bp = b;
  int alda = lda, bldb = ldb;
  if (trans_a) {
    at.resize(static_cast<std::size_t>(m) * k);
    for (int i = 0; i < m; ++i)
      for (int p = 0; p < k; ++p) at[static_cast<std::size_t>(i) * k + p] = a[static_cast<std::size_t>(p) * lda + i];
    ap = at.data();
    alda = k;
  }
  if (trans_b) {
    bt.resize(static_cast<std::size_t>(k) * n);
    for (int p = 0; p < k; ++p)
      for (int j = 0; j < n; ++j) bt[static_cast<std::size_t>(p) * n + j] = b[static_cast<std::size_t>(j) * ldb + p];
    bp = bt.data();
    bldb = n;
  }
  detail::gemm_naive(m, n, k, alpha, ap, alda, bp, bldb, beta, c, ldc);
}

}  // namespace blas
}  // namespace idus
