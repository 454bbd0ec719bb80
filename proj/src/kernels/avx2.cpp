// Compiled with -mavx2; only reached after a runtime CPU check.
#include <immintrin.h>

#include <bit>

#include "monoidw/kernels.hpp"

namespace monoidw::kernels {
namespace {

std::size_t assoc_mismatch_avx2(const Elem* table, std::size_t n, Elem i, Elem j) {
  const Elem* row_i = table + std::size_t{i} * n;
  const Elem* row_j = table + std::size_t{j} * n;
  const Elem* row_ij = table + std::size_t{row_i[j]} * n;
  const auto* base = reinterpret_cast<const int*>(row_i);
  std::size_t k = 0;
  for (; k + 8 <= n; k += 8) {
    const __m256i idx = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(row_j + k));
    const __m256i lhs = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(row_ij + k));
    const __m256i rhs = _mm256_i32gather_epi32(base, idx, 4);
    const __m256i eq = _mm256_cmpeq_epi32(lhs, rhs);
    const unsigned differ =
        ~static_cast<unsigned>(_mm256_movemask_ps(_mm256_castsi256_ps(eq))) & 0xffu;
    if (differ != 0) return k + static_cast<std::size_t>(std::countr_zero(differ));
  }
  for (; k < n; ++k) {
    if (row_ij[k] != row_i[row_j[k]]) return k;
  }
  return n;
}

void compose_avx2(const Elem* first, const Elem* second, Elem* out, std::size_t n) {
  const auto* base = reinterpret_cast<const int*>(second);
  std::size_t q = 0;
  for (; q + 8 <= n; q += 8) {
    const __m256i idx = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(first + q));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(out + q),
                        _mm256_i32gather_epi32(base, idx, 4));
  }
  for (; q < n; ++q) out[q] = second[first[q]];
}

}  // namespace

extern const KernelSet kAvx2Kernels;
const KernelSet kAvx2Kernels{"avx2", &assoc_mismatch_avx2, &compose_avx2};

}  // namespace monoidw::kernels
