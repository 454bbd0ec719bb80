#include "monoidw/kernels.hpp"

namespace monoidw::kernels {
namespace {

std::size_t assoc_mismatch_scalar(const Elem* table, std::size_t n, Elem i, Elem j) {
  const Elem* row_i = table + std::size_t{i} * n;
  const Elem* row_j = table + std::size_t{j} * n;
  const Elem* row_ij = table + std::size_t{row_i[j]} * n;
  for (std::size_t k = 0; k < n; ++k) {
    if (row_ij[k] != row_i[row_j[k]]) return k;
  }
  return n;
}

void compose_scalar(const Elem* first, const Elem* second, Elem* out, std::size_t n) {
  for (std::size_t q = 0; q < n; ++q) out[q] = second[first[q]];
}

constexpr KernelSet kScalar{"scalar", &assoc_mismatch_scalar, &compose_scalar};

}  // namespace

const KernelSet& scalar() noexcept { return kScalar; }

}  // namespace monoidw::kernels
