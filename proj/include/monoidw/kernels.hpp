#pragma once

// Inner loops shared by the table-driven algorithms. Each kernel has a
// scalar reference implementation and, on x86-64, an AVX2 variant; the
// variant is picked once at runtime from the CPU feature bits.

#include <cstddef>
#include <cstdint>

namespace monoidw {
using Elem = std::uint32_t;
}

namespace monoidw::kernels {

struct KernelSet {
  const char* name;

  /// First k with table[table[i][j]][k] != table[i][table[j][k]], or n.
  /// `table` is row-major n x n with all entries < n.
  std::size_t (*assoc_mismatch)(const Elem* table, std::size_t n, Elem i, Elem j);

  /// out[q] = second[first[q]] for q < n (apply `first`, then `second`).
  void (*compose)(const Elem* first, const Elem* second, Elem* out, std::size_t n);
};

const KernelSet& scalar() noexcept;

/// nullptr unless the AVX2 variant was compiled in and the CPU supports it.
const KernelSet* avx2() noexcept;

/// The kernels used by the library. Setting MONOIDW_KERNELS=scalar in the
/// environment pins the reference implementation.
const KernelSet& active() noexcept;

}  // namespace monoidw::kernels
