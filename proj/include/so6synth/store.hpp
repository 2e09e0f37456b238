#pragma once

#include <string>

#include "so6synth/lut.hpp"

namespace so6synth {

// Binary LUT format (all integers little-endian):
//   offset 0   magic "SO6LUT01" (8 bytes)
//   offset 8   format version (u32), currently 1
//   offset 12  signature hash-constant fingerprint (u64)
//   offset 20  equivalence-variant tag (u8): 0 = O(6) signed permutations
//   offset 21  root matrix: 36 packed Dyadic words (u64, column-major)
//   ...        layer count (u64), then per-layer record counts (u64 each)
//   ...        records, layer by layer, each:
//                36 packed Dyadic words (u64, column-major canonical form)
//                gen_id (u8, 0xFF for the root record)
//                parent index within the previous layer (u64)
// Layers are sorted by canonical flat-byte order and metadata is
// schedule-independent, so equal tables produce identical files.
constexpr char kLutMagic[8] = {'S', 'O', '6', 'L', 'U', 'T', '0', '1'};
constexpr uint32_t kLutFormatVersion = 1;
constexpr uint8_t kVariantO6 = 0;

void save_lut(const Lut& lut, const std::string& path);

// Verifies magic/version/fingerprint/variant, rebuilds the global index, and
// re-checks a sample of records (default 1%) against full invariants.
Lut load_lut(const std::string& path, double verify_fraction = 0.01);

}  // namespace so6synth
