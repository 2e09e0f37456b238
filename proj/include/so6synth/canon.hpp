#pragma once

#include <cstdint>

#include "so6synth/so6_matrix.hpp"

namespace so6synth {

// Packed word of the sign-normalized entry: (a,b) flipped to (-a,-b) when
// (a,b) is lexicographically negative. Equal keys iff entries are equal up to
// sign.
uint64_t entry_key(Dyadic d);

// Class-invariant summary under U -> P1 * U * P2 over signed permutations.
// Exact invariance; collisions across classes are possible and harmless.
struct Signature {
    uint64_t hash = 0;

    friend bool operator==(Signature x, Signature y) { return x.hash == y.hash; }
    friend bool operator!=(Signature x, Signature y) { return x.hash != y.hash; }
};

Signature signature(const So6Matrix& u);

// Pinned hash constants for reproducible LUT files; the store module writes
// this fingerprint into every file header.
constexpr uint64_t kSignatureFingerprint = 0x536f364c55543031ull ^ 0x100000001b3ull;

// The orbit minimum together with witnesses: matrix == left * u * right.
struct CanonicalForm {
    So6Matrix matrix;
    SignedPerm left;
    SignedPerm right;
};

// Lexicographic minimum (order_key, column-major scan) over the full orbit
// {P1 * U * P2}. Deterministic; re-canonicalizing the result is a fixed point
// with identity witnesses.
CanonicalForm canonicalize(const So6Matrix& u);

// Reference implementation: the literal 46080-row-action loop with greedy
// column minimization. Bit-identical to canonicalize(); used as its fallback
// and by differential tests.
CanonicalForm canonicalize_reference(const So6Matrix& u);

bool equivalent(const So6Matrix& u, const So6Matrix& v);

}  // namespace so6synth
