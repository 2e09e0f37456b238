#pragma once

#include <array>
#include <cstdint>
#include <optional>

#include "so6synth/dyadic.hpp"
#include "so6synth/signed_perm.hpp"

namespace so6synth {

// Exact 6x6 matrix over Z[1/sqrt(2)], stored as a flat column-major array of
// packed Dyadics. Values are immutable in spirit: the enumeration and search
// layers never mutate a matrix after construction.
class So6Matrix {
public:
    So6Matrix() = default;  // all-zero; callers fill and validate

    static So6Matrix identity_matrix();

    Dyadic& at(int row, int col) { return e_[col * 6 + row]; }
    const Dyadic& at(int row, int col) const { return e_[col * 6 + row]; }

    const std::array<Dyadic, 36>& flat() const { return e_; }
    std::array<Dyadic, 36>& flat() { return e_; }

    friend bool operator==(const So6Matrix& x, const So6Matrix& y) { return x.e_ == y.e_; }
    friend bool operator!=(const So6Matrix& x, const So6Matrix& y) { return !(x == y); }

    // Byte order used for canonical layer sorting and file layout: the packed
    // words in flat (column-major) order.
    friend bool flat_less(const So6Matrix& x, const So6Matrix& y) {
        for (int k = 0; k < 36; ++k) {
            if (x.e_[k].packed() != y.e_[k].packed())
                return x.e_[k].packed() < y.e_[k].packed();
        }
        return false;
    }

    uint64_t flat_hash() const {
        uint64_t h = 0xcbf29ce484222325ull;
        for (const Dyadic& d : e_) {
            h ^= d.packed();
            h *= 0x100000001b3ull;
        }
        return h;
    }

private:
    std::array<Dyadic, 36> e_{};
};

// Exact verification-path linear algebra. These use widened (128-bit)
// intermediates; they are never on the enumeration hot path.
So6Matrix mat_mul(const So6Matrix& a, const So6Matrix& b);
So6Matrix transpose(const So6Matrix& a);
int det(const So6Matrix& a);  // returns the exact determinant; callers check +-1
bool is_orthogonal(const So6Matrix& a);

// All entries in {0, +-1} with signed-permutation support.
std::optional<SignedPerm> as_signed_perm(const So6Matrix& a);
So6Matrix to_matrix(const SignedPerm& p);

// Left action permutes/negates rows, right action columns; no dyadic
// arithmetic beyond sign flips.
So6Matrix sp_act_left(const SignedPerm& p, const So6Matrix& u);
So6Matrix sp_act_right(const So6Matrix& u, const SignedPerm& p);

// Orthogonal (exactly), det in {+1,-1}, all entries reduced: the full
// SO6Matrix invariant set. Throws integrity_error with a description when
// `throwing`, else returns false.
bool validate_so6(const So6Matrix& u, bool throwing = false);

}  // namespace so6synth
