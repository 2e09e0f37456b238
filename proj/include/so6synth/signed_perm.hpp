#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "so6synth/errors.hpp"

namespace so6synth {

// A signed permutation on 6 coordinates: the matrix sending e_i to
// sign_i * e_{perm(i)} (0-based internally). Stored compactly as a 16-bit
// code  rank * 64 + signs,  where rank is the Lehmer-code rank of the
// permutation in S_6 (0..719) and signs holds one bit per source
// coordinate (1 = negative). Codes enumerate all 46080 elements densely.
class SignedPerm {
public:
    static constexpr int kCount = 720 * 64;  // 46080

    SignedPerm() : code_(0) {}  // identity

    static SignedPerm identity() { return SignedPerm(); }

    static SignedPerm from_code(uint16_t code) {
        if (code >= kCount) throw integrity_error("signed perm: code out of range");
        SignedPerm p;
        p.code_ = code;
        return p;
    }

    static SignedPerm from_images(const std::array<uint8_t, 6>& perm, uint8_t signs) {
        SignedPerm p;
        p.code_ = static_cast<uint16_t>(rank_of(perm) * 64 + (signs & 0x3f));
        return p;
    }

    uint16_t code() const { return code_; }
    uint16_t rank() const { return code_ >> 6; }
    uint8_t signs() const { return code_ & 0x3f; }

    std::array<uint8_t, 6> images() const { return unrank(rank()); }
    int sign(int i) const { return (signs() >> i) & 1 ? -1 : +1; }

    bool is_identity() const { return code_ == 0; }

    // Matrix product of the two underlying signed permutation matrices.
    friend SignedPerm operator*(const SignedPerm& p, const SignedPerm& q) {
        const auto pi = p.images();
        const auto qi = q.images();
        std::array<uint8_t, 6> r;
        uint8_t signs = 0;
        for (int i = 0; i < 6; ++i) {
            r[i] = pi[qi[i]];
            if ((q.sign(i) * p.sign(qi[i])) < 0) signs |= uint8_t(1) << i;
        }
        return from_images(r, signs);
    }

    SignedPerm inverse() const {
        const auto pi = images();
        std::array<uint8_t, 6> r;
        uint8_t signs = 0;
        for (int i = 0; i < 6; ++i) {
            r[pi[i]] = static_cast<uint8_t>(i);
            if (sign(i) < 0) signs |= uint8_t(1) << pi[i];
        }
        return from_images(r, signs);
    }

    // det = sign(perm) * product of entry signs, in {+1, -1}.
    int det() const {
        const auto pi = images();
        int d = 1;
        for (int i = 0; i < 6; ++i)
            for (int j = i + 1; j < 6; ++j)
                if (pi[i] > pi[j]) d = -d;
        for (int i = 0; i < 6; ++i) d *= sign(i);
        return d;
    }

    friend bool operator==(const SignedPerm& a, const SignedPerm& b) {
        return a.code_ == b.code_;
    }
    friend bool operator!=(const SignedPerm& a, const SignedPerm& b) {
        return a.code_ != b.code_;
    }

    std::string to_string() const;  // "[p1 p2 p3 p4 p5 p6; s1s2s3s4s5s6]" 1-based

    static uint16_t rank_of(const std::array<uint8_t, 6>& perm) {
        // Lehmer code in factorial base.
        uint16_t r = 0;
        for (int i = 0; i < 6; ++i) {
            int smaller = 0;
            for (int j = i + 1; j < 6; ++j)
                if (perm[j] < perm[i]) ++smaller;
            r = static_cast<uint16_t>(r * (6 - i) + smaller);
        }
        return r;
    }

    static std::array<uint8_t, 6> unrank(uint16_t rank) {
        std::array<uint8_t, 6> digits{};
        for (int i = 5; i >= 0; --i) {
            digits[i] = static_cast<uint8_t>(rank % (6 - i));
            rank = static_cast<uint16_t>(rank / (6 - i));
        }
        std::array<uint8_t, 6> pool = {0, 1, 2, 3, 4, 5};
        std::array<uint8_t, 6> perm{};
        int pool_size = 6;
        for (int i = 0; i < 6; ++i) {
            const int d = digits[i];
            perm[i] = pool[d];
            for (int j = d; j < pool_size - 1; ++j) pool[j] = pool[j + 1];
            --pool_size;
        }
        return perm;
    }

private:
    uint16_t code_;
};

inline std::string SignedPerm::to_string() const {
    const auto pi = images();
    std::string out = "P[";
    for (int i = 0; i < 6; ++i) {
        if (i) out += ' ';
        out += std::to_string(pi[i] + 1);
    }
    out += "; ";
    for (int i = 0; i < 6; ++i) out += sign(i) < 0 ? '-' : '+';
    out += ']';
    return out;
}

}  // namespace so6synth
