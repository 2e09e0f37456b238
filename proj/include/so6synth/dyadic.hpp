#pragma once

#include <cstdint>
#include <functional>
#include <string>

#include "so6synth/errors.hpp"

namespace so6synth {

// An element (a + b*sqrt(2)) / sqrt(2)^c of Z[1/sqrt(2)], packed into a
// single 64-bit word:
//
//   bits  0..25  a  (two's-complement, 26 bits)
//   bits 26..51  b  (two's-complement, 26 bits)
//   bits 52..63  c  (unsigned, 12 bits)
//
// Every value is kept in reduced form: a is odd, or c == 0, or the value is
// zero encoded uniquely as (0,0,0). Two Dyadics are value-equal iff their
// packed words are bit-equal, so equality, ordering keys and hashing all
// operate on the single word.
class Dyadic {
public:
    static constexpr int64_t kCoeffMax = (int64_t{1} << 25) - 1;  // |a|,|b| bound
    static constexpr int64_t kExpMax = (int64_t{1} << 12) - 1;

    constexpr Dyadic() : bits_(0) {}

    // Constructs the reduced encoding of (a + b*sqrt(2)) / sqrt(2)^c.
    // Throws overflow_error if the reduced fields do not fit.
    static Dyadic reduce(int64_t a, int64_t b, int64_t c) {
        reduce_in_place(a, b, c);
        return pack(a, b, c);
    }

    static constexpr Dyadic zero() { return Dyadic(); }
    static Dyadic one() { return pack(1, 0, 0); }
    static Dyadic minus_one() { return pack(-1, 0, 0); }
    static Dyadic sqrt2() { return pack(0, 1, 0); }
    static Dyadic inv_sqrt2() { return pack(1, 0, 1); }
    static Dyadic from_int(int64_t n) { return reduce(n, 0, 0); }

    int64_t a() const { return sext26(bits_ & kFieldMask); }
    int64_t b() const { return sext26((bits_ >> 26) & kFieldMask); }
    int64_t c() const { return static_cast<int64_t>(bits_ >> 52); }

    bool is_zero() const { return bits_ == 0; }
    uint64_t packed() const { return bits_; }
    static Dyadic from_packed_checked(uint64_t word);

    friend bool operator==(Dyadic x, Dyadic y) { return x.bits_ == y.bits_; }
    friend bool operator!=(Dyadic x, Dyadic y) { return x.bits_ != y.bits_; }

    friend Dyadic operator+(Dyadic x, Dyadic y) {
        int64_t a, b, c;
        aligned_sum(x, y, +1, a, b, c);
        return reduce(a, b, c);
    }
    friend Dyadic operator-(Dyadic x, Dyadic y) {
        int64_t a, b, c;
        aligned_sum(x, y, -1, a, b, c);
        return reduce(a, b, c);
    }
    friend Dyadic operator-(Dyadic x) {
        if (x.is_zero()) return x;
        return pack(-x.a(), -x.b(), x.c());  // sign flip never unreduces
    }
    friend Dyadic operator*(Dyadic x, Dyadic y) {
        // (a1 + b1 s)(a2 + b2 s) = (a1 a2 + 2 b1 b2) + (a1 b2 + a2 b1) s.
        // 26-bit fields: the widened products fit comfortably in 64 bits.
        const int64_t a1 = x.a(), b1 = x.b(), a2 = y.a(), b2 = y.b();
        return reduce(a1 * a2 + 2 * b1 * b2, a1 * b2 + a2 * b1, x.c() + y.c());
    }

    // x / sqrt(2): denominator exponent increment, then reduce.
    Dyadic div_sqrt2() const {
        if (is_zero()) return *this;
        return reduce(a(), b(), c() + 1);
    }

    // Galois conjugate: sqrt(2) -> -sqrt(2), including the denominator, so an
    // odd exponent contributes an extra factor (-1)^c.
    Dyadic twist() const {
        if (is_zero()) return *this;
        return (c() & 1) ? pack(-a(), b(), c()) : pack(a(), -b(), c());
    }

    // Strict total order on encodings: (c, a, b) lexicographic, realized as a
    // single monotone unsigned key. Equal keys iff bit-equal encodings.
    uint64_t order_key() const {
        const uint64_t ab = ((bits_ & kNumerMask) ^ kSignFlip);  // bias both fields
        return (bits_ & kExpMask) | ((ab & kFieldMask) << 26) | ((ab >> 26) & kFieldMask);
    }

    // Debug-only approximation; not used by any exact path.
    double approx() const;

    std::string to_string() const {  // "a,b,c"
        return std::to_string(a()) + "," + std::to_string(b()) + "," + std::to_string(c());
    }

    // Exposed so tests can observe the pre-reduction aligned coefficients
    // (the no-reduction-on-unequal-exponents theorem).
    static void aligned_sum(Dyadic x, Dyadic y, int sign, int64_t& a, int64_t& b, int64_t& c);

    // Number of swap-halve steps reduce() would take on (a,b,c).
    static int reduction_steps(int64_t a, int64_t b, int64_t c) {
        int steps = 0;
        while (!(a == 0 && b == 0) && c > 0 && (a & 1) == 0) {
            const int64_t na = b, nb = a / 2;
            a = na;
            b = nb;
            --c;
            ++steps;
        }
        return steps;
    }

private:
    static constexpr uint64_t kFieldMask = (uint64_t{1} << 26) - 1;
    static constexpr uint64_t kNumerMask = (uint64_t{1} << 52) - 1;
    static constexpr uint64_t kExpMask = ~kNumerMask;
    static constexpr uint64_t kSignFlip = (uint64_t{1} << 25) | (uint64_t{1} << 51);

    static int64_t sext26(uint64_t f) {
        return (static_cast<int64_t>(f << 38)) >> 38;
    }

    static void reduce_in_place(int64_t& a, int64_t& b, int64_t& c) {
        if (c < 0) throw overflow_error("dyadic: negative exponent");
        if (a == 0 && b == 0) {
            c = 0;
            return;
        }
        // One step divides the numerator by sqrt(2): (a,b) -> (b, a/2).
        while (c > 0 && (a & 1) == 0) {
            const int64_t na = b, nb = a / 2;
            a = na;
            b = nb;
            --c;
            if (a == 0 && b == 0) {
                c = 0;
                return;
            }
        }
    }

    static Dyadic pack(int64_t a, int64_t b, int64_t c) {
        if (a < -kCoeffMax || a > kCoeffMax || b < -kCoeffMax || b > kCoeffMax)
            throw overflow_error("dyadic: coefficient field overflow");
        if (c < 0 || c > kExpMax) throw overflow_error("dyadic: exponent field overflow");
        Dyadic d;
        d.bits_ = (static_cast<uint64_t>(a) & kFieldMask) |
                  ((static_cast<uint64_t>(b) & kFieldMask) << 26) |
                  (static_cast<uint64_t>(c) << 52);
        return d;
    }

    uint64_t bits_;
};

inline void Dyadic::aligned_sum(Dyadic x, Dyadic y, int sign, int64_t& a, int64_t& b,
                                int64_t& c) {
    int64_t ax = x.a(), bx = x.b(), cx = x.c();
    int64_t ay = sign * y.a(), by = sign * y.b(), cy = y.c();
    // Raise the smaller exponent: sqrt(2)^(2m) = 2^m is a shift, an odd gap
    // takes one extra swap-and-double step (a,b) -> (2b,a).
    auto raise = [](int64_t& ra, int64_t& rb, int64_t gap) {
        if (ra == 0 && rb == 0) return;
        if (gap & 1) {
            const int64_t na = 2 * rb, nb = ra;
            ra = na;
            rb = nb;
        }
        const int64_t m = gap / 2;
        if (m > 36) throw overflow_error("dyadic: alignment shift overflow");
        ra <<= m;
        rb <<= m;
    };
    if (cx < cy) {
        raise(ax, bx, cy - cx);
        cx = cy;
    } else if (cy < cx) {
        raise(ay, by, cx - cy);
    }
    a = ax + ay;
    b = bx + by;
    c = cx;
}

inline double Dyadic::approx() const {
    double v = static_cast<double>(a()) + 1.4142135623730951 * static_cast<double>(b());
    for (int64_t k = 0; k < c(); ++k) v /= 1.4142135623730951;
    return v;
}

inline Dyadic Dyadic::from_packed_checked(uint64_t word) {
    Dyadic d;
    d.bits_ = word;
    const int64_t a = d.a(), b = d.b(), c = d.c();
    if (a == 0 && b == 0 && c != 0)
        throw integrity_error("dyadic: non-canonical zero encoding");
    if (!(a == 0 && b == 0) && c > 0 && (a & 1) == 0)
        throw integrity_error("dyadic: non-reduced encoding");
    return d;
}

struct DyadicHash {
    size_t operator()(Dyadic d) const { return std::hash<uint64_t>{}(d.packed()); }
};

}  // namespace so6synth
