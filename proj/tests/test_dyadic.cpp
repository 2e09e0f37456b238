#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "so6synth/dyadic.hpp"
#include "so6synth/oracle.hpp"

using namespace so6synth;

namespace {

std::mt19937_64 rng(0xd1a0c5eedULL);

Dyadic random_dyadic(int64_t coeff_range = 4096, int64_t max_c = 12) {
    std::uniform_int_distribution<int64_t> coeff(-coeff_range, coeff_range);
    std::uniform_int_distribution<int64_t> exp(0, max_c);
    return Dyadic::reduce(coeff(rng), coeff(rng), exp(rng));
}

bool matches_oracle(Dyadic d, const oracle::BigDyadic& big) {
    return big.a == d.a() && big.b == d.b() && big.c == d.c();
}

}  // namespace

TEST_CASE("reduce pinned examples") {
    CHECK(Dyadic::reduce(0, 0, 5) == Dyadic::zero());
    CHECK(Dyadic::reduce(1, 1, 0).to_string() == "1,1,0");
    CHECK(Dyadic::reduce(2, 2, 2).to_string() == "1,1,0");
}

TEST_CASE("reduce is idempotent and value-preserving") {
    for (int t = 0; t < 2000; ++t) {
        const Dyadic d = random_dyadic();
        const Dyadic again = Dyadic::reduce(d.a(), d.b(), d.c());
        CHECK(again == d);
        // Unreduce by a few sqrt(2) steps and reduce back.
        oracle::BigDyadic big{d.a(), d.b(), d.c()};
        oracle::BigDyadic raised{2 * big.b, big.a, big.c + 1};  // same value
        const Dyadic back = Dyadic::reduce(static_cast<int64_t>(raised.a),
                                           static_cast<int64_t>(raised.b), raised.c);
        CHECK(back == d);
    }
}

TEST_CASE("add pinned examples") {
    const Dyadic x = Dyadic::reduce(1, 0, 1);
    CHECK((x + Dyadic::one()).to_string() == "1,1,1");
    CHECK((x + x).to_string() == "0,1,0");
    for (int t = 0; t < 100; ++t) {
        const Dyadic d = random_dyadic();
        CHECK(d + Dyadic::zero() == d);
        CHECK(Dyadic::zero() + d == d);
        CHECK(d - d == Dyadic::zero());
        CHECK(-(-d) == d);
    }
}

TEST_CASE("mul pinned examples") {
    CHECK(Dyadic::reduce(1, 1, 0) * Dyadic::reduce(-1, 1, 0) == Dyadic::one());
    CHECK(Dyadic::inv_sqrt2() * Dyadic::inv_sqrt2() == Dyadic::reduce(1, 0, 2));
    for (int t = 0; t < 100; ++t) {
        const Dyadic d = random_dyadic();
        CHECK(d * Dyadic::one() == d);
        CHECK(d * Dyadic::zero() == Dyadic::zero());
    }
}

TEST_CASE("div_sqrt2 pinned examples") {
    CHECK(Dyadic::zero().div_sqrt2() == Dyadic::zero());
    CHECK(Dyadic::one().div_sqrt2() == Dyadic::inv_sqrt2());
    CHECK(Dyadic::sqrt2().div_sqrt2() == Dyadic::one());
}

TEST_CASE("twist pinned examples and involution") {
    CHECK(Dyadic::reduce(1, 1, 0).twist().to_string() == "1,-1,0");
    CHECK(Dyadic::zero().twist() == Dyadic::zero());
    for (int t = 0; t < 1000; ++t) {
        const Dyadic d = random_dyadic();
        CHECK(d.twist().twist() == d);
    }
}

TEST_CASE("order_key is a total order consistent with encoding equality") {
    CHECK(Dyadic::zero().order_key() < Dyadic::one().order_key());
    CHECK(Dyadic::inv_sqrt2().order_key() > Dyadic::reduce(1, 1, 0).order_key());
    for (int t = 0; t < 100000; ++t) {
        const Dyadic x = random_dyadic(), y = random_dyadic();
        CHECK((x.order_key() == y.order_key()) == (x == y));
        // Monotone in (c, a, b) lexicographic.
        const auto tup = [](Dyadic d) { return std::make_tuple(d.c(), d.a(), d.b()); };
        CHECK((x.order_key() < y.order_key()) == (tup(x) < tup(y)));
    }
}

TEST_CASE("big-integer oracle differential") {
    int checked = 0;
    for (int t = 0; t < 100000; ++t) {
        const Dyadic x = random_dyadic(), y = random_dyadic();
        const auto bx = oracle::big_from(x), by = oracle::big_from(y);
        CHECK(matches_oracle(x + y, oracle::big_add(bx, by)));
        CHECK(matches_oracle(x - y, oracle::big_sub(bx, by)));
        // Smaller operands for products so the result stays in the 26-bit fields.
        const Dyadic mx = random_dyadic(2048), my = random_dyadic(2048);
        CHECK(matches_oracle(mx * my, oracle::big_mul(oracle::big_from(mx), oracle::big_from(my))));
        CHECK(matches_oracle(x.twist(), oracle::big_twist(bx)));
        CHECK(matches_oracle(x.div_sqrt2(), oracle::big_div_sqrt2(bx)));
        ++checked;
    }
    CHECK(checked == 100000);
}

TEST_CASE("unequal exponents need zero reduction steps after addition") {
    int trials = 0;
    while (trials < 100000) {
        const Dyadic x = random_dyadic(), y = random_dyadic();
        if (x.is_zero() || y.is_zero() || x.c() == y.c()) continue;
        ++trials;
        int64_t a, b, c;
        Dyadic::aligned_sum(x, y, +1, a, b, c);
        CHECK(Dyadic::reduction_steps(a, b, c) == 0);
    }
    // Equal exponents: pre-reduction integer coefficient is even.
    int equal_trials = 0;
    while (equal_trials < 10000) {
        const Dyadic x = random_dyadic(), y = random_dyadic();
        if (x.is_zero() || y.is_zero() || x.c() != y.c() || x.c() == 0) continue;
        ++equal_trials;
        int64_t a, b, c;
        Dyadic::aligned_sum(x, y, +1, a, b, c);
        CHECK((a & 1) == 0);
    }
}

TEST_CASE("ring laws at desk scale") {
    for (int t = 0; t < 5000; ++t) {
        const Dyadic x = random_dyadic(64, 6), y = random_dyadic(64, 6), z = random_dyadic(64, 6);
        CHECK(x + y == y + x);
        CHECK((x + y) + z == x + (y + z));
        CHECK(x * y == y * x);
        CHECK((x * y) * z == x * (y * z));
        CHECK(x * (y + z) == x * y + x * z);
        CHECK((x + y).twist() == x.twist() + y.twist());
        CHECK((x * y).twist() == x.twist() * y.twist());
    }
}

TEST_CASE("overflow is detected, never wrapped") {
    CHECK_THROWS_AS(Dyadic::reduce(int64_t{1} << 26, 0, 0), overflow_error);
    CHECK_THROWS_AS(Dyadic::reduce(1, 0, 5000), overflow_error);
    const Dyadic big = Dyadic::reduce((int64_t{1} << 25) - 1, 0, 0);
    CHECK_THROWS_AS(big * big, overflow_error);
    // Aligning across a huge exponent gap overflows instead of shifting out.
    CHECK_THROWS_AS(Dyadic::reduce(3, 0, 0) + Dyadic::reduce(1, 0, 200), overflow_error);
}

TEST_CASE("packed-word validation") {
    for (int t = 0; t < 1000; ++t) {
        const Dyadic d = random_dyadic();
        CHECK(Dyadic::from_packed_checked(d.packed()) == d);
    }
    // c = 1 with a = b = 0 is a non-canonical zero.
    CHECK_THROWS_AS(Dyadic::from_packed_checked(uint64_t{1} << 52), integrity_error);
    // a = 2, c = 1 is non-reduced.
    CHECK_THROWS_AS(Dyadic::from_packed_checked((uint64_t{1} << 52) | 2), integrity_error);
}

TEST_CASE("oracle out-of-range conversion is reported") {
    oracle::BigDyadic huge{oracle::BigInt(1) << 40, 0, 0};
    CHECK_THROWS_AS(oracle::big_to_dyadic(huge), overflow_error);
    CHECK(oracle::big_to_dyadic(oracle::big_from(Dyadic::reduce(5, -3, 7))) ==
          Dyadic::reduce(5, -3, 7));
}
