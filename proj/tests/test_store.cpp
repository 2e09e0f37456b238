#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <random>

#include "so6synth/store.hpp"
#include "so6synth/text_io.hpp"

using namespace so6synth;

namespace {

std::mt19937_64 rng(0x5703eULL);

SignedPerm random_perm() {
    std::uniform_int_distribution<int> code(0, SignedPerm::kCount - 1);
    return SignedPerm::from_code(static_cast<uint16_t>(code(rng)));
}

So6Matrix random_node(int len) {
    So6Matrix m = So6Matrix::identity_matrix();
    std::uniform_int_distribution<int> gen(0, GenIndex::kPairCount - 1);
    for (int i = 0; i < len; ++i) m = apply_gen(GenIndex::from_id(gen(rng), true), m);
    return m;
}

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    REQUIRE(f.good());
    return std::string((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
}

void spit(const std::string& path, const std::string& data) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    f.write(data.data(), static_cast<std::streamsize>(data.size()));
}

struct TempFile {
    std::string path;
    explicit TempFile(const char* name) : path(std::string("/tmp/so6_test_") + name) {}
    ~TempFile() { std::remove(path.c_str()); }
};

Lut sample_lut(unsigned depth) {
    Lut lut = init_lut(So6Matrix::identity_matrix());
    for (unsigned k = 0; k < depth; ++k) extend_one_step(lut);
    return lut;
}

}  // namespace

TEST_CASE("save/load round trip is bit-exact and preserves lookups") {
    const Lut lut = sample_lut(6);
    TempFile f("roundtrip.lut");
    save_lut(lut, f.path);
    const Lut back = load_lut(f.path, /*verify_fraction=*/1.0);

    CHECK(back.root == lut.root);
    REQUIRE(back.layers.size() == lut.layers.size());
    for (size_t d = 0; d < lut.layers.size(); ++d) {
        REQUIRE(back.layers[d].size() == lut.layers[d].size());
        for (size_t i = 0; i < lut.layers[d].size(); ++i) {
            CHECK(back.layers[d][i].canon == lut.layers[d][i].canon);
            CHECK(back.layers[d][i].gen_id == lut.layers[d][i].gen_id);
            CHECK(back.layers[d][i].parent == lut.layers[d][i].parent);
        }
    }

    // Re-saving the loaded table reproduces the same bytes.
    TempFile g("resave.lut");
    save_lut(back, g.path);
    CHECK(slurp(f.path) == slurp(g.path));

    // The rebuilt index answers queries and reconstruction verifies.
    for (int t = 0; t < 30; ++t) {
        const So6Matrix u = random_node(6);
        const auto a = lut_lookup(lut, u);
        const auto b = lut_lookup(back, u);
        REQUIRE(a.has_value());
        REQUIRE(b.has_value());
        CHECK(a->depth == b->depth);
        CHECK(a->index == b->index);
        const Word w = reconstruct(back, *b);
        CHECK(w.tcount() == b->depth);
    }
}

TEST_CASE("a depth-zero table round-trips") {
    const Lut lut = init_lut(random_node(4));
    TempFile f("depth0.lut");
    save_lut(lut, f.path);
    const Lut back = load_lut(f.path, 1.0);
    CHECK(back.layers.size() == 1);
    CHECK(back.layers[0][0].canon == lut.layers[0][0].canon);
}

TEST_CASE("header corruption is rejected") {
    const Lut lut = sample_lut(3);
    TempFile f("header.lut");
    save_lut(lut, f.path);
    const std::string good = slurp(f.path);

    auto corrupt = [&](size_t at) {
        std::string bad = good;
        bad[at] = static_cast<char>(bad[at] ^ 0x40);
        spit(f.path, bad);
    };
    corrupt(0);  // magic
    CHECK_THROWS_AS(load_lut(f.path), integrity_error);
    corrupt(8);  // version
    CHECK_THROWS_AS(load_lut(f.path), integrity_error);
    corrupt(12);  // hash-constant fingerprint
    CHECK_THROWS_AS(load_lut(f.path), integrity_error);
    corrupt(20);  // variant tag
    CHECK_THROWS_AS(load_lut(f.path), integrity_error);
}

TEST_CASE("truncated files report a located error") {
    const Lut lut = sample_lut(3);
    TempFile f("trunc.lut");
    save_lut(lut, f.path);
    const std::string good = slurp(f.path);
    for (size_t keep : {good.size() - 5, good.size() / 2, size_t{10}}) {
        spit(f.path, good.substr(0, keep));
        try {
            load_lut(f.path, 1.0);
            CHECK(false);
        } catch (const integrity_error& e) {
            CHECK(std::string(e.what()).find("offset") != std::string::npos);
        }
    }
    // Trailing garbage is also rejected.
    spit(f.path, good + "x");
    CHECK_THROWS_AS(load_lut(f.path, 1.0), integrity_error);
}

TEST_CASE("record corruption is caught by full verification") {
    const Lut lut = sample_lut(4);
    TempFile f("bitflip.lut");
    save_lut(lut, f.path);
    const std::string good = slurp(f.path);
    // Flip one byte inside the last record's matrix data.
    std::string bad = good;
    const size_t at = good.size() - 297 + 4;
    bad[at] = static_cast<char>(bad[at] ^ 0x08);
    spit(f.path, bad);
    CHECK_THROWS_AS(load_lut(f.path, 1.0), integrity_error);
}

TEST_CASE("missing files raise parse_error") {
    CHECK_THROWS_AS(load_lut("/tmp/so6_test_does_not_exist.lut"), parse_error);
    const Lut lut = sample_lut(1);
    CHECK_THROWS_AS(save_lut(lut, "/nonexistent-dir/x.lut"), parse_error);
}

TEST_CASE("matrix text round trip") {
    for (int t = 0; t < 50; ++t) {
        const So6Matrix u = random_node(t % 12);
        CHECK(parse_matrix(format_matrix(u)) == u);
    }
    const std::string id_text = format_matrix(So6Matrix::identity_matrix());
    CHECK(parse_matrix(id_text) == So6Matrix::identity_matrix());
}

TEST_CASE("matrix parser rejects malformed input") {
    const std::string good = format_matrix(gate_image(Gate::T0));
    // Non-reduced entry: (2,2,2) reduces to (1,1,0).
    std::string bad = good;
    bad.replace(bad.find("1,0,0"), 5, "2,2,2");
    CHECK_THROWS_AS(parse_matrix(bad), parse_error);
    // Syntax error.
    CHECK_THROWS_AS(parse_matrix("1,0 0\n"), parse_error);
    // Wrong shape.
    CHECK_THROWS_AS(parse_matrix("1,0,0 0,0,0\n"), parse_error);
    // Well-formed triples but not orthogonal.
    std::string skew = format_matrix(So6Matrix::identity_matrix());
    skew.replace(0, 5, "1,1,0");
    CHECK_THROWS_AS(parse_matrix(skew), integrity_error);
}

TEST_CASE("word text round trip") {
    std::uniform_int_distribution<int> gen(0, GenIndex::kPairCount - 1);
    std::uniform_int_distribution<int> coin(0, 1);
    for (int t = 0; t < 100; ++t) {
        Word w;
        for (int i = 0; i < t % 9; ++i)
            w.steps.push_back(GenIndex::from_id(gen(rng), coin(rng) == 0));
        w.correction = random_perm();
        const Word back = parse_word(format_word(w));
        REQUIRE(back.steps.size() == w.steps.size());
        for (size_t i = 0; i < w.steps.size(); ++i) CHECK(back.steps[i] == w.steps[i]);
        CHECK(back.correction == w.correction);
        CHECK(evaluate_word(back) == evaluate_word(w));
    }
    // The identity correction is omitted unless the word is empty.
    Word plain;
    plain.steps = {GenIndex::plain(1, 2)};
    CHECK(format_word(plain) == "G(1,2)");
    CHECK(format_word(Word{}) == SignedPerm{}.to_string());
}

TEST_CASE("word parser accepts gate strings and rejects junk") {
    const Word w = parse_word("G(1,2) G(3,6) G(4,5)");
    CHECK(w.steps.size() == 3);
    CHECK(w.tcount() == 3);
    CHECK(w.correction.is_identity());
    const Word x = parse_word("X(1,2) P[2 1 3 4 5 6; +-++++]");
    CHECK(x.steps.size() == 1);
    CHECK(x.steps[0].involutive);
    CHECK(!x.correction.is_identity());

    CHECK_THROWS_AS(parse_word("G(2,2)"), parse_error);
    CHECK_THROWS_AS(parse_word("G(0,7)"), parse_error);
    CHECK_THROWS_AS(parse_word("H0"), parse_error);
    CHECK_THROWS_AS(parse_word("P[1 2 3 4 5 6; ++++++] G(1,2)"), parse_error);
    CHECK_THROWS_AS(parse_word("P[1 1 3 4 5 6; ++++++]"), parse_error);
    CHECK_THROWS_AS(parse_word("P[1 2 3 4 5 6; +++++"), parse_error);
}
