#include "so6synth/store.hpp"

#include <cstdio>
#include <cstring>
#include <fstream>
#include <vector>

namespace so6synth {

namespace {

void put_u64(std::string& out, uint64_t v) {
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void put_u32(std::string& out, uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

struct Reader {
    const std::string& data;
    size_t pos = 0;

    void need(size_t n) const {
        if (pos + n > data.size())
            throw integrity_error("lut file: truncated at offset " + std::to_string(pos));
    }
    uint64_t u64() {
        need(8);
        uint64_t v = 0;
        for (int i = 0; i < 8; ++i)
            v |= static_cast<uint64_t>(static_cast<unsigned char>(data[pos + i])) << (8 * i);
        pos += 8;
        return v;
    }
    uint32_t u32() {
        need(4);
        uint32_t v = 0;
        for (int i = 0; i < 4; ++i)
            v |= static_cast<uint32_t>(static_cast<unsigned char>(data[pos + i])) << (8 * i);
        pos += 4;
        return v;
    }
    uint8_t u8() {
        need(1);
        return static_cast<uint8_t>(data[pos++]);
    }
};

void put_matrix(std::string& out, const So6Matrix& m) {
    for (const Dyadic& d : m.flat()) put_u64(out, d.packed());
}

So6Matrix read_matrix(Reader& r) {
    So6Matrix m;
    for (Dyadic& d : m.flat()) {
        const size_t at = r.pos;
        try {
            d = Dyadic::from_packed_checked(r.u64());
        } catch (const integrity_error& e) {
            throw integrity_error("lut file: bad entry at offset " + std::to_string(at) + ": " +
                                  e.what());
        }
    }
    return m;
}

}  // namespace

void save_lut(const Lut& lut, const std::string& path) {
    std::string out;
    out.append(kLutMagic, sizeof(kLutMagic));
    put_u32(out, kLutFormatVersion);
    put_u64(out, kSignatureFingerprint);
    out.push_back(static_cast<char>(kVariantO6));
    put_matrix(out, lut.root);
    put_u64(out, lut.layers.size());
    for (const auto& layer : lut.layers) put_u64(out, layer.size());
    for (const auto& layer : lut.layers) {
        for (const Node& n : layer) {
            put_matrix(out, n.canon);
            out.push_back(static_cast<char>(n.gen_id));
            put_u64(out, n.parent);
        }
    }
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw parse_error("lut file: cannot open for writing: " + path);
    f.write(out.data(), static_cast<std::streamsize>(out.size()));
    f.flush();
    if (!f) throw parse_error("lut file: write failed: " + path);
}

Lut load_lut(const std::string& path, double verify_fraction) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw parse_error("lut file: cannot open: " + path);
    std::string data((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
    Reader r{data};

    r.need(sizeof(kLutMagic));
    if (std::memcmp(data.data(), kLutMagic, sizeof(kLutMagic)) != 0)
        throw integrity_error("lut file: bad magic");
    r.pos += sizeof(kLutMagic);
    const uint32_t version = r.u32();
    if (version != kLutFormatVersion)
        throw integrity_error("lut file: unsupported version " + std::to_string(version));
    const uint64_t fingerprint = r.u64();
    if (fingerprint != kSignatureFingerprint)
        throw integrity_error("lut file: hash-constant fingerprint mismatch");
    const uint8_t variant = r.u8();
    if (variant != kVariantO6)
        throw integrity_error("lut file: unknown equivalence variant tag");

    Lut lut;
    lut.root = read_matrix(r);
    const uint64_t layer_count = r.u64();
    if (layer_count == 0 || layer_count > (1u << 20))
        throw integrity_error("lut file: implausible layer count");
    std::vector<uint64_t> counts(layer_count);
    for (auto& c : counts) c = r.u64();

    lut.layers.reserve(layer_count);
    uint64_t record = 0, checked = 0;
    uint64_t stride = verify_fraction > 0.0
                          ? std::max<uint64_t>(1, static_cast<uint64_t>(1.0 / verify_fraction))
                          : 0;
    for (uint64_t li = 0; li < layer_count; ++li) {
        std::vector<Node> layer;
        layer.reserve(counts[li]);
        for (uint64_t i = 0; i < counts[li]; ++i, ++record) {
            const size_t at = r.pos;
            Node n;
            n.canon = read_matrix(r);
            n.gen_id = r.u8();
            n.parent = r.u64();
            if (li == 0 ? n.gen_id != kNoGen
                        : (n.gen_id >= GenIndex::kPairCount || n.parent >= counts[li - 1]))
                throw integrity_error("lut file: bad record metadata at offset " +
                                      std::to_string(at));
            if (i > 0 && !flat_less(layer.back().canon, n.canon))
                throw integrity_error("lut file: layer order violated at offset " +
                                      std::to_string(at));
            if (stride && record % stride == 0) {
                ++checked;
                if (!validate_so6(n.canon) || canonicalize(n.canon).matrix != n.canon)
                    throw integrity_error("lut file: record invariant failure at offset " +
                                          std::to_string(at));
            }
            layer.push_back(std::move(n));
        }
        lut.layers.push_back(std::move(layer));
        lut.index_layer(static_cast<uint32_t>(li));
    }
    if (r.pos != data.size())
        throw integrity_error("lut file: trailing bytes at offset " + std::to_string(r.pos));
    (void)checked;
    return lut;
}

}  // namespace so6synth
