#include "so6synth/text_io.hpp"

#include <cctype>
#include <sstream>

namespace so6synth {

namespace {

int64_t parse_int(const std::string& tok, size_t& pos, int line, const char* what) {
    const size_t start = pos;
    if (pos < tok.size() && (tok[pos] == '-' || tok[pos] == '+')) ++pos;
    while (pos < tok.size() && std::isdigit(static_cast<unsigned char>(tok[pos]))) ++pos;
    if (pos == start || (tok[start] == '-' && pos == start + 1) ||
        (tok[start] == '+' && pos == start + 1))
        throw parse_error("line " + std::to_string(line) + ": expected " + what + " in '" +
                          tok + "'");
    return std::stoll(tok.substr(start, pos - start));
}

Dyadic parse_entry(const std::string& tok, int line, int col) {
    size_t pos = 0;
    auto expect = [&](char c) {
        if (pos >= tok.size() || tok[pos] != c)
            throw parse_error("line " + std::to_string(line) + ", entry " +
                              std::to_string(col + 1) + ": malformed triple '" + tok + "'");
        ++pos;
    };
    const int64_t a = parse_int(tok, pos, line, "integer a");
    expect(',');
    const int64_t b = parse_int(tok, pos, line, "integer b");
    expect(',');
    const int64_t c = parse_int(tok, pos, line, "integer c");
    if (pos != tok.size())
        throw parse_error("line " + std::to_string(line) + ", entry " + std::to_string(col + 1) +
                          ": trailing characters in '" + tok + "'");
    Dyadic d;
    try {
        d = Dyadic::reduce(a, b, c);
    } catch (const overflow_error& e) {
        throw parse_error("line " + std::to_string(line) + ", entry " + std::to_string(col + 1) +
                          ": " + e.what());
    }
    if (d.a() != a || d.b() != b || d.c() != c)
        throw parse_error("line " + std::to_string(line) + ", entry " + std::to_string(col + 1) +
                          ": non-reduced entry '" + tok + "'");
    return d;
}

}  // namespace

So6Matrix parse_matrix(const std::string& text) {
    std::istringstream in(text);
    So6Matrix m;
    std::string line;
    int row = 0;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ls(line);
        std::string tok;
        int col = 0;
        while (ls >> tok) {
            if (row >= 6 || col >= 6)
                throw parse_error("line " + std::to_string(line_no) + ": too many entries");
            m.at(row, col) = parse_entry(tok, line_no, col);
            ++col;
        }
        if (col == 0) continue;  // blank line
        if (col != 6)
            throw parse_error("line " + std::to_string(line_no) + ": expected 6 entries, got " +
                              std::to_string(col));
        ++row;
    }
    if (row != 6) throw parse_error("matrix: expected 6 rows, got " + std::to_string(row));
    validate_so6(m, /*throwing=*/true);
    return m;
}

std::string format_matrix(const So6Matrix& u) {
    std::string out;
    for (int row = 0; row < 6; ++row) {
        for (int col = 0; col < 6; ++col) {
            if (col) out += ' ';
            out += u.at(row, col).to_string();
        }
        out += '\n';
    }
    return out;
}

Word parse_word(const std::string& text) {
    Word w;
    std::istringstream in(text);
    std::string tok;
    bool saw_perm = false;
    while (in >> tok) {
        if (saw_perm) throw parse_error("word: tokens after the trailing permutation");
        if (tok.size() >= 6 && (tok[0] == 'G' || tok[0] == 'X') && tok[1] == '(' &&
            tok[3] == ',' && tok[5] == ')' && tok.size() == 6) {
            const int i = tok[2] - '0', j = tok[4] - '0';
            if (i < 1 || j < 1 || i >= j || j > 6)
                throw parse_error("word: bad generator indices in '" + tok + "'");
            w.steps.push_back(tok[0] == 'X' ? GenIndex::inv(i, j) : GenIndex::plain(i, j));
        } else if (tok[0] == 'P' && tok.size() > 1 && tok[1] == '[') {
            // Re-join: the token may have been split on internal spaces.
            std::string rest = tok;
            while (rest.back() != ']') {
                std::string more;
                if (!(in >> more)) throw parse_error("word: unterminated permutation token");
                rest += ' ';
                rest += more;
            }
            // P[p1 p2 p3 p4 p5 p6; ssssss]
            std::array<uint8_t, 6> images{};
            uint8_t signs = 0;
            std::istringstream ps(rest.substr(2, rest.size() - 3));
            uint8_t seen = 0;
            for (int k = 0; k < 6; ++k) {
                int p;
                if (!(ps >> p) || p < 1 || p > 6)
                    throw parse_error("word: bad permutation image in '" + rest + "'");
                images[k] = static_cast<uint8_t>(p - 1);
                seen |= uint8_t(1) << (p - 1);
            }
            if (seen != 0x3f) throw parse_error("word: images are not a permutation");
            std::string semi, sgn;
            ps >> semi;
            if (semi == ";") {
                if (!(ps >> sgn)) throw parse_error("word: missing sign block");
            } else if (!semi.empty() && semi[0] == ';') {
                sgn = semi.substr(1);
            } else {
                throw parse_error("word: expected ';' in '" + rest + "'");
            }
            if (sgn.size() != 6) throw parse_error("word: expected 6 signs");
            for (int k = 0; k < 6; ++k) {
                if (sgn[k] == '-')
                    signs |= uint8_t(1) << k;
                else if (sgn[k] != '+')
                    throw parse_error("word: bad sign character");
            }
            w.correction = SignedPerm::from_images(images, signs);
            saw_perm = true;
        } else {
            throw parse_error("word: unrecognized token '" + tok + "'");
        }
    }
    return w;
}

std::string format_word(const Word& w) {
    std::string out;
    for (const GenIndex& g : w.steps) {
        if (!out.empty()) out += ' ';
        out += g.involutive ? 'X' : 'G';
        out += '(';
        out += static_cast<char>('0' + g.i);
        out += ',';
        out += static_cast<char>('0' + g.j);
        out += ')';
    }
    if (!w.correction.is_identity() || w.steps.empty()) {
        if (!out.empty()) out += ' ';
        out += w.correction.to_string();
    }
    return out;
}

}  // namespace so6synth
