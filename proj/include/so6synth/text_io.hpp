#pragma once

#include <string>

#include "so6synth/generators.hpp"

namespace so6synth {

// Matrix text format: 6 lines of 6 whitespace-separated "a,b,c" triples,
// row-major. The parser validates reduction, exact orthogonality, and
// det in {+1,-1}.
So6Matrix parse_matrix(const std::string& text);
std::string format_matrix(const So6Matrix& u);

// Word text format: whitespace-separated "G(i,j)" (plain) or "X(i,j)"
// (involutive) tokens, optional trailing "P[p1 p2 p3 p4 p5 p6; ssssss]"
// with 1-based images and signs in {+,-}.
Word parse_word(const std::string& text);
std::string format_word(const Word& w);

}  // namespace so6synth
