#pragma once

// Isogeny-class label codec.
//
// A label is "g.q.tok_1_tok_2_..._tok_g".  Each token encodes one leading
// coefficient of the Weil polynomial in base 26 with digits a=0..z=25, most
// significant first; a token of length > 1 whose first letter is 'a' encodes
// the negation of the value spelled by the remaining letters.  "a" alone is 0.

#include <string>
#include <vector>

#include "weil3/arith.hpp"

namespace weil3 {

struct DecodedLabel {
  long g = 0;
  Int q;
  std::vector<Int> coeffs;  // s, t, u, ... (g of them)
};

// Throws std::invalid_argument on any malformed input (wrong shape, illegal
// characters, non-canonical tokens such as "aa" or "aab").
DecodedLabel decode_label(const std::string& label);

// Inverse of decode_label; encode_label(decode_label(l)) == l for well-formed
// labels and decode_label(encode_label(...)) round-trips any coefficients.
std::string encode_label(long g, const Int& q, const std::vector<Int>& coeffs);

}  // namespace weil3
