#include "weil3/label.hpp"

#include <stdexcept>

namespace weil3 {

namespace {

[[noreturn]] void bad(const std::string& label, const std::string& why) {
  throw std::invalid_argument("label \"" + label + "\": " + why);
}

// Base-26 magnitude of a token known to contain only 'a'..'z', MSB first,
// with no leading 'a' (callers enforce canonicality).
Int magnitude(const std::string& tok) {
  Int v = 0;
  for (char ch : tok) v = v * 26 + (ch - 'a');
  return v;
}

Int decode_token(const std::string& label, const std::string& tok) {
  if (tok.empty()) bad(label, "empty coefficient token");
  for (char ch : tok)
    if (ch < 'a' || ch > 'z') bad(label, "token \"" + tok + "\" has non a-z character");
  if (tok.size() == 1) return Int(tok[0] - 'a');
  if (tok[0] != 'a') return magnitude(tok);
  // Negation prefix: the remainder must itself be a canonical positive token.
  std::string rest = tok.substr(1);
  if (rest[0] == 'a') bad(label, "token \"" + tok + "\" has a leading zero digit");
  return -magnitude(rest);
}

std::string encode_magnitude(Int v) {
  std::string out;
  while (v > 0) {
    out.insert(out.begin(), static_cast<char>('a' + mpz_class(v % 26).get_si()));
    v /= 26;
  }
  return out;
}

std::string encode_token(const Int& v) {
  if (v == 0) return "a";
  if (v > 0) return encode_magnitude(v);
  return "a" + encode_magnitude(-v);
}

// Strict decimal parse of a dot-separated field.
Int parse_int_field(const std::string& label, const std::string& field, const char* what) {
  if (field.empty()) bad(label, std::string("empty ") + what);
  for (char ch : field)
    if (ch < '0' || ch > '9') bad(label, std::string("non-decimal ") + what);
  if (field.size() > 1 && field[0] == '0') bad(label, std::string("leading zero in ") + what);
  return Int(field);
}

}  // namespace

DecodedLabel decode_label(const std::string& label) {
  auto dot1 = label.find('.');
  auto dot2 = dot1 == std::string::npos ? std::string::npos : label.find('.', dot1 + 1);
  if (dot2 == std::string::npos || label.find('.', dot2 + 1) != std::string::npos)
    bad(label, "expected exactly two '.' separators");

  DecodedLabel out;
  Int g = parse_int_field(label, label.substr(0, dot1), "genus");
  if (g < 1 || g > 64) bad(label, "genus out of range");
  out.g = g.get_si();
  out.q = parse_int_field(label, label.substr(dot1 + 1, dot2 - dot1 - 1), "field size");
  if (out.q < 2) bad(label, "field size must be >= 2");

  std::string toks = label.substr(dot2 + 1);
  size_t pos = 0;
  while (true) {
    size_t us = toks.find('_', pos);
    out.coeffs.push_back(decode_token(label, toks.substr(pos, us - pos)));
    if (us == std::string::npos) break;
    pos = us + 1;
  }
  if (static_cast<long>(out.coeffs.size()) != out.g)
    bad(label, "expected " + std::to_string(out.g) + " coefficient tokens, got " +
                   std::to_string(out.coeffs.size()));
  return out;
}

std::string encode_label(long g, const Int& q, const std::vector<Int>& coeffs) {
  if (g < 1 || static_cast<long>(coeffs.size()) != g)
    throw std::invalid_argument("encode_label: need exactly g coefficients");
  if (q < 2) throw std::invalid_argument("encode_label: field size must be >= 2");
  std::string out = std::to_string(g) + "." + q.get_str() + ".";
  for (size_t i = 0; i < coeffs.size(); ++i) {
    if (i) out += '_';
    out += encode_token(coeffs[i]);
  }
  return out;
}

}  // namespace weil3
