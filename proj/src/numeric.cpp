#include "posetflow/numeric.hpp"

#include <cctype>

namespace posetflow {

namespace {

bool is_decimal(const std::string& s) {
  size_t i = (!s.empty() && s[0] == '-') ? 1 : 0;
  if (i >= s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

}  // namespace

std::optional<BigInt> parse_decimal(const std::string& text) {
  if (!is_decimal(text)) return std::nullopt;
  BigInt v;
  if (v.set_str(text, 10) != 0) return std::nullopt;
  return v;
}

std::optional<Rational> parse_fraction(const std::string& text) {
  auto slash = text.find('/');
  if (slash == std::string::npos) {
    auto n = parse_decimal(text);
    if (!n) return std::nullopt;
    return Rational(*n);
  }
  auto num = parse_decimal(text.substr(0, slash));
  auto den = parse_decimal(text.substr(slash + 1));
  if (!num || !den || *den == 0) return std::nullopt;
  return make_rational(*num, *den);
}

std::string decimal_approx(const Rational& v, int digits) {
  BigInt scale = 1;
  for (int i = 0; i < digits; ++i) scale *= 10;
  BigInt num = v.get_num() * scale * 2;
  BigInt den = v.get_den();
  BigInt q = num / den;  // truncated; fix rounding via the doubled numerator
  bool neg = q < 0;
  if (neg) q = -q;
  q = (q + 1) / 2;  // round half away from zero
  BigInt whole = q / scale;
  BigInt frac = q % scale;
  std::string f = frac.get_str();
  f.insert(f.begin(), static_cast<size_t>(digits) - f.size(), '0');
  return (neg ? "-" : "") + whole.get_str() + "." + f;
}

}  // namespace posetflow
