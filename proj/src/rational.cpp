#include "cycform/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace cycform {

std::string to_string(const Rational& value) {
  Rational v = value;
  v.canonicalize();
  return v.get_str();
}

Rational parse_rational(std::string_view text) {
  auto valid_integer = [](std::string_view s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
  };
  std::string s(text);
  if (!s.empty() && s[0] == '+') s.erase(0, 1);
  auto slash = s.find('/');
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!valid_integer(num) || !valid_integer(den) || den.find('-') != std::string::npos)
    throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
  if (mpz_class(den, 10) == 0)
    throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  Rational r(num + "/" + den, 10);
  r.canonicalize();
  return r;
}

}  // namespace cycform
