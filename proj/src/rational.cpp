#include "mstfan/rational.hpp"

#include <cctype>

#include "mstfan/errors.hpp"

namespace mstfan {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view body = text;
  if (!body.empty() && body.front() == '-') body.remove_prefix(1);
  const auto slash = body.find('/');
  const std::string_view num = body.substr(0, slash);
  const std::string_view den = slash == std::string_view::npos ? std::string_view{"1"} : body.substr(slash + 1);
  if (!all_digits(num) || !all_digits(den)) {
    throw ValidationError("malformed rational '" + std::string(text) + "'");
  }
  Integer d(std::string(den), 10);
  if (d == 0) throw ValidationError("zero denominator in '" + std::string(text) + "'");
  Rational q(Integer(std::string(num), 10), d);
  q.canonicalize();
  if (text.front() == '-') q = -q;
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

Rational dot(const RationalVector& a, const RationalVector& b) {
  Rational sum = 0;
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (sgn(a[i]) != 0 && sgn(b[i]) != 0) sum += a[i] * b[i];
  }
  return sum;
}

}  // namespace mstfan
