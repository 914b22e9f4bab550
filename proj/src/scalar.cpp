#include "lckw/scalar.hpp"

#include <cctype>

namespace lckw {

namespace {

bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

Rational parse_integer(const std::string& s) {
  std::string body = s;
  bool neg = false;
  if (!body.empty() && (body[0] == '-' || body[0] == '+')) {
    neg = body[0] == '-';
    body.erase(0, 1);
  }
  if (!all_digits(body)) throw std::invalid_argument("not an integer: '" + s + "'");
  Rational r{boost::multiprecision::mpz_int(body)};
  return neg ? Rational(-r) : r;
}

}  // namespace

Rational parse_rational(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty rational literal");
  const auto slash = text.find('/');
  if (slash != std::string::npos) {
    const Rational num = parse_integer(text.substr(0, slash));
    const std::string den_text = text.substr(slash + 1);
    if (!all_digits(den_text)) throw std::invalid_argument("bad denominator in '" + text + "'");
    const Rational den = parse_integer(den_text);
    if (den == 0) throw std::invalid_argument("zero denominator in '" + text + "'");
    return num / den;
  }
  const auto dot = text.find('.');
  if (dot == std::string::npos) return parse_integer(text);
  const std::string whole = text.substr(0, dot);
  const std::string frac = text.substr(dot + 1);
  if (!frac.empty() && !all_digits(frac)) throw std::invalid_argument("bad decimal literal '" + text + "'");
  const bool neg = !whole.empty() && whole[0] == '-';
  const std::string whole_digits = (whole.empty() || whole == "-" || whole == "+") ? "0" : whole;
  Rational r = boost::multiprecision::abs(parse_integer(whole_digits));
  if (!frac.empty()) {
    boost::multiprecision::mpz_int scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    r += Rational(boost::multiprecision::mpz_int(frac)) / Rational(scale);
  }
  return neg ? Rational(-r) : r;
}

std::string format_rational(const Rational& q) {
  const auto num = boost::multiprecision::numerator(q);
  const auto den = boost::multiprecision::denominator(q);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

}  // namespace lckw
