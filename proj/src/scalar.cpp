#include "aah/scalar.hpp"
#include "aah/errors.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>

namespace aah {

const char* error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::InvalidInput: return "invalid-input";
    case ErrorKind::Precondition: return "precondition";
    case ErrorKind::Consistency: return "internal-consistency";
    case ErrorKind::NonConvergence: return "non-convergence";
    case ErrorKind::NoWitness: return "no-witness";
    case ErrorKind::Degenerate: return "degenerate";
    case ErrorKind::Lookup: return "lookup";
  }
  return "unknown";
}

template <>
double from_double<double>(double x) {
  return x;
}

template <>
Rational from_double<Rational>(double x) {
  return rational_from_double_literal(x);
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

mpz_class pow10(long e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, static_cast<unsigned long>(e));
  return r;
}

Rational parse_decimal(std::string_view s, std::string_view original) {
  auto bad = [&]() -> Rational {
    fail(ErrorKind::InvalidInput, "not an exact rational: '" + std::string(original) + "'");
  };
  bool neg = false;
  if (!s.empty() && (s[0] == '+' || s[0] == '-')) {
    neg = s[0] == '-';
    s.remove_prefix(1);
  }
  long exp10 = 0;
  if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view es = s.substr(e + 1);
    bool eneg = false;
    if (!es.empty() && (es[0] == '+' || es[0] == '-')) {
      eneg = es[0] == '-';
      es.remove_prefix(1);
    }
    if (!all_digits(es) || es.size() > 6) bad();
    long v = 0;
    std::from_chars(es.data(), es.data() + es.size(), v);
    exp10 = eneg ? -v : v;
    s = s.substr(0, e);
  }
  std::string digits;
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view ip = s.substr(0, dot), fp = s.substr(dot + 1);
    if ((ip.empty() && fp.empty()) || (!ip.empty() && !all_digits(ip)) || (!fp.empty() && !all_digits(fp))) bad();
    digits = std::string(ip) + std::string(fp);
    exp10 -= static_cast<long>(fp.size());
  } else {
    if (!all_digits(s)) bad();
    digits = std::string(s);
  }
  if (digits.empty()) bad();
  mpz_class num(digits, 10);
  Rational q;
  if (exp10 >= 0)
    q = Rational(num * pow10(exp10));
  else
    q = Rational(num, pow10(-exp10));
  q.canonicalize();
  return neg ? Rational(-q) : q;
}

}  // namespace

Rational parse_rational(std::string_view s) {
  std::string_view t = s;
  while (!t.empty() && std::isspace(static_cast<unsigned char>(t.front()))) t.remove_prefix(1);
  while (!t.empty() && std::isspace(static_cast<unsigned char>(t.back()))) t.remove_suffix(1);
  if (t.empty()) fail(ErrorKind::InvalidInput, "empty number");
  if (auto slash = t.find('/'); slash != std::string_view::npos) {
    Rational p = parse_decimal(t.substr(0, slash), s);
    Rational q = parse_decimal(t.substr(slash + 1), s);
    if (q == 0) fail(ErrorKind::InvalidInput, "zero denominator in '" + std::string(s) + "'");
    Rational r = p / q;
    r.canonicalize();
    return r;
  }
  return parse_decimal(t, s);
}

Rational rational_from_double_literal(double x) {
  if (!std::isfinite(x)) fail(ErrorKind::InvalidInput, "non-finite number");
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return parse_rational(std::string_view(buf, static_cast<size_t>(res.ptr - buf)));
}

std::string rational_to_string(const Rational& q) {
  Rational c = q;
  c.canonicalize();
  return c.get_str();
}

}  // namespace aah
