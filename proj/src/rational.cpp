#include "cocyclelab/rational.hpp"

#include <cctype>
#include <cstdlib>

#include "cocyclelab/errors.hpp"

namespace cocyclelab {

namespace {

bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Rational rational_from(std::int64_t num, std::int64_t den) {
  if (den == 0) throw ParseError("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  Rational r(Integer(static_cast<long>(num)), Integer(static_cast<long>(den)));
  r.canonicalize();
  return r;
}

Rational parse_rational(const std::string& text) {
  std::string s = text;
  bool negative = false;
  if (!s.empty() && (s[0] == '+' || s[0] == '-')) {
    negative = (s[0] == '-');
    s.erase(0, 1);
  }
  std::string num_part = s;
  std::string den_part = "1";
  if (auto slash = s.find('/'); slash != std::string::npos) {
    num_part = s.substr(0, slash);
    den_part = s.substr(slash + 1);
  }
  if (!all_digits(num_part) || !all_digits(den_part)) {
    throw ParseError("malformed rational: '" + text + "'");
  }
  Integer num(num_part, 10);
  Integer den(den_part, 10);
  if (den == 0) throw ParseError("zero denominator in rational: '" + text + "'");
  if (negative) num = -num;
  Rational r(num, den);
  r.canonicalize();
  return r;
}

std::string format_rational(const Rational& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

std::string to_decimal_string(const Rational& r, int significant) {
  if (significant < 1) significant = 1;
  if (r == 0) {
    std::string out = "0.";
    out.append(static_cast<std::size_t>(significant), '0');
    return out;
  }
  const bool negative = (r < 0);
  const Rational a = negative ? Rational(-r) : r;

  // e = floor(log10(a)), found exactly by comparing against powers of ten.
  long e = static_cast<long>(mpz_sizeinbase(a.get_num().get_mpz_t(), 10)) -
           static_cast<long>(mpz_sizeinbase(a.get_den().get_mpz_t(), 10));
  auto pow10 = [](long k) {
    Integer p;
    mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(k >= 0 ? k : -k));
    return k >= 0 ? Rational(p) : Rational(Integer(1), p);
  };
  while (a >= pow10(e + 1)) ++e;
  while (a < pow10(e)) --e;

  long decimals = significant - 1 - e;
  if (decimals < 0) decimals = 0;

  // round(a * 10^decimals), half away from zero
  Integer scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(decimals));
  Integer num = a.get_num() * scale;
  Integer den = a.get_den();
  Integer m = (2 * num + den) / (2 * den);

  std::string digits = m.get_str();
  if (static_cast<long>(digits.size()) <= decimals) {
    digits.insert(0, static_cast<std::size_t>(decimals + 1 - digits.size()), '0');
  }
  std::string out;
  if (negative) out += '-';
  if (decimals == 0) {
    out += digits;
  } else {
    out += digits.substr(0, digits.size() - static_cast<std::size_t>(decimals));
    out += '.';
    out += digits.substr(digits.size() - static_cast<std::size_t>(decimals));
  }
  return out;
}

Rational mod_one(const Rational& r) {
  Integer rem;
  mpz_fdiv_r(rem.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
  Rational out(rem, r.get_den());
  out.canonicalize();
  return out;
}

Rational circle_distance(const Rational& x, const Rational& y) {
  Rational d = mod_one(x) - mod_one(y);
  if (d < 0) d = -d;
  Rational wrap = 1 - d;
  return d <= wrap ? d : wrap;
}

}  // namespace cocyclelab
