#include "gospace/scalar.hpp"

#include <cctype>
#include <cmath>
#include <limits>

namespace gospace {

Rational rational_from_double(double x) {
  if (!std::isfinite(x)) throw InvalidArgument("non-finite value cannot be made rational");
  return Rational(x);
}

Rational rationalize(double x, std::int64_t max_den) {
  if (!std::isfinite(x)) throw InvalidArgument("rationalize: non-finite value");
  if (max_den < 1) throw InvalidArgument("rationalize: max_den must be positive");
  const bool neg = x < 0;
  double r = std::abs(x);
  // convergents h/k
  mpz_class h_prev = 1, h = static_cast<long>(std::floor(r));
  mpz_class k_prev = 0, k = 1;
  double frac = r - std::floor(r);
  Rational best(h, k);
  for (int it = 0; it < 64 && frac > 1e-18; ++it) {
    r = 1.0 / frac;
    const double a_d = std::floor(r);
    frac = r - a_d;
    if (a_d > 1e15) break;
    mpz_class a = static_cast<long>(a_d);
    mpz_class h_next = a * h + h_prev;
    mpz_class k_next = a * k + k_prev;
    if (k_next > max_den) {
      // best semiconvergent within the bound
      mpz_class t = (mpz_class(max_den) - k_prev) / k;
      if (2 * t >= a) {
        Rational semi(t * h + h_prev, t * k + k_prev);
        semi.canonicalize();
        Rational target = rational_from_double(std::abs(x));
        if (abs(semi - target) < abs(best - target)) best = semi;
      }
      break;
    }
    h_prev = h;
    k_prev = k;
    h = h_next;
    k = k_next;
    best = Rational(h, k);
    best.canonicalize();
  }
  return neg ? Rational(-best) : best;
}

std::string to_string(const Rational& q) {
  Rational c = q;
  c.canonicalize();
  return c.get_str();
}

Rational parse_rational(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) throw InvalidArgument("empty rational literal");
  auto dot = s.find('.');
  auto exp_pos = s.find_first_of("eE");
  if (dot != std::string::npos || exp_pos != std::string::npos) {
    // decimal literal: read exactly as a base-10 fraction
    std::string mant = s.substr(0, exp_pos);
    long exponent = 0;
    if (exp_pos != std::string::npos) exponent = std::stol(s.substr(exp_pos + 1));
    bool neg = false;
    if (!mant.empty() && (mant[0] == '-' || mant[0] == '+')) {
      neg = mant[0] == '-';
      mant = mant.substr(1);
    }
    std::string digits;
    long frac_digits = 0;
    bool seen_dot = false;
    for (char c : mant) {
      if (c == '.') {
        if (seen_dot) throw InvalidArgument("bad decimal literal: " + text);
        seen_dot = true;
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        digits.push_back(c);
        if (seen_dot) ++frac_digits;
      } else {
        throw InvalidArgument("bad decimal literal: " + text);
      }
    }
    if (digits.empty()) throw InvalidArgument("bad decimal literal: " + text);
    mpz_class num(digits, 10);
    long shift = exponent - frac_digits;
    mpz_class ten_pow;
    mpz_ui_pow_ui(ten_pow.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(shift)));
    Rational q = shift >= 0 ? Rational(num * ten_pow) : Rational(num, ten_pow);
    q.canonicalize();
    return neg ? Rational(-q) : q;
  }
  Rational q;
  if (q.set_str(s, 10) != 0) throw InvalidArgument("bad rational literal: " + text);
  if (sgn(q.get_den()) == 0) throw InvalidArgument("zero denominator: " + text);
  q.canonicalize();
  return q;
}

}  // namespace gospace
