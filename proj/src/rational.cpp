#include "autorand/rational.hpp"

namespace autorand {

std::string to_fraction(const Rational& r) {
  Rational reduced = r;
  reduced.canonicalize();
  return reduced.get_str();
}

std::string to_decimal(const Rational& r, int digits) {
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
  Rational magnitude = abs(r) * scale + Rational(1, 2);
  mpz_class scaled = magnitude.get_num() / magnitude.get_den();
  std::string text = scaled.get_str();
  if (static_cast<int>(text.size()) <= digits) {
    text.insert(0, static_cast<std::size_t>(digits) + 1 - text.size(), '0');
  }
  std::string out = text.substr(0, text.size() - digits);
  if (digits > 0) out += "." + text.substr(text.size() - digits);
  if (sgn(r) < 0 && scaled != 0) out.insert(0, "-");
  return out;
}

Rational power_of_half(unsigned exponent) {
  mpz_class den;
  mpz_ui_pow_ui(den.get_mpz_t(), 2, exponent);
  return Rational(mpz_class(1), den);
}

Rational pow(const Rational& base, unsigned exponent) {
  mpz_class num, den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), exponent);
  mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), exponent);
  Rational out(num, den);
  out.canonicalize();
  return out;
}

}  // namespace autorand
