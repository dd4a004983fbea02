#include "rtct/rational.hpp"

#include <cctype>
#include <ostream>
#include <stdexcept>

namespace rtct {

Rational::Rational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  q_ = mpq_class(num, den);
  q_.canonicalize();
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.q_ == 0) throw std::domain_error("rational division by zero");
  q_ /= o.q_;
  return *this;
}

BigInt Rational::floor() const {
  BigInt out;
  mpz_fdiv_q(out.get_mpz_t(), q_.get_num().get_mpz_t(), q_.get_den().get_mpz_t());
  return out;
}

BigInt Rational::ceil() const {
  BigInt out;
  mpz_cdiv_q(out.get_mpz_t(), q_.get_num().get_mpz_t(), q_.get_den().get_mpz_t());
  return out;
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

Rational Rational::parse(std::string_view text) {
  std::string_view s = trim(text);
  if (s.empty()) throw std::invalid_argument("empty rational literal");

  bool negative = false;
  if (s.front() == '+' || s.front() == '-') {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (s.empty()) throw std::invalid_argument("sign without digits in rational literal");

  auto bad = [&text]() -> Rational {
    throw std::invalid_argument("malformed rational literal: '" + std::string(text) + "'");
  };

  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    std::string_view num = s.substr(0, slash);
    std::string_view den = s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) return bad();
    BigInt n(std::string(num), 10), d(std::string(den), 10);
    if (d == 0) throw std::domain_error("rational with zero denominator");
    Rational r(n, d);
    return negative ? -r : r;
  }

  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view ip = s.substr(0, dot);
    std::string_view fp = s.substr(dot + 1);
    if (ip.empty() && fp.empty()) return bad();
    if (!ip.empty() && !all_digits(ip)) return bad();
    if (!fp.empty() && !all_digits(fp)) return bad();
    BigInt scale = 1;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, fp.size());
    BigInt n = (ip.empty() ? BigInt(0) : BigInt(std::string(ip), 10)) * scale +
               (fp.empty() ? BigInt(0) : BigInt(std::string(fp), 10));
    Rational r(n, scale);
    return negative ? -r : r;
  }

  if (!all_digits(s)) return bad();
  Rational r{BigInt(std::string(s), 10)};
  return negative ? -r : r;
}

std::string Rational::str() const {
  if (is_integer()) return q_.get_num().get_str();
  return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

Rational abs(const Rational& a) { return a.sign() < 0 ? -a : a; }
Rational min(const Rational& a, const Rational& b) { return b < a ? b : a; }
Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace rtct
