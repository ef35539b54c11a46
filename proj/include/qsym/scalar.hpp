#pragma once

#include <gmpxx.h>

#include <complex>
#include <stdexcept>
#include <string>

namespace qsym {

using Rational = mpq_class;

/// Parses "p", "-p", or "p/q" (base 10). Result is canonicalized.
inline Rational rational_from_string(std::string s) {
  if (!s.empty() && s.front() == '+') s.erase(0, 1);
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  mpq_class q;
  if (q.set_str(s, 10) != 0) throw std::invalid_argument("bad rational literal: " + s);
  q.canonicalize();
  return q;
}

/// Canonical text form: "p" or "p/q" with q > 0 and gcd(p,q) = 1.
inline std::string rational_to_string(const Rational& q) { return q.get_str(); }

/// mpq_class(p, q) does not canonicalize; every fraction built from parts
/// must go through here or GMP comparisons misbehave.
inline Rational make_rational(long p, long q = 1) {
  if (q == 0) throw std::domain_error("zero denominator");
  Rational r(p, q);
  r.canonicalize();
  return r;
}

inline double rational_to_double(const Rational& q) { return q.get_d(); }

/// Exact element of Q(i). Field operations never round; conversion to
/// std::complex<double> is the only lossy path.
struct Scalar {
  Rational re, im;

  Scalar() : re(0), im(0) {}
  Scalar(long n) : re(n), im(0) {}
  Scalar(const Rational& r) : re(r), im(0) {}
  Scalar(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

  static Scalar zero() { return Scalar(); }
  static Scalar one() { return Scalar(1); }
  static Scalar unit_i() { return Scalar(Rational(0), Rational(1)); }

  bool is_zero() const { return re == 0 && im == 0; }
  bool is_real() const { return im == 0; }
  bool is_one() const { return re == 1 && im == 0; }

  Scalar conj() const { return Scalar(re, Rational(-im)); }

  /// |z|^2, exact.
  Rational norm2() const { return Rational(re * re + im * im); }

  std::complex<double> to_complex() const { return {re.get_d(), im.get_d()}; }

  friend Scalar operator+(const Scalar& a, const Scalar& b) {
    return Scalar(Rational(a.re + b.re), Rational(a.im + b.im));
  }
  friend Scalar operator-(const Scalar& a, const Scalar& b) {
    return Scalar(Rational(a.re - b.re), Rational(a.im - b.im));
  }
  friend Scalar operator-(const Scalar& a) { return Scalar(Rational(-a.re), Rational(-a.im)); }
  friend Scalar operator*(const Scalar& a, const Scalar& b) {
    return Scalar(Rational(a.re * b.re - a.im * b.im), Rational(a.re * b.im + a.im * b.re));
  }
  friend Scalar operator/(const Scalar& a, const Scalar& b) {
    Rational n = b.norm2();
    if (n == 0) throw std::domain_error("division by zero scalar");
    return Scalar(Rational((a.re * b.re + a.im * b.im) / n),
                  Rational((a.im * b.re - a.re * b.im) / n));
  }
  Scalar& operator+=(const Scalar& b) { re += b.re; im += b.im; return *this; }
  Scalar& operator-=(const Scalar& b) { re -= b.re; im -= b.im; return *this; }
  Scalar& operator*=(const Scalar& b) { *this = *this * b; return *this; }

  friend bool operator==(const Scalar& a, const Scalar& b) { return a.re == b.re && a.im == b.im; }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }
};

/// Coefficient text form used by the polynomial grammar: "p/q" for rationals,
/// "p/qi" for purely imaginary values, "(p/q+r/si)" in general.
inline std::string scalar_to_string(const Scalar& z) {
  if (z.im == 0) return rational_to_string(z.re);
  if (z.re == 0) return rational_to_string(z.im) + "i";
  std::string im = rational_to_string(z.im);
  std::string sep = (im[0] == '-') ? "" : "+";
  return "(" + rational_to_string(z.re) + sep + im + "i)";
}

inline Scalar scalar_from_string(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty scalar literal");
  if (s.front() == '(') {
    if (s.size() < 4 || s.back() != ')' || s[s.size() - 2] != 'i')
      throw std::invalid_argument("bad scalar literal: " + s);
    std::string body = s.substr(1, s.size() - 3);  // strip "(" and "i)"
    // Split at the sign that separates the two parts (skip the leading sign).
    for (size_t k = 1; k < body.size(); ++k) {
      if ((body[k] == '+' || body[k] == '-') && body[k - 1] != '/') {
        std::string rp = body.substr(0, k);
        std::string ip = (body[k] == '+') ? body.substr(k + 1) : body.substr(k);
        return Scalar(rational_from_string(rp), rational_from_string(ip));
      }
    }
    throw std::invalid_argument("bad scalar literal: " + s);
  }
  if (s.back() == 'i') {
    std::string ip = s.substr(0, s.size() - 1);
    if (ip.empty() || ip == "+") ip = "1";
    else if (ip == "-") ip = "-1";
    return Scalar(Rational(0), rational_from_string(ip));
  }
  return Scalar(rational_from_string(s));
}

}  // namespace qsym
