#include "rdmom/rational.hpp"

#include <cctype>
#include <cstdlib>

namespace rdmom {

namespace {

bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

std::optional<Rat> parse_rat(const std::string& text) {
  std::size_t a = 0, b = text.size();
  while (a < b && std::isspace(static_cast<unsigned char>(text[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(text[b - 1]))) --b;
  std::string s = text.substr(a, b - a);
  if (s.empty()) return std::nullopt;

  bool neg = false;
  if (s[0] == '+' || s[0] == '-') {
    neg = s[0] == '-';
    s.erase(0, 1);
  }
  if (s.empty()) return std::nullopt;

  auto finish = [&](Rat q) -> std::optional<Rat> {
    q.canonicalize();
    if (neg) q = -q;
    return q;
  };

  if (auto slash = s.find('/'); slash != std::string::npos) {
    std::string num = s.substr(0, slash), den = s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) return std::nullopt;
    mpz_class d(den, 10);  // explicit base, leading zeros must not mean octal
    if (d == 0) return std::nullopt;
    return finish(Rat(mpz_class(num, 10), d));
  }

  // integer or decimal, optional exponent
  std::string mantissa = s;
  long exp10 = 0;
  if (auto epos = s.find_first_of("eE"); epos != std::string::npos) {
    mantissa = s.substr(0, epos);
    std::string es = s.substr(epos + 1);
    bool eneg = false;
    if (!es.empty() && (es[0] == '+' || es[0] == '-')) {
      eneg = es[0] == '-';
      es.erase(0, 1);
    }
    if (!all_digits(es) || es.size() > 4) return std::nullopt;
    exp10 = std::strtol(es.c_str(), nullptr, 10);
    if (eneg) exp10 = -exp10;
  }

  std::string digits = mantissa;
  long frac = 0;
  if (auto dot = mantissa.find('.'); dot != std::string::npos) {
    digits = mantissa.substr(0, dot) + mantissa.substr(dot + 1);
    frac = long(mantissa.size() - dot - 1);
  }
  if (!all_digits(digits)) return std::nullopt;

  mpz_class n(digits, 10);
  long e = exp10 - frac;
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(e >= 0 ? e : -e));
  return finish(e >= 0 ? Rat(n * scale) : Rat(n, scale));
}

std::string rat_str(const Rat& v) { return v.get_str(); }

double rat_double(const Rat& v) { return v.get_d(); }

}  // namespace rdmom
