#include "pareto/rational.hpp"

#include <cmath>
#include <functional>

#include "pareto/error.hpp"

namespace pareto {

Rational parse_rational(const std::string& text) {
  if (text.empty()) throw Error(ErrorKind::InvalidInput, "empty rational");
  Rational q;
  if (q.set_str(text, 10) != 0 || q.get_den() == 0)
    throw Error(ErrorKind::InvalidInput, "malformed rational '" + text + "'");
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational from_double(double x) {
  if (!std::isfinite(x)) throw Error(ErrorKind::InvalidInput, "non-finite value");
  Rational exact(x);
  mpz_class limit = mpz_class(1) << 53;
  if (exact.get_den() <= limit) return exact;
  return quantize(x, 53);
}

Rational quantize(double x, int bits) {
  if (!std::isfinite(x)) throw Error(ErrorKind::InvalidInput, "non-finite value");
  Rational scaled = Rational(x) * Rational(mpz_class(1) << bits);
  mpz_class num = scaled.get_num(), den = scaled.get_den();
  mpz_class twice = 2 * num + (num >= 0 ? den : mpz_class(-den));
  mpz_class rounded;
  mpz_tdiv_q(rounded.get_mpz_t(), twice.get_mpz_t(), mpz_class(2 * den).get_mpz_t());
  Rational out(rounded, mpz_class(1) << bits);
  out.canonicalize();
  return out;
}

std::size_t RationalHash::operator()(const Rational& q) const {
  std::hash<std::string> h;
  return h(q.get_num().get_str(16)) * 31 + h(q.get_den().get_str(16));
}

}  // namespace pareto
