#ifndef FROBSPLIT_RATIONAL_HPP
#define FROBSPLIT_RATIONAL_HPP

#include <boost/rational.hpp>
#include <cstdint>
#include <string>

namespace frobsplit {

// Exact rational numbers for Q-graded degree bookkeeping (degrees, shifts,
// a-invariants). Magnitudes stay tiny, so int64 components are plenty.
using Rational = boost::rational<std::int64_t>;

inline std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

inline bool is_integer(const Rational& r) { return r.denominator() == 1; }

inline std::int64_t ipow(std::int64_t base, int exp) {
  std::int64_t r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

}  // namespace frobsplit

#endif  // FROBSPLIT_RATIONAL_HPP
