#ifndef PRHL_RATIONAL_HPP
#define PRHL_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

#include "prhl/error.hpp"

namespace prhl {

// Exact arbitrary-precision integers and rationals. Expression templates are
// disabled so both behave as plain value types (auto, containers, ...).
using Int = boost::multiprecision::number<boost::multiprecision::backends::cpp_int_backend<>,
                                          boost::multiprecision::et_off>;
using Rational =
    boost::multiprecision::number<boost::multiprecision::backends::rational_adaptor<
                                      boost::multiprecision::backends::cpp_int_backend<>>,
                                  boost::multiprecision::et_off>;

inline bool is_probability(const Rational& r) { return r >= 0 && r <= 1; }

// A probability: a rational pinned to [0, 1]. Arithmetic happens in Rational;
// construction checks the range.
class Prob {
 public:
  Prob() : value_(0) {}
  explicit Prob(Rational value) : value_(std::move(value)) {
    if (!is_probability(value_)) {
      throw_error(ErrorKind::Domain, "probability out of [0, 1]: " + format());
    }
  }
  Prob(int num, int den) : Prob(Rational(num, den)) {}

  const Rational& value() const { return value_; }
  operator const Rational&() const { return value_; }

  friend bool operator==(const Prob& a, const Prob& b) { return a.value_ == b.value_; }
  friend auto operator<=>(const Prob& a, const Prob& b) { return a.value_.compare(b.value_) <=> 0; }

  std::string format() const;

 private:
  Rational value_;
};

// "num/den" (or just "num" when the denominator is 1).
std::string format_rational(const Rational& r);
Rational parse_rational(const std::string& text);

inline std::string Prob::format() const { return format_rational(value_); }

// Positive part: max(r, 0).
inline Rational positive_part(const Rational& r) { return r > 0 ? r : Rational(0); }

}  // namespace prhl

#endif  // PRHL_RATIONAL_HPP
