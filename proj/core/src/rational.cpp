#include "prhl/rational.hpp"

namespace prhl {

const char* error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::Parse: return "parse";
    case ErrorKind::Type: return "type";
    case ErrorKind::Domain: return "domain";
    case ErrorKind::Capacity: return "capacity";
    case ErrorKind::Fuel: return "fuel";
    case ErrorKind::MalformedCoupling: return "malformed-coupling";
    case ErrorKind::InternalInconsistency: return "internal-inconsistency";
    case ErrorKind::Shape: return "shape";
    case ErrorKind::Usage: return "usage";
  }
  return "unknown";
}

std::string format_rational(const Rational& r) {
  std::string s = numerator(r).str();
  if (denominator(r) != 1) {
    s += "/";
    s += denominator(r).str();
  }
  return s;
}

Rational parse_rational(const std::string& text) {
  try {
    return Rational(text);
  } catch (const std::exception&) {
    throw_error(ErrorKind::Parse, "not a rational: '" + text + "'");
  }
}

}  // namespace prhl
