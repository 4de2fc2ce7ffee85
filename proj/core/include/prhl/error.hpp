#ifndef PRHL_ERROR_HPP
#define PRHL_ERROR_HPP

#include <stdexcept>
#include <string>

namespace prhl {

enum class ErrorKind {
  Parse,
  Type,
  Domain,                 // bad parameter or malformed distribution table
  Capacity,               // enumeration cap exceeded
  Fuel,                   // loop residual mass left after fuel ran out
  MalformedCoupling,      // non-pair value in a coupling support
  InternalInconsistency,  // two independent procedures disagree
  Shape,                  // assertion does not have the required form
  Usage,
};

const char* error_kind_name(ErrorKind k);

class PrhlError : public std::runtime_error {
 public:
  PrhlError(ErrorKind kind, std::string message)
      : std::runtime_error(std::move(message)), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

class ParseError : public PrhlError {
 public:
  ParseError(std::string message, int line, int column)
      : PrhlError(ErrorKind::Parse, std::move(message)), line_(line), column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

[[noreturn]] inline void throw_error(ErrorKind kind, std::string message) {
  throw PrhlError(kind, std::move(message));
}

}  // namespace prhl

#endif  // PRHL_ERROR_HPP
