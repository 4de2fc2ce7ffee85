#ifndef PRHL_VALUE_HPP
#define PRHL_VALUE_HPP

#include <compare>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "prhl/rational.hpp"

#include "json.hpp"

namespace prhl {

// A constant of a declared finite enum type, e.g. Move::Left. Compared by
// (type name, ordinal) so values from two separately parsed programs agree.
struct EnumVal {
  std::string type;
  std::string ctor;
  std::int32_t ordinal = 0;

  friend bool operator==(const EnumVal& a, const EnumVal& b) {
    return a.type == b.type && a.ordinal == b.ordinal;
  }
};

class Value;
using ValueVec = std::vector<Value>;

// The semantic universe: booleans, arbitrary-precision integers, exact
// rationals, enum constants, tuples and finite lists. Equality and a total
// order are defined across the whole union (tag first, then payload,
// sequences lexicographic) so Values can key maps and support >= tests.
class Value {
 public:
  enum class Kind { Bool, Int, Rat, Enum, Tuple, List };

  Value() : rep_(false) {}

  static Value boolean(bool b) { return Value(Rep(std::in_place_index<0>, b)); }
  static Value integer(Int i) { return Value(Rep(std::in_place_index<1>, std::move(i))); }
  static Value integer(long i) { return integer(Int(i)); }
  static Value rational(Rational r) { return Value(Rep(std::in_place_index<2>, std::move(r))); }
  static Value enumerated(EnumVal e) { return Value(Rep(std::in_place_index<3>, std::move(e))); }
  static Value tuple(ValueVec items) {
    return Value(Rep(std::in_place_index<4>, Tuple{std::move(items)}));
  }
  static Value pair(Value a, Value b) {
    ValueVec items;
    items.reserve(2);
    items.push_back(std::move(a));
    items.push_back(std::move(b));
    return tuple(std::move(items));
  }
  static Value list(ValueVec items) {
    return Value(Rep(std::in_place_index<5>, List{std::move(items)}));
  }
  static Value nil() { return list({}); }

  Kind kind() const { return static_cast<Kind>(rep_.index()); }
  bool is_bool() const { return kind() == Kind::Bool; }
  bool is_int() const { return kind() == Kind::Int; }
  bool is_rat() const { return kind() == Kind::Rat; }
  bool is_enum() const { return kind() == Kind::Enum; }
  bool is_tuple() const { return kind() == Kind::Tuple; }
  bool is_list() const { return kind() == Kind::List; }

  bool as_bool() const;
  const Int& as_int() const;
  const Rational& as_rat() const;
  const EnumVal& as_enum() const;
  const ValueVec& as_tuple() const;
  const ValueVec& as_list() const;

  // True iff this is a 2-tuple; used by couplings.
  bool is_pair() const { return is_tuple() && as_tuple().size() == 2; }
  const Value& first() const { return as_tuple().at(0); }
  const Value& second() const { return as_tuple().at(1); }

  // Total order across the union: -1, 0, +1.
  int compare(const Value& other) const;

  friend bool operator==(const Value& a, const Value& b) { return a.compare(b) == 0; }
  friend bool operator!=(const Value& a, const Value& b) { return a.compare(b) != 0; }
  friend bool operator<(const Value& a, const Value& b) { return a.compare(b) < 0; }
  friend bool operator<=(const Value& a, const Value& b) { return a.compare(b) <= 0; }
  friend bool operator>(const Value& a, const Value& b) { return a.compare(b) > 0; }
  friend bool operator>=(const Value& a, const Value& b) { return a.compare(b) >= 0; }

  std::string to_string() const;
  nlohmann::json to_json() const;
  static Value from_json(const nlohmann::json& j);

 private:
  struct Tuple {
    ValueVec items;
  };
  struct List {
    ValueVec items;
  };
  using Rep = std::variant<bool, Int, Rational, EnumVal, Tuple, List>;

  explicit Value(Rep rep) : rep_(std::move(rep)) {}

  Rep rep_;
};

}  // namespace prhl

#endif  // PRHL_VALUE_HPP
