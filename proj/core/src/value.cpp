#include "prhl/value.hpp"

#include <sstream>

namespace prhl {

namespace {

[[noreturn]] void bad_kind(const char* wanted, const Value& v) {
  throw_error(ErrorKind::Type, std::string("value is not ") + wanted + ": " + v.to_string());
}

int compare_vecs(const ValueVec& a, const ValueVec& b) {
  const size_t n = std::min(a.size(), b.size());
  for (size_t i = 0; i < n; ++i) {
    if (int c = a[i].compare(b[i]); c != 0) return c;
  }
  if (a.size() == b.size()) return 0;
  return a.size() < b.size() ? -1 : 1;
}

template <class T>
int compare_scalar(const T& a, const T& b) {
  if (a < b) return -1;
  if (b < a) return 1;
  return 0;
}

// JSON numbers round-trip exactly up to 2^53; bigger integers are encoded as
// {"int": "<decimal>"}.
const Int kJsonIntMax = Int(1) << 53;

}  // namespace

bool Value::as_bool() const {
  if (auto* p = std::get_if<bool>(&rep_)) return *p;
  bad_kind("a boolean", *this);
}

const Int& Value::as_int() const {
  if (auto* p = std::get_if<Int>(&rep_)) return *p;
  bad_kind("an integer", *this);
}

const Rational& Value::as_rat() const {
  if (auto* p = std::get_if<Rational>(&rep_)) return *p;
  bad_kind("a rational", *this);
}

const EnumVal& Value::as_enum() const {
  if (auto* p = std::get_if<EnumVal>(&rep_)) return *p;
  bad_kind("an enum constant", *this);
}

const ValueVec& Value::as_tuple() const {
  if (auto* p = std::get_if<Tuple>(&rep_)) return p->items;
  bad_kind("a tuple", *this);
}

const ValueVec& Value::as_list() const {
  if (auto* p = std::get_if<List>(&rep_)) return p->items;
  bad_kind("a list", *this);
}

int Value::compare(const Value& other) const {
  if (rep_.index() != other.rep_.index()) {
    return rep_.index() < other.rep_.index() ? -1 : 1;
  }
  switch (kind()) {
    case Kind::Bool:
      return compare_scalar(std::get<bool>(rep_), std::get<bool>(other.rep_));
    case Kind::Int:
      return std::get<Int>(rep_).compare(std::get<Int>(other.rep_));
    case Kind::Rat:
      return std::get<Rational>(rep_).compare(std::get<Rational>(other.rep_));
    case Kind::Enum: {
      const auto& a = std::get<EnumVal>(rep_);
      const auto& b = std::get<EnumVal>(other.rep_);
      if (int c = a.type.compare(b.type); c != 0) return c < 0 ? -1 : 1;
      return compare_scalar(a.ordinal, b.ordinal);
    }
    case Kind::Tuple:
      return compare_vecs(std::get<Tuple>(rep_).items, std::get<Tuple>(other.rep_).items);
    case Kind::List:
      return compare_vecs(std::get<List>(rep_).items, std::get<List>(other.rep_).items);
  }
  return 0;
}

std::string Value::to_string() const {
  std::ostringstream out;
  switch (kind()) {
    case Kind::Bool:
      out << (as_bool() ? "true" : "false");
      break;
    case Kind::Int:
      out << as_int();
      break;
    case Kind::Rat:
      out << format_rational(as_rat());
      break;
    case Kind::Enum:
      out << as_enum().ctor;
      break;
    case Kind::Tuple: {
      out << "(";
      const auto& items = as_tuple();
      for (size_t i = 0; i < items.size(); ++i) {
        if (i) out << ", ";
        out << items[i].to_string();
      }
      out << ")";
      break;
    }
    case Kind::List: {
      out << "[";
      const auto& items = as_list();
      for (size_t i = 0; i < items.size(); ++i) {
        if (i) out << ", ";
        out << items[i].to_string();
      }
      out << "]";
      break;
    }
  }
  return out.str();
}

nlohmann::json Value::to_json() const {
  switch (kind()) {
    case Kind::Bool:
      return as_bool();
    case Kind::Int: {
      const Int& i = as_int();
      if (i > -kJsonIntMax && i < kJsonIntMax) {
        return static_cast<std::int64_t>(i);
      }
      return nlohmann::json{{"int", i.str()}};
    }
    case Kind::Rat:
      return nlohmann::json{{"rat", format_rational(as_rat())}};
    case Kind::Enum: {
      const EnumVal& e = as_enum();
      return nlohmann::json{{"enum", e.type}, {"ctor", e.ctor}, {"ord", e.ordinal}};
    }
    case Kind::Tuple: {
      nlohmann::json items = nlohmann::json::array();
      for (const Value& v : as_tuple()) items.push_back(v.to_json());
      return nlohmann::json{{"tuple", std::move(items)}};
    }
    case Kind::List: {
      nlohmann::json items = nlohmann::json::array();
      for (const Value& v : as_list()) items.push_back(v.to_json());
      return items;
    }
  }
  return nullptr;
}

Value Value::from_json(const nlohmann::json& j) {
  if (j.is_boolean()) return boolean(j.get<bool>());
  if (j.is_number_integer()) return integer(Int(j.get<std::int64_t>()));
  if (j.is_array()) {
    ValueVec items;
    for (const auto& e : j) items.push_back(from_json(e));
    return list(std::move(items));
  }
  if (j.is_object()) {
    if (j.contains("int")) return integer(Int(j.at("int").get<std::string>()));
    if (j.contains("rat")) return rational(parse_rational(j.at("rat").get<std::string>()));
    if (j.contains("enum")) {
      return enumerated(EnumVal{j.at("enum").get<std::string>(), j.at("ctor").get<std::string>(),
                                j.at("ord").get<std::int32_t>()});
    }
    if (j.contains("tuple")) {
      ValueVec items;
      for (const auto& e : j.at("tuple")) items.push_back(from_json(e));
      return tuple(std::move(items));
    }
  }
  throw_error(ErrorKind::Parse, "cannot decode value from JSON: " + j.dump());
}

}  // namespace prhl
