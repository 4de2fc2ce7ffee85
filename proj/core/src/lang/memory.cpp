#include "prhl/lang/memory.hpp"

namespace prhl::lang {

namespace {

Value zero_value(const TypePtr& t) {
  switch (t->kind) {
    case Type::Kind::Int: return Value::integer(0);
    case Type::Kind::Bool: return Value::boolean(false);
    case Type::Kind::Prob: return Value::rational(Rational(0));
    case Type::Kind::Enum:
      throw_error(ErrorKind::Domain, "enum variable without a domain: " + t->to_string());
    case Type::Kind::Tuple: {
      ValueVec items;
      for (const auto& c : t->items) items.push_back(zero_value(c));
      return Value::tuple(std::move(items));
    }
    case Type::Kind::List: return Value::nil();
  }
  return Value::boolean(false);
}

}  // namespace

Memory default_memory(const Program& prog) {
  ValueVec slots;
  slots.reserve(prog.vars.size());
  for (const VarDecl& d : prog.vars) {
    if (d.param_value) {
      slots.push_back(*d.param_value);
    } else if (d.domain) {
      slots.push_back(d.domain->default_value());
    } else {
      slots.push_back(zero_value(d.type));
    }
  }
  return Memory(std::move(slots));
}

Memory memory_from_json(const Program& prog, const nlohmann::json& overrides) {
  Memory m = default_memory(prog);
  for (auto it = overrides.begin(); it != overrides.end(); ++it) {
    const int slot = prog.slot_of(it.key());
    if (slot < 0) {
      throw_error(ErrorKind::Usage, "memory override for undeclared variable: " + it.key());
    }
    m.set(slot, Value::from_json(it.value()));
  }
  return m;
}

nlohmann::json memory_to_json(const Program& prog, const Memory& m) {
  nlohmann::json out = nlohmann::json::object();
  for (size_t i = 0; i < prog.vars.size(); ++i) {
    out[prog.vars[i].name] = m.get(int(i)).to_json();
  }
  return out;
}

MemoryEnumerator::MemoryEnumerator(std::vector<DomainPtr> domains, Memory base)
    : domains_(std::move(domains)), base_(std::move(base)) {
  for (size_t slot = 0; slot < domains_.size(); ++slot) {
    if (!domains_[slot]) continue;
    active_.push_back(int(slot));
    values_.push_back(domains_[slot]->enumerate());
    count_ *= Int(values_.back().size());
  }
  index_.assign(active_.size(), 0);
}

void MemoryEnumerator::reset() {
  std::fill(index_.begin(), index_.end(), 0);
  done_ = false;
  fresh_ = true;
}

bool MemoryEnumerator::next(Memory& out) {
  if (done_) return false;
  if (fresh_) {
    fresh_ = false;
    out = base_;
    for (size_t k = 0; k < active_.size(); ++k) {
      out.set(active_[k], values_[k][0]);
    }
    if (active_.empty()) done_ = true;  // single memory
    return true;
  }
  // Advance the odometer.
  size_t k = 0;
  for (; k < active_.size(); ++k) {
    if (++index_[k] < values_[k].size()) break;
    index_[k] = 0;
  }
  if (k == active_.size()) {
    done_ = true;
    return false;
  }
  out = base_;
  for (size_t j = 0; j < active_.size(); ++j) {
    out.set(active_[j], values_[j][index_[j]]);
  }
  return true;
}

}  // namespace prhl::lang
