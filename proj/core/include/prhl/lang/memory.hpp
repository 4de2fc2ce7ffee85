#ifndef PRHL_LANG_MEMORY_HPP
#define PRHL_LANG_MEMORY_HPP

#include <map>

#include "prhl/lang/ast.hpp"

namespace prhl::lang {

// A program memory: one Value slot per declared variable, in declaration
// order. Memories compare lexicographically so they can key maps.
class Memory {
 public:
  Memory() = default;
  explicit Memory(ValueVec slots) : slots_(std::move(slots)) {}

  const Value& get(int slot) const { return slots_.at(size_t(slot)); }
  void set(int slot, Value v) { slots_.at(size_t(slot)) = std::move(v); }
  Memory with(int slot, Value v) const {
    Memory m = *this;
    m.set(slot, std::move(v));
    return m;
  }
  size_t size() const { return slots_.size(); }
  const ValueVec& slots() const { return slots_; }

  friend bool operator==(const Memory& a, const Memory& b) { return a.slots_ == b.slots_; }
  friend bool operator<(const Memory& a, const Memory& b) {
    return std::lexicographical_compare(a.slots_.begin(), a.slots_.end(), b.slots_.begin(),
                                        b.slots_.end());
  }

 private:
  ValueVec slots_;
};

// Builds a memory with every variable at its default: the parameter value
// for parameters, the first domain value where a domain is declared, and a
// type-derived zero value otherwise.
Memory default_memory(const Program& prog);

// Default memory with named overrides applied ({"start": 0, "k": 2}).
Memory memory_from_json(const Program& prog, const nlohmann::json& overrides);
nlohmann::json memory_to_json(const Program& prog, const Memory& m);

// A sub-distribution over memories. `residual` is the mass that was still
// inside some loop when fuel ran out; the result is exact iff it is 0.
struct MemoryDist {
  std::map<Memory, Rational> entries;
  Rational residual = 0;

  bool exact() const { return residual == 0; }
  Rational mass() const {
    Rational m = 0;
    for (const auto& [mem, p] : entries) m += p;
    return m;
  }
  void add(const Memory& m, const Rational& p) {
    if (p == 0) return;
    entries[m] += p;
  }
};

// Odometer-style iteration over the product of per-slot domains. Slots whose
// domain list entry is null are pinned to the corresponding value in `base`.
class MemoryEnumerator {
 public:
  MemoryEnumerator(std::vector<DomainPtr> domains, Memory base);

  // Product size over the non-pinned slots.
  const Int& count() const { return count_; }

  bool next(Memory& out);  // false once exhausted
  void reset();

 private:
  std::vector<DomainPtr> domains_;
  Memory base_;
  std::vector<ValueVec> values_;
  std::vector<int> active_;  // slots being enumerated
  std::vector<size_t> index_;
  bool done_ = false;
  bool fresh_ = true;
  Int count_ = 1;
};

}  // namespace prhl::lang

#endif  // PRHL_LANG_MEMORY_HPP
