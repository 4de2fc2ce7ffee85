#include "prhl/studies/functions.hpp"

#include <mutex>

namespace prhl::studies {

using lang::FunctionRegistry;
using lang::PureFn;
using lang::Type;

void register_walk_functions(FunctionRegistry& reg, const Int& n) {
  reg.add(PureFn{"Sigma",
                 {Type::list(Type::boolean())},
                 Type::integer(),
                 [](const ValueVec& args) {
                   Int sigma = 0;
                   for (const Value& b : args.at(0).as_list()) {
                     sigma += b.as_bool() ? 1 : -1;
                   }
                   return Value::integer(sigma);
                 }});
  reg.add(PureFn{"P",
                 {Type::list(Type::boolean())},
                 Type::boolean(),
                 [n](const ValueVec& args) {
                   const ValueVec& h = args.at(0).as_list();
                   // Chronological prefixes are suffixes of the stored list.
                   Int sigma = 0;
                   if (sigma == n) return Value::boolean(true);
                   for (size_t i = h.size(); i-- > 0;) {
                     sigma += h[i].as_bool() ? 1 : -1;
                     if (sigma == n) return Value::boolean(true);
                   }
                   return Value::boolean(false);
                 }});
}

namespace {

// Replays the torus coupling along a history, memoized per history suffix.
// Drift vectors are kept in [0, q).
class TorusReplay {
 public:
  TorusReplay(int dim, long q, std::vector<long> delta)
      : dim_(dim), q_(q), delta_(std::move(delta)) {}

  struct Drifts {
    std::vector<long> first, second;
  };

  Drifts drifts(const Value& history) {
    std::scoped_lock lock(mu_);
    return replay(history);
  }

  long modq(long x) const {
    long r = x % q_;
    return r < 0 ? r + q_ : r;
  }

  int dim() const { return dim_; }
  long delta(int i) const { return delta_.at(size_t(i)); }

 private:
  Drifts replay(const Value& history) {
    auto it = cache_.find(history);
    if (it != cache_.end()) return it->second;
    const ValueVec& h = history.as_list();
    Drifts d;
    if (h.empty()) {
      d.first.assign(size_t(dim_), 0);
      d.second.assign(size_t(dim_), 0);
    } else {
      // The head is the newest sample; replay the tail first.
      d = replay(Value::list(ValueVec(h.begin() + 1, h.end())));
      const ValueVec& entry = h.front().as_tuple();
      const bool mov = entry.at(0).as_bool();
      const long step = entry.at(1).as_bool() ? 1 : -1;
      const int crd = int(long(entry.at(2).as_int())) - 1;
      if (crd < 0 || crd >= dim_) {
        throw_error(ErrorKind::Domain, "history coordinate out of range: " + h.front().to_string());
      }
      const size_t c = size_t(crd);
      const bool met =
          modq(delta_[c] + d.second[c] - d.first[c]) == 0;
      if (mov) d.first[c] = modq(d.first[c] + step);
      const bool mov2 = met ? mov : !mov;
      if (mov2) d.second[c] = modq(d.second[c] + step);
    }
    return cache_.emplace(history, std::move(d)).first->second;
  }

  int dim_;
  long q_;
  std::vector<long> delta_;
  std::map<Value, Drifts> cache_;
  std::mutex mu_;
};

int coord_arg(const Value& v, int dim) {
  const long i = long(v.as_int());
  if (i < 1 || i > dim) {
    throw_error(ErrorKind::Domain, "coordinate " + std::to_string(i) + " out of [1, " +
                                       std::to_string(dim) + "]");
  }
  return int(i) - 1;
}

}  // namespace

void register_torus_functions(FunctionRegistry& reg, int dim, long q,
                              const std::vector<long>& delta) {
  if (int(delta.size()) != dim) {
    throw_error(ErrorKind::Domain, "delta must have one entry per dimension");
  }
  auto replay = std::make_shared<TorusReplay>(dim, q, delta);

  const lang::TypePtr history_entry =
      Type::tuple({Type::boolean(), Type::boolean(), Type::integer()});
  const lang::TypePtr history = Type::list(history_entry);
  const lang::TypePtr vec = Type::vector_of(Type::integer(), dim);

  reg.add(PureFn{"u",
                 {Type::integer()},
                 vec,
                 [dim](const ValueVec& args) {
                   const int c = coord_arg(args.at(0), dim);
                   ValueVec items(size_t(dim), Value::integer(0));
                   items[size_t(c)] = Value::integer(1);
                   return Value::tuple(std::move(items));
                 }});
  reg.add(PureFn{"Sigma1",
                 {Type::integer(), history},
                 Type::integer(),
                 [replay, dim](const ValueVec& args) {
                   const int c = coord_arg(args.at(0), dim);
                   return Value::integer(replay->drifts(args.at(1)).first[size_t(c)]);
                 }});
  reg.add(PureFn{"Sigma2",
                 {Type::integer(), history},
                 Type::integer(),
                 [replay, dim](const ValueVec& args) {
                   const int c = coord_arg(args.at(0), dim);
                   return Value::integer(replay->drifts(args.at(1)).second[size_t(c)]);
                 }});
  reg.add(PureFn{"Met",
                 {Type::integer(), history},
                 Type::boolean(),
                 [replay, dim](const ValueVec& args) {
                   const int c = coord_arg(args.at(0), dim);
                   auto d = replay->drifts(args.at(1));
                   const long lhs = replay->modq(d.first[size_t(c)] - d.second[size_t(c)]);
                   return Value::boolean(lhs == replay->modq(replay->delta(c)));
                 }});
  reg.add(PureFn{"Delta",
                 {},
                 vec,
                 [replay, dim](const ValueVec&) {
                   ValueVec items;
                   for (int i = 0; i < dim; ++i) {
                     items.push_back(Value::integer(replay->modq(replay->delta(i))));
                   }
                   return Value::tuple(std::move(items));
                 }});
}

}  // namespace prhl::studies
