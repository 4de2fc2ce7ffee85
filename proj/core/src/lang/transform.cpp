#include "prhl/lang/transform.hpp"

#include <set>

#include "prhl/lang/parser.hpp"

namespace prhl::lang {

Transform Transform::loop_split(std::string guard) {
  Transform t;
  t.kind = Kind::LoopSplit;
  t.guard_text = std::move(guard);
  return t;
}

Transform Transform::coin_split(std::string p1, std::string p2, std::string fresh1,
                                std::string fresh2) {
  Transform t;
  t.kind = Kind::CoinSplit;
  t.p1_text = std::move(p1);
  t.p2_text = std::move(p2);
  t.fresh1 = std::move(fresh1);
  t.fresh2 = std::move(fresh2);
  return t;
}

Transform Transform::coin_merge() {
  Transform t;
  t.kind = Kind::CoinMerge;
  return t;
}

Transform Transform::marginal_split(std::string table, int component, std::string fresh) {
  Transform t;
  t.kind = Kind::MarginalSplit;
  t.table_text = std::move(table);
  t.component = component;
  t.fresh1 = std::move(fresh);
  return t;
}

std::string Transform::describe() const {
  switch (kind) {
    case Kind::LoopSplit: return "loop-split(" + guard_text + ")";
    case Kind::CoinSplit: return "coin-split(" + p1_text + ", " + p2_text + ")";
    case Kind::CoinMerge: return "coin-merge";
    case Kind::MarginalSplit:
      return "marginal-split(" + table_text + ", " + std::to_string(component) + ")";
  }
  return "?";
}

namespace {

[[noreturn]] void mismatch(const std::string& what) {
  throw_error(ErrorKind::Shape, "transform pattern mismatch: " + what);
}

Block* navigate(Block* block, const AstPath& path, size_t pos, int* out_index) {
  if (pos + 1 > path.size()) mismatch("empty path");
  const int idx = path[pos];
  if (idx < 0 || size_t(idx) >= block->size()) mismatch("path index out of range");
  if (pos + 1 == path.size()) {
    *out_index = idx;
    return block;
  }
  Command& cmd = (*block)[size_t(idx)];
  const int branch = path[pos + 1];
  if (auto* iff = std::get_if<Command::If>(&cmd.rep)) {
    if (branch == 0) return navigate(&iff->then_branch, path, pos + 2, out_index);
    if (branch == 1) return navigate(&iff->else_branch, path, pos + 2, out_index);
    mismatch("if branch selector must be 0 or 1");
  }
  if (auto* wh = std::get_if<Command::While>(&cmd.rep)) {
    if (branch == 0) return navigate(&wh->body, path, pos + 2, out_index);
    mismatch("while descent selector must be 0");
  }
  mismatch("path descends into a non-compound command");
}

std::string fresh_name(const Program& prog, const std::string& requested, int& counter) {
  if (!requested.empty()) {
    if (prog.slot_of(requested) >= 0) {
      throw_error(ErrorKind::Shape, "transform variable '" + requested + "' is already declared");
    }
    return requested;
  }
  while (true) {
    std::string name = "$t" + std::to_string(counter++);
    if (prog.slot_of(name) < 0) return name;
  }
}

VarRef ref_for(const Program& prog, const std::string& name) {
  VarRef r;
  r.name = name;
  r.side = 0;
  r.slot = prog.slot_of(name);
  return r;
}

ExprPtr var_expr(const Program& prog, const std::string& name) {
  return make_expr(Expr::Var{ref_for(prog, name)});
}

}  // namespace

Program apply_transform(const Program& prog, const Transform& t, const AstPath& path,
                        const FunctionRegistry* registry) {
  BlockRewrite r = apply_transform_to_block(prog, prog.body, t, path, registry);
  r.program.body = std::move(r.block);
  return std::move(r.program);
}

BlockRewrite apply_transform_to_block(const Program& prog, const Block& target_block,
                                      const Transform& t, const AstPath& path,
                                      const FunctionRegistry* registry) {
  Program out = prog;
  Block rewritten = target_block;
  int target_index = -1;
  Block* block = navigate(&rewritten, path, 0, &target_index);
  Command target = (*block)[size_t(target_index)];
  int counter = 0;

  switch (t.kind) {
    case Transform::Kind::LoopSplit: {
      const auto* wh = target.get<Command::While>();
      if (!wh) mismatch("loop-split target is not a while loop");
      ExprPtr extra = parse_program_expr(t.guard_text, out, registry);
      Command first = target;
      auto& first_while = std::get<Command::While>(first.rep);
      first_while.guard = make_expr(Expr::Binary{BinOp::And, wh->guard, extra},
                                    wh->guard->line, wh->guard->column);
      block->insert(block->begin() + target_index, first);
      return BlockRewrite{std::move(out), std::move(rewritten)};
    }

    case Transform::Kind::CoinSplit: {
      const auto* rand = target.get<Command::Rand>();
      if (!rand) mismatch("coin-split target is not a sampling command");
      if (!std::get_if<DistExpr::Bern>(&rand->dist->rep)) {
        mismatch("coin-split target does not sample Bern(p)");
      }
      const std::string y = fresh_name(out, t.fresh1, counter);
      out.add_var(VarDecl{y, Type::boolean(), FiniteDomain::boolean(), false, std::nullopt});
      const std::string z = fresh_name(out, t.fresh2, counter);
      out.add_var(VarDecl{z, Type::boolean(), FiniteDomain::boolean(), false, std::nullopt});

      ExprPtr p1 = parse_program_expr(t.p1_text, out, registry);
      ExprPtr p2 = parse_program_expr(t.p2_text, out, registry);

      auto bern = [](ExprPtr p) {
        auto d = std::make_shared<DistExpr>();
        d->rep = DistExpr::Bern{std::move(p)};
        return d;
      };
      Command sample_y;
      sample_y.rep = Command::Rand{ref_for(out, y), bern(p1)};
      Command sample_z;
      sample_z.rep = Command::Rand{ref_for(out, z), bern(p2)};
      Command combine;
      combine.rep = Command::Assign{
          rand->target,
          make_expr(Expr::Binary{BinOp::And, var_expr(out, y), var_expr(out, z)})};

      block->erase(block->begin() + target_index);
      block->insert(block->begin() + target_index, {sample_y, sample_z, combine});
      return BlockRewrite{std::move(out), std::move(rewritten)};
    }

    case Transform::Kind::CoinMerge: {
      if (size_t(target_index) + 3 > block->size()) mismatch("coin-merge needs three commands");
      const auto* ry = (*block)[size_t(target_index)].get<Command::Rand>();
      const auto* rz = (*block)[size_t(target_index) + 1].get<Command::Rand>();
      const auto* asg = (*block)[size_t(target_index) + 2].get<Command::Assign>();
      if (!ry || !rz || !asg) mismatch("coin-merge shape");
      const auto* by = std::get_if<DistExpr::Bern>(&ry->dist->rep);
      const auto* bz = std::get_if<DistExpr::Bern>(&rz->dist->rep);
      if (!by || !bz) mismatch("coin-merge needs two Bern samples");
      const auto* conj = asg->value->get<Expr::Binary>();
      if (!conj || conj->op != BinOp::And) mismatch("coin-merge needs x := y && z");
      const auto* lv = conj->lhs->get<Expr::Var>();
      const auto* rv = conj->rhs->get<Expr::Var>();
      if (!lv || !rv || lv->ref.slot != ry->target.slot || rv->ref.slot != rz->target.slot) {
        mismatch("coin-merge conjunction must combine the two sampled variables");
      }
      auto merged = std::make_shared<DistExpr>();
      merged->rep = DistExpr::Bern{make_expr(Expr::Binary{BinOp::Mul, by->p, bz->p})};
      Command sample;
      sample.rep = Command::Rand{asg->target, merged};
      block->erase(block->begin() + target_index, block->begin() + target_index + 3);
      block->insert(block->begin() + target_index, sample);
      return BlockRewrite{std::move(out), std::move(rewritten)};
    }

    case Transform::Kind::MarginalSplit: {
      const auto* rand = target.get<Command::Rand>();
      if (!rand) mismatch("marginal-split target is not a sampling command");
      if (t.component != 1 && t.component != 2) mismatch("projection must be 1 or 2");
      const VarDecl& xdecl = out.vars[size_t(rand->target.slot)];
      const std::string d = fresh_name(out, t.fresh1, counter);
      DomainPtr pair_dom =
          xdecl.domain ? FiniteDomain::tuple({xdecl.domain, xdecl.domain}) : nullptr;
      out.add_var(VarDecl{d, Type::tuple({xdecl.type, xdecl.type}), pair_dom, false,
                          std::nullopt});

      // The pair distribution parses in the extended scope (it may mention
      // parameters and enum constants, not the fresh variable).
      std::string table_src = t.table_text;
      Command sample;
      {
        // Reuse the statement parser by parsing "d ~~ <table>" as a one-off
        // program fragment is heavier than needed; parse the dist directly.
        sample.rep = Command::Rand{ref_for(out, d),
                                   parse_dist_expr(table_src, out, registry)};
      }
      Command project;
      project.rep = Command::Assign{
          rand->target,
          make_expr(Expr::Index{var_expr(out, d), lit_expr(Value::integer(t.component))})};
      block->erase(block->begin() + target_index);
      block->insert(block->begin() + target_index, {sample, project});
      return BlockRewrite{std::move(out), std::move(rewritten)};
    }
  }
  mismatch("unknown transform");
}

// --- input analysis -----------------------------------------------------------

namespace {

void expr_reads(const ExprPtr& e, const std::set<int>& assigned, std::set<int>& reads) {
  if (!e) return;
  if (const auto* v = e->get<Expr::Var>()) {
    if (v->ref.bound < 0 && v->ref.side != 2 && !assigned.count(v->ref.slot)) {
      reads.insert(v->ref.slot);
    }
    return;
  }
  std::visit(
      [&](const auto& node) {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, Expr::Unary>) {
          expr_reads(node.operand, assigned, reads);
        } else if constexpr (std::is_same_v<T, Expr::Binary>) {
          expr_reads(node.lhs, assigned, reads);
          expr_reads(node.rhs, assigned, reads);
        } else if constexpr (std::is_same_v<T, Expr::Cond>) {
          expr_reads(node.cond, assigned, reads);
          expr_reads(node.then_e, assigned, reads);
          expr_reads(node.else_e, assigned, reads);
        } else if constexpr (std::is_same_v<T, Expr::TupleExpr>) {
          for (const auto& i : node.items) expr_reads(i, assigned, reads);
        } else if constexpr (std::is_same_v<T, Expr::Index>) {
          expr_reads(node.base, assigned, reads);
          expr_reads(node.index, assigned, reads);
        } else if constexpr (std::is_same_v<T, Expr::Call>) {
          for (const auto& a : node.args) expr_reads(a, assigned, reads);
        } else if constexpr (std::is_same_v<T, Expr::Quant>) {
          expr_reads(node.lo, assigned, reads);
          expr_reads(node.hi, assigned, reads);
          expr_reads(node.body, assigned, reads);
        }
      },
      e->rep);
}

void dist_reads(const DistExprPtr& d, const std::set<int>& assigned, std::set<int>& reads) {
  std::visit(
      [&](const auto& node) {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, DistExpr::Bern>) {
          expr_reads(node.p, assigned, reads);
        } else if constexpr (std::is_same_v<T, DistExpr::UniformSet>) {
          for (const auto& i : node.items) expr_reads(i, assigned, reads);
        } else if constexpr (std::is_same_v<T, DistExpr::UniformRange>) {
          expr_reads(node.lo, assigned, reads);
          expr_reads(node.hi, assigned, reads);
        } else if constexpr (std::is_same_v<T, DistExpr::Explicit>) {
          for (const auto& [v, p] : node.rows) {
            expr_reads(v, assigned, reads);
            expr_reads(p, assigned, reads);
          }
        }
      },
      d->rep);
}

// Walks the block tracking definitely-assigned slots; anything read outside
// that set may see its initial value.
void block_reads(const Block& block, std::set<int>& assigned, std::set<int>& reads) {
  for (const Command& c : block) {
    if (const auto* a = c.get<Command::Assign>()) {
      expr_reads(a->value, assigned, reads);
      assigned.insert(a->target.slot);
    } else if (const auto* r = c.get<Command::Rand>()) {
      dist_reads(r->dist, assigned, reads);
      assigned.insert(r->target.slot);
    } else if (const auto* i = c.get<Command::If>()) {
      expr_reads(i->guard, assigned, reads);
      std::set<int> then_assigned = assigned, else_assigned = assigned;
      block_reads(i->then_branch, then_assigned, reads);
      block_reads(i->else_branch, else_assigned, reads);
      std::set<int> both;
      std::set_intersection(then_assigned.begin(), then_assigned.end(), else_assigned.begin(),
                            else_assigned.end(), std::inserter(both, both.begin()));
      assigned = std::move(both);
    } else if (const auto* w = c.get<Command::While>()) {
      expr_reads(w->guard, assigned, reads);
      std::set<int> body_assigned = assigned;
      block_reads(w->body, body_assigned, reads);
      // The loop may run zero times; nothing new is definitely assigned.
    }
  }
}

}  // namespace

std::vector<int> input_slots(const Program& prog, const std::vector<ExprPtr>& extra) {
  std::set<int> assigned, reads;
  block_reads(prog.body, assigned, reads);
  for (const ExprPtr& e : extra) expr_reads(e, assigned, reads);
  return std::vector<int>(reads.begin(), reads.end());
}

std::vector<int> definitely_assigned(const Program& prog) {
  std::set<int> assigned, reads;
  block_reads(prog.body, assigned, reads);
  return std::vector<int>(assigned.begin(), assigned.end());
}

EquivResult semantically_equivalent(const Program& a, const Program& b,
                                    const std::vector<ExprPtr>& out_a,
                                    const std::vector<ExprPtr>& out_b, long fuel,
                                    const Int& enumeration_cap) {
  // Parameters are per-side bindings and keep their own values. Every other
  // input must be shared by name; shared inputs range over one domain and
  // feed both sides the same value.
  std::set<std::string> tied;
  auto note_inputs = [&](const Program& self, const Program& other,
                         const std::vector<ExprPtr>& outs) {
    for (int slot : input_slots(self, outs)) {
      const VarDecl& d = self.vars[size_t(slot)];
      if (d.is_param) continue;
      const int peer = other.slot_of(d.name);
      if (peer < 0 || other.vars[size_t(peer)].is_param) {
        throw_error(ErrorKind::Type, "input variable '" + d.name + "' is not shared");
      }
      tied.insert(d.name);
    }
  };
  note_inputs(a, b, out_a);
  note_inputs(b, a, out_b);

  std::vector<DomainPtr> domains_a(a.vars.size());
  for (const std::string& name : tied) {
    const int sa = a.slot_of(name);
    const int sb = b.slot_of(name);
    DomainPtr dom = a.vars[size_t(sa)].domain ? a.vars[size_t(sa)].domain
                                              : b.vars[size_t(sb)].domain;
    if (!dom) {
      throw_error(ErrorKind::Domain, "input variable '" + name + "' has no finite domain");
    }
    domains_a[size_t(sa)] = dom;
  }

  MemoryEnumerator en(domains_a, default_memory(a));
  if (en.count() > enumeration_cap) {
    throw PrhlError(ErrorKind::Capacity, "equivalence check needs " + en.count().str() +
                                             " memories, cap is " + enumeration_cap.str());
  }

  auto out_tuple = [](const std::vector<ExprPtr>& outs) -> ExprPtr {
    if (outs.size() == 1) return outs[0];
    return make_expr(Expr::TupleExpr{outs});
  };
  const ExprPtr tuple_a = out_tuple(out_a);
  const ExprPtr tuple_b = out_tuple(out_b);

  InterpOptions opts;
  opts.fuel = fuel;
  Memory base_b = default_memory(b);
  Memory ma;
  while (en.next(ma)) {
    Memory mb = base_b;
    for (const std::string& name : tied) {
      mb.set(b.slot_of(name), ma.get(a.slot_of(name)));
    }
    MemoryDist da = interpret(a.body, ma, opts);
    MemoryDist db = interpret(b.body, mb, opts);
    if (!da.exact() || !db.exact()) {
      return {EquivVerdict::Indeterminate, ma, "fuel exhausted"};
    }
    if (pushforward(da, tuple_a) != pushforward(db, tuple_b)) {
      return {EquivVerdict::Different, ma, "output distributions differ"};
    }
  }
  return {EquivVerdict::Equal, std::nullopt, ""};
}

EquivResult semantically_equivalent_common(const Program& a, const Program& b, long fuel,
                                           const Int& enumeration_cap) {
  std::vector<ExprPtr> out_a, out_b;
  std::vector<std::string> common;
  for (const VarDecl& d : a.vars) {
    if (b.slot_of(d.name) >= 0) common.push_back(d.name);
  }
  std::sort(common.begin(), common.end());
  for (const std::string& name : common) {
    out_a.push_back(var_expr(a, name));
    out_b.push_back(var_expr(b, name));
  }
  if (out_a.empty()) {
    throw_error(ErrorKind::Type, "programs share no variables to compare");
  }
  return semantically_equivalent(a, b, out_a, out_b, fuel, enumeration_cap);
}

}  // namespace prhl::lang
