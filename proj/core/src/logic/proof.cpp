#include "prhl/logic/proof.hpp"

namespace prhl::logic {

const char* ProofNode::rule_name() const {
  struct V {
    const char* operator()(const Skip&) { return "skip"; }
    const char* operator()(const Assign&) { return "assign"; }
    const char* operator()(const AssignL&) { return "assign-l"; }
    const char* operator()(const AssignR&) { return "assign-r"; }
    const char* operator()(const Sample&) { return "sample"; }
    const char* operator()(const SampleL&) { return "sample-l"; }
    const char* operator()(const SampleR&) { return "sample-r"; }
    const char* operator()(const Seq&) { return "seq"; }
    const char* operator()(const If&) { return "if"; }
    const char* operator()(const IfL&) { return "if-l"; }
    const char* operator()(const IfR&) { return "if-r"; }
    const char* operator()(const While&) { return "while"; }
    const char* operator()(const WhileL&) { return "while-l"; }
    const char* operator()(const WhileR&) { return "while-r"; }
    const char* operator()(const Case&) { return "case"; }
    const char* operator()(const Conseq&) { return "conseq"; }
    const char* operator()(const Equiv&) { return "equiv"; }
  };
  return std::visit(V{}, rep);
}

namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& what, const json& j) {
  throw_error(ErrorKind::Parse, "proof script: " + what + " in " + j.dump());
}

std::string str_field(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_string()) bad(std::string("missing '") + key + "'", j);
  return j.at(key).get<std::string>();
}

ProofPtr child(const json& j, const char* key) {
  if (!j.contains(key)) bad(std::string("missing sub-proof '") + key + "'", j);
  return proof_from_json(j.at(key));
}

lang::Transform transform_from_json(const json& j) {
  const std::string kind = str_field(j, "kind");
  if (kind == "loop-split") {
    return lang::Transform::loop_split(str_field(j, "guard"));
  }
  if (kind == "coin-split") {
    return lang::Transform::coin_split(str_field(j, "p1"), str_field(j, "p2"),
                                       j.value("fresh1", ""), j.value("fresh2", ""));
  }
  if (kind == "coin-merge") {
    return lang::Transform::coin_merge();
  }
  if (kind == "marginal-split") {
    return lang::Transform::marginal_split(str_field(j, "table"), j.value("component", 1),
                                           j.value("fresh", ""));
  }
  bad("unknown transform kind '" + kind + "'", j);
}

json transform_to_json(const lang::Transform& t) {
  using K = lang::Transform::Kind;
  switch (t.kind) {
    case K::LoopSplit: return {{"kind", "loop-split"}, {"guard", t.guard_text}};
    case K::CoinSplit:
      return {{"kind", "coin-split"}, {"p1", t.p1_text}, {"p2", t.p2_text},
              {"fresh1", t.fresh1}, {"fresh2", t.fresh2}};
    case K::CoinMerge: return {{"kind", "coin-merge"}};
    case K::MarginalSplit:
      return {{"kind", "marginal-split"}, {"table", t.table_text},
              {"component", t.component}, {"fresh", t.fresh1}};
  }
  return {};
}

}  // namespace

ProofPtr proof_from_json(const json& j) {
  const std::string rule = str_field(j, "rule");
  if (rule == "skip") return make_proof(ProofNode::Skip{});
  if (rule == "assign") return make_proof(ProofNode::Assign{});
  if (rule == "assign-l") return make_proof(ProofNode::AssignL{});
  if (rule == "assign-r") return make_proof(ProofNode::AssignR{});
  if (rule == "sample") return make_proof(ProofNode::Sample{str_field(j, "bijection")});
  if (rule == "sample-l") return make_proof(ProofNode::SampleL{child(j, "proof")});
  if (rule == "sample-r") return make_proof(ProofNode::SampleR{child(j, "proof")});
  if (rule == "seq") {
    ProofNode::Seq seq;
    seq.n1 = j.value("n1", 1);
    seq.n2 = j.value("n2", 1);
    seq.mid = str_field(j, "mid");
    seq.first = child(j, "first");
    seq.rest = child(j, "rest");
    return make_proof(std::move(seq));
  }
  if (rule == "if") return make_proof(ProofNode::If{child(j, "then"), child(j, "else")});
  if (rule == "if-l") return make_proof(ProofNode::IfL{child(j, "then"), child(j, "else")});
  if (rule == "if-r") return make_proof(ProofNode::IfR{child(j, "then"), child(j, "else")});
  if (rule == "while") {
    return make_proof(ProofNode::While{str_field(j, "invariant"), child(j, "body")});
  }
  if (rule == "while-l") {
    return make_proof(
        ProofNode::WhileL{str_field(j, "invariant"), j.value("fuel", 0L), child(j, "body")});
  }
  if (rule == "while-r") {
    return make_proof(
        ProofNode::WhileR{str_field(j, "invariant"), j.value("fuel", 0L), child(j, "body")});
  }
  if (rule == "case") {
    return make_proof(
        ProofNode::Case{str_field(j, "split"), child(j, "true"), child(j, "false")});
  }
  if (rule == "conseq") {
    return make_proof(
        ProofNode::Conseq{str_field(j, "pre"), str_field(j, "post"), child(j, "proof")});
  }
  if (rule == "equiv") {
    ProofNode::Equiv eq;
    eq.side = j.value("side", 1);
    if (eq.side != 1 && eq.side != 2) bad("equiv side must be 1 or 2", j);
    if (!j.contains("transform")) bad("missing 'transform'", j);
    eq.transform = transform_from_json(j.at("transform"));
    if (!j.contains("path") || !j.at("path").is_array()) bad("missing 'path'", j);
    for (const auto& step : j.at("path")) eq.path.push_back(step.get<int>());
    eq.inner = child(j, "proof");
    return make_proof(std::move(eq));
  }
  bad("unknown rule '" + rule + "'", j);
}

nlohmann::json proof_to_json(const ProofPtr& p) {
  struct V {
    json operator()(const ProofNode::Skip&) { return {{"rule", "skip"}}; }
    json operator()(const ProofNode::Assign&) { return {{"rule", "assign"}}; }
    json operator()(const ProofNode::AssignL&) { return {{"rule", "assign-l"}}; }
    json operator()(const ProofNode::AssignR&) { return {{"rule", "assign-r"}}; }
    json operator()(const ProofNode::Sample& s) {
      return {{"rule", "sample"}, {"bijection", s.bijection}};
    }
    json operator()(const ProofNode::SampleL& s) {
      return {{"rule", "sample-l"}, {"proof", proof_to_json(s.inner)}};
    }
    json operator()(const ProofNode::SampleR& s) {
      return {{"rule", "sample-r"}, {"proof", proof_to_json(s.inner)}};
    }
    json operator()(const ProofNode::Seq& s) {
      return {{"rule", "seq"},   {"n1", s.n1},
              {"n2", s.n2},      {"mid", s.mid},
              {"first", proof_to_json(s.first)}, {"rest", proof_to_json(s.rest)}};
    }
    json operator()(const ProofNode::If& n) {
      return {{"rule", "if"}, {"then", proof_to_json(n.then_proof)},
              {"else", proof_to_json(n.else_proof)}};
    }
    json operator()(const ProofNode::IfL& n) {
      return {{"rule", "if-l"}, {"then", proof_to_json(n.then_proof)},
              {"else", proof_to_json(n.else_proof)}};
    }
    json operator()(const ProofNode::IfR& n) {
      return {{"rule", "if-r"}, {"then", proof_to_json(n.then_proof)},
              {"else", proof_to_json(n.else_proof)}};
    }
    json operator()(const ProofNode::While& n) {
      return {{"rule", "while"}, {"invariant", n.invariant}, {"body", proof_to_json(n.body)}};
    }
    json operator()(const ProofNode::WhileL& n) {
      return {{"rule", "while-l"}, {"invariant", n.invariant}, {"fuel", n.fuel},
              {"body", proof_to_json(n.body)}};
    }
    json operator()(const ProofNode::WhileR& n) {
      return {{"rule", "while-r"}, {"invariant", n.invariant}, {"fuel", n.fuel},
              {"body", proof_to_json(n.body)}};
    }
    json operator()(const ProofNode::Case& n) {
      return {{"rule", "case"}, {"split", n.split}, {"true", proof_to_json(n.when_true)},
              {"false", proof_to_json(n.when_false)}};
    }
    json operator()(const ProofNode::Conseq& n) {
      return {{"rule", "conseq"}, {"pre", n.pre}, {"post", n.post},
              {"proof", proof_to_json(n.inner)}};
    }
    json operator()(const ProofNode::Equiv& n) {
      return {{"rule", "equiv"}, {"side", n.side}, {"transform", transform_to_json(n.transform)},
              {"path", n.path}, {"proof", proof_to_json(n.inner)}};
    }
  };
  return std::visit(V{}, p->rep);
}

ProofScript proof_script_from_json(const json& j) {
  ProofScript s;
  s.pre = str_field(j, "pre");
  s.post = str_field(j, "post");
  if (!j.contains("proof")) bad("missing top-level 'proof'", j);
  s.proof = proof_from_json(j.at("proof"));
  return s;
}

}  // namespace prhl::logic
