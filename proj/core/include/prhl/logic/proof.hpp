#ifndef PRHL_LOGIC_PROOF_HPP
#define PRHL_LOGIC_PROOF_HPP

#include "prhl/logic/judgment.hpp"

namespace prhl::logic {

struct ProofNode;
using ProofPtr = std::shared_ptr<const ProofNode>;

// One rule application. Assertions, invariants and bijections are stored as
// source text and parsed when the node is checked, against the programs in
// scope at that point (the Equiv rule rewrites a program mid-proof, so the
// scope is not fixed up front).
struct ProofNode {
  struct Skip {};
  struct Assign {};
  struct AssignL {};
  struct AssignR {};
  struct Sample {
    std::string bijection;  // expression in the distinguished variable v
  };
  struct SampleL { ProofPtr inner; };
  struct SampleR { ProofPtr inner; };
  struct Seq {
    int n1 = 1, n2 = 1;    // how many leading commands go to the first part
    std::string mid;
    ProofPtr first, rest;
  };
  struct If { ProofPtr then_proof, else_proof; };
  struct IfL { ProofPtr then_proof, else_proof; };
  struct IfR { ProofPtr then_proof, else_proof; };
  struct While {
    std::string invariant;
    ProofPtr body;
  };
  struct WhileL {
    std::string invariant;
    long fuel = 0;  // 0: use the checker's fuel
    ProofPtr body;
  };
  struct WhileR {
    std::string invariant;
    long fuel = 0;
    ProofPtr body;
  };
  struct Case {
    std::string split;
    ProofPtr when_true, when_false;
  };
  struct Conseq {
    std::string pre, post;
    ProofPtr inner;
  };
  struct Equiv {
    int side = 1;
    lang::Transform transform;
    lang::AstPath path;
    ProofPtr inner;
  };

  using Rep = std::variant<Skip, Assign, AssignL, AssignR, Sample, SampleL, SampleR, Seq, If,
                           IfL, IfR, While, WhileL, WhileR, Case, Conseq, Equiv>;
  Rep rep;

  template <class T>
  const T* get() const { return std::get_if<T>(&rep); }

  const char* rule_name() const;
};

template <class T>
ProofPtr make_proof(T node) {
  auto p = std::make_shared<ProofNode>();
  p->rep = std::move(node);
  return p;
}

// JSON form of a proof script: {"rule": "...", ...}. See docs in the README.
ProofPtr proof_from_json(const nlohmann::json& j);
nlohmann::json proof_to_json(const ProofPtr& p);

// A full script file: {"schema": "prhl/proof/v1", "pre": ..., "post": ...,
// "proof": {...}}.
struct ProofScript {
  std::string pre;
  std::string post;
  ProofPtr proof;
};
ProofScript proof_script_from_json(const nlohmann::json& j);

}  // namespace prhl::logic

#endif  // PRHL_LOGIC_PROOF_HPP
