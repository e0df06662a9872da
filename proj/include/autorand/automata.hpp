#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "autorand/alphabet.hpp"

namespace autorand {

// Deterministic automaton over the convolution alphabet of a fixed arity.
// The transition table is total: row q holds one successor per symbol.
class Dfa {
 public:
  Dfa(int arity, int num_states, int start, std::vector<bool> accepting,
      std::vector<int> delta);

  // One rejecting state looping on every symbol.
  static Dfa empty_language(int arity);

  int arity() const { return alphabet_.arity(); }
  const Alphabet& alphabet() const { return alphabet_; }
  int alphabet_size() const { return alphabet_.size(); }
  int num_states() const { return num_states_; }
  int start() const { return start_; }
  bool accepting(int q) const { return accepting_[q]; }
  const std::vector<bool>& accepting_states() const { return accepting_; }
  int next(int q, Symbol s) const { return delta_[q * alphabet_size() + s]; }
  const std::vector<int>& transitions() const { return delta_; }

  int run(int q, std::span<const Symbol> block) const;
  bool accepts(std::span<const Symbol> block) const {
    return accepting_[run(start_, block)];
  }
  // One-track convenience.
  bool accepts_word(std::string_view word) const;

  bool operator==(const Dfa& other) const;

 private:
  Alphabet alphabet_;
  int num_states_;
  int start_;
  std::vector<bool> accepting_;
  std::vector<int> delta_;
};

class Nfa {
 public:
  Nfa(int arity, int num_states, std::vector<int> start,
      std::vector<bool> accepting);

  static Nfa from_dfa(const Dfa& d);

  void add_transition(int from, Symbol s, int to);

  int arity() const { return alphabet_.arity(); }
  const Alphabet& alphabet() const { return alphabet_; }
  int alphabet_size() const { return alphabet_.size(); }
  int num_states() const { return num_states_; }
  const std::vector<int>& start() const { return start_; }
  bool accepting(int q) const { return accepting_[q]; }
  const std::vector<int>& successors(int q, Symbol s) const {
    return delta_[q * alphabet_size() + s];
  }
  bool accepts(std::span<const Symbol> block) const;

 private:
  Alphabet alphabet_;
  int num_states_;
  std::vector<int> start_;
  std::vector<bool> accepting_;
  std::vector<std::vector<int>> delta_;
};

enum class BoolOp { kAnd, kOr, kDiff };

// Product automaton restricted to reachable pairs.
Dfa boolean_combine(const Dfa& a, const Dfa& b, BoolOp op);
inline Dfa intersect(const Dfa& a, const Dfa& b) {
  return boolean_combine(a, b, BoolOp::kAnd);
}

// Complement relative to the well-padded blocks of the same arity.
Dfa complement(const Dfa& a);

Dfa determinize(const Nfa& a);

// Minimal automaton in canonical numbering: states in BFS discovery order from
// the start, symbols explored in increasing code order. Two automata accept the
// same language iff their minimized forms compare equal.
Dfa minimize(const Dfa& a);

// Removes unreachable states, renumbering in BFS order.
Dfa trim(const Dfa& a);

// Blocks whose tracks each have the form {0,1}* PAD*.
Dfa well_padded(int arity);

bool is_empty(const Dfa& a);
bool equivalent(const Dfa& a, const Dfa& b);
// Shortlex-least block in L(a) \ L(b), if any.
std::optional<Block> difference_witness(const Dfa& a, const Dfa& b);

// Shortlex-least accepted block.
std::optional<Block> shortest_word(const Dfa& a);
// Shortlex-least block leading from the start to each state (nullopt when
// unreachable).
std::vector<std::optional<Block>> shortest_paths(const Dfa& a);

// Strongly connected components. Components are numbered in the order Tarjan's
// algorithm closes them, so every edge between distinct components goes from a
// higher id to a lower id and leaves always precede their ancestors.
struct Condensation {
  std::vector<int> component_of;
  std::vector<std::vector<int>> components;
  std::vector<std::vector<int>> successors;
  std::vector<int> leaves;

  bool is_leaf(int component) const { return successors[component].empty(); }
  // A component is trivial when it is a single state without a self-loop.
  std::vector<bool> cyclic;
};

Condensation scc_condensation(const std::vector<std::vector<int>>& adjacency);
Condensation scc_condensation(const Dfa& a);
Condensation scc_condensation(const Nfa& a);

std::vector<std::vector<int>> adjacency(const Dfa& a);

// A block whose run from every state passes through a target state (the start
// state of the run counts). Built greedily: states are handled in index order,
// each extending the word by the shortlex-least continuation that moves its
// current position onto a target. Throws PreconditionError naming a state from
// which no target is reachable.
Block synthesize_universal_word(const Dfa& m, const std::vector<bool>& targets);

// True iff the run of `block` from q visits a target (q itself included).
bool run_visits(const Dfa& m, int q, std::span<const Symbol> block,
                const std::vector<bool>& targets);

}  // namespace autorand
