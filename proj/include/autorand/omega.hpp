#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "autorand/automata.hpp"
#include "autorand/family.hpp"

namespace autorand {

// The ultimately periodic sequence u v^ω, kept in canonical form: v primitive
// and u as short as possible. Two values are equal iff the sequences are.
class UPSequence {
 public:
  UPSequence(Word prefix, Word period);

  // "u.v"; either side lists binary letters, the period must be nonempty.
  static UPSequence parse(std::string_view text);

  const Word& prefix() const { return prefix_; }
  const Word& period() const { return period_; }
  char at(std::size_t n) const;
  // First n letters.
  Word take(std::size_t n) const;
  std::string str() const { return prefix_ + "." + period_; }

  bool operator==(const UPSequence&) const = default;

 private:
  Word prefix_;
  Word period_;
};

// The run of an ultimately periodic input: positions [0, entry) form the stem,
// `cycle` is the set of states occurring infinitely often.
struct Lasso {
  std::vector<int> stem;
  std::vector<int> cycle;
  std::size_t entry = 0;
};

// Deterministic Büchi automaton over {0,1}; states are trimmed on construction.
class DetBuchi {
 public:
  explicit DetBuchi(const Dfa& machine);

  const Dfa& machine() const { return machine_; }
  int num_states() const { return machine_.num_states(); }
  bool accepting(int q) const { return machine_.accepting(q); }

 private:
  Dfa machine_;
};

// Deterministic Muller automaton; the table lists sorted state sets.
class DetMuller {
 public:
  DetMuller(const Dfa& machine, std::vector<std::vector<int>> table);

  // The machine's accepting flags are not used.
  const Dfa& machine() const { return machine_; }
  int num_states() const { return machine_.num_states(); }
  const std::vector<std::vector<int>>& table() const { return table_; }
  bool in_table(const std::vector<int>& states) const;

 private:
  Dfa machine_;
  std::vector<std::vector<int>> table_;
};

Lasso run_up(const Dfa& machine, const UPSequence& x);
bool buchi_accepts(const DetBuchi& m, const UPSequence& x);
bool muller_accepts(const DetMuller& m, const UPSequence& x);

// Redirects every state whose ω-language is empty to a single rejecting sink
// and minimizes. The accepted sequences are unchanged.
DetBuchi simplify_buchi(const DetBuchi& m);

// Same transition structure; the table holds every state set meeting F.
DetMuller buchi_to_muller(const DetBuchi& m);

// The union of the prefix-free refinement read as a Büchi automaton.
DetBuchi buchi_from_family_indirect(const NormalizedFamily& fam);
// Breakpoint construction on the relation automaton: a red marker is spawned
// at every input position, markers on the same state merge, and a phase ends
// (accepting) once every grey marker has reached acceptance; all red markers
// then turn grey.
DetBuchi buchi_from_family_direct(const NormalizedFamily& fam);

// Index set 0*, U_i = {x ∈ R : |x| >= |i|} with R the machine read as a
// finite-word automaton.
AutomaticFamily family_from_buchi(const DetBuchi& m);

struct BuchiVerdict {
  bool holds = true;
  std::optional<UPSequence> counterexample;
};

// Decides L(a) ⊆ L(b). The counterexample is the shortlex-least lasso in
// (|u|+|v|, u, v) when one exists with |u|+|v| <= kExhaustiveLassoLength;
// beyond that it is built from a product cycle.
BuchiVerdict buchi_contains(const DetBuchi& a, const DetBuchi& b);
BuchiVerdict buchi_equiv(const DetBuchi& a, const DetBuchi& b);

inline constexpr int kExhaustiveLassoLength = 10;

struct NoUniversalResult {
  // I = 0*, U_i = {w i}
  AutomaticFamily family;
  UPSequence witness;  // w 0^ω
  // The candidate slice j = 0^index_length whose cylinder misses [w].
  int index_length = 0;
  Word escape;
};

// Builds, for a normalized candidate, a test covering w0^ω where [V_j] misses
// w for some slice j of measure below 1. The witness is verified against both
// covering automata before returning. Throws PreconditionError when no slice
// of measure < 1 exists with |j| <= search_bound.
NoUniversalResult demonstrate_no_universal(const NormalizedFamily& candidate,
                                           int search_bound = 64);

}  // namespace autorand
