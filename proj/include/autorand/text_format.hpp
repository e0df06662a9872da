#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "autorand/automata.hpp"
#include "autorand/family.hpp"
#include "autorand/omega.hpp"

namespace autorand {

enum class AutomatonKind { kDfa, kNfa, kBuchi, kMuller };

std::string_view kind_name(AutomatonKind kind);

struct Transition {
  int from;
  Symbol symbol;
  int to;

  auto operator<=>(const Transition&) const = default;
};

// Line-oriented automaton text:
//
//   type: dfa
//   tracks: 2
//   states: 3
//   start: 0
//   accept: 0 2
//   delta: 0 0,# 1
//
// Muller automata list `accept-set:` lines instead of `accept:`. Lines whose
// first non-blank character is '#' are comments. Transitions not listed lead
// to an implicit rejecting sink (deterministic kinds) or nowhere (nfa).
struct AutomatonDocument {
  AutomatonKind kind = AutomatonKind::kDfa;
  int tracks = 1;
  int states = 1;
  std::vector<int> start{0};
  std::vector<int> accept;
  std::vector<std::vector<int>> accept_sets;
  std::vector<Transition> delta;

  // Sorts and deduplicates every list.
  void canonicalize();
  bool operator==(const AutomatonDocument&) const = default;
};

AutomatonDocument parse_automaton(std::string_view text);
std::string print_automaton(AutomatonDocument doc);

// Conversions. The deterministic readers accept dfa, buchi and muller
// documents and reject duplicate transitions.
Dfa to_dfa(const AutomatonDocument& doc);
Nfa to_nfa(const AutomatonDocument& doc);
DetBuchi to_buchi(const AutomatonDocument& doc);
DetMuller to_muller(const AutomatonDocument& doc);

AutomatonDocument document_of(const Dfa& a,
                              AutomatonKind kind = AutomatonKind::kDfa);
AutomatonDocument document_of(const DetBuchi& m);
AutomatonDocument document_of(const DetMuller& m);

// `[index]` followed by a one-track automaton, `[relation]` followed by a
// two-track automaton.
AutomaticFamily parse_family(std::string_view text);
std::string print_family(const AutomaticFamily& fam);

// Whole file as a string; throws InputError when it cannot be read.
std::string read_file(const std::string& path);

}  // namespace autorand
