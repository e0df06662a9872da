#pragma once

#include <vector>

#include "autorand/automata.hpp"
#include "autorand/omega.hpp"
#include "autorand/rational.hpp"

namespace autorand {

// Probability that the uniformly random run from the start state is absorbed
// into each leaf component of the state graph (one-track machines).
struct AbsorptionProfile {
  std::vector<std::vector<int>> leaves;
  std::vector<Rational> probability;

  Rational total() const;
};

AbsorptionProfile absorption_probabilities(const Dfa& machine);

// Per-state probability that the uniformly random run reaches a target state.
// Targets are treated as absorbing; states that cannot reach any target get 0.
// Solved exactly, one strongly connected component at a time.
std::vector<Rational> reach_probabilities(const Dfa& machine,
                                          const std::vector<bool>& targets);

// μ[L] for a one-track language L.
Rational cylinder_measure(const Dfa& language);

Rational buchi_measure(const DetBuchi& m);
Rational muller_measure(const DetMuller& m);

// Structural tests: no accepting state in a leaf component (Büchi), no leaf
// component in the table (Muller).
bool is_measure_zero_buchi(const DetBuchi& m);
bool is_measure_zero_muller(const DetMuller& m);

// Leaf component reachable from the start that carries an accepting state, if
// any; certifies positive measure.
std::optional<std::vector<int>> accepting_leaf(const DetBuchi& m);

// |{w ∈ Σ^depth : some prefix of w is in L}| / 2^depth.
Rational empirical_cylinder_measure(const Dfa& language, int depth);

}  // namespace autorand
