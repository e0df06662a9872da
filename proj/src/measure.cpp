#include "autorand/measure.hpp"

#include <algorithm>

#include "autorand/errors.hpp"

namespace autorand {
namespace {

void require_binary(const Dfa& m) {
  if (m.arity() != 1) throw InputError("measures are defined for one track");
}

std::vector<bool> reachable_from_start(const Dfa& m) {
  std::vector<bool> seen(m.num_states(), false);
  std::vector<int> stack{m.start()};
  seen[m.start()] = true;
  while (!stack.empty()) {
    int q = stack.back();
    stack.pop_back();
    for (int s = 0; s < 2; ++s) {
      int t = m.next(q, s);
      if (!seen[t]) {
        seen[t] = true;
        stack.push_back(t);
      }
    }
  }
  return seen;
}

// Solves A x = b in place by Gauss-Jordan elimination with nonzero pivoting.
std::vector<Rational> solve(std::vector<std::vector<Rational>> a,
                            std::vector<Rational> b) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot][col] == 0) ++pivot;
    if (pivot == n) throw Error("singular absorption system");
    std::swap(a[pivot], a[col]);
    std::swap(b[pivot], b[col]);
    Rational inv = 1 / a[col][col];
    for (std::size_t k = col; k < n; ++k) a[col][k] *= inv;
    b[col] *= inv;
    for (std::size_t row = 0; row < n; ++row) {
      if (row == col || a[row][col] == 0) continue;
      Rational factor = a[row][col];
      for (std::size_t k = col; k < n; ++k) a[row][k] -= factor * a[col][k];
      b[row] -= factor * b[col];
    }
  }
  return b;
}

std::vector<std::vector<int>> reachable_leaves(const Dfa& m) {
  Condensation cond = scc_condensation(m);
  std::vector<bool> live = reachable_from_start(m);
  std::vector<std::vector<int>> leaves;
  for (int c : cond.leaves) {
    std::vector<int> states = cond.components[c];
    if (!live[states.front()]) continue;
    std::sort(states.begin(), states.end());
    leaves.push_back(std::move(states));
  }
  std::sort(leaves.begin(), leaves.end());
  return leaves;
}

}  // namespace

Rational AbsorptionProfile::total() const {
  Rational sum = 0;
  for (const auto& p : probability) sum += p;
  return sum;
}

std::vector<Rational> reach_probabilities(const Dfa& machine,
                                          const std::vector<bool>& targets) {
  require_binary(machine);
  const int n = machine.num_states();
  std::vector<std::vector<int>> reverse(n);
  for (int q = 0; q < n; ++q) {
    if (targets[q]) continue;
    for (int s = 0; s < 2; ++s) reverse[machine.next(q, s)].push_back(q);
  }
  std::vector<bool> can_reach(n, false);
  std::vector<int> stack;
  for (int q = 0; q < n; ++q) {
    if (targets[q]) {
      can_reach[q] = true;
      stack.push_back(q);
    }
  }
  while (!stack.empty()) {
    int q = stack.back();
    stack.pop_back();
    for (int p : reverse[q]) {
      if (!can_reach[p]) {
        can_reach[p] = true;
        stack.push_back(p);
      }
    }
  }

  std::vector<Rational> prob(n, 0);
  std::vector<bool> unknown(n, false);
  std::vector<std::vector<int>> adj(n);
  for (int q = 0; q < n; ++q) {
    if (targets[q]) prob[q] = 1;
    unknown[q] = can_reach[q] && !targets[q];
  }
  for (int q = 0; q < n; ++q) {
    if (!unknown[q]) continue;
    for (int s = 0; s < 2; ++s) {
      int t = machine.next(q, s);
      if (unknown[t]) adj[q].push_back(t);
    }
  }
  Condensation cond = scc_condensation(adj);
  const Rational half(1, 2);
  std::vector<int> local(n, -1);
  for (const auto& comp : cond.components) {
    if (!unknown[comp.front()]) continue;
    const std::size_t size = comp.size();
    for (std::size_t k = 0; k < size; ++k) local[comp[k]] = static_cast<int>(k);
    std::vector<std::vector<Rational>> a(size, std::vector<Rational>(size, 0));
    std::vector<Rational> b(size, 0);
    for (std::size_t k = 0; k < size; ++k) {
      int q = comp[k];
      a[k][k] += 1;
      for (int s = 0; s < 2; ++s) {
        int t = machine.next(q, s);
        if (unknown[t] && cond.component_of[t] == cond.component_of[q]) {
          a[k][local[t]] -= half;
        } else {
          b[k] += half * prob[t];
        }
      }
    }
    std::vector<Rational> x = solve(std::move(a), std::move(b));
    for (std::size_t k = 0; k < size; ++k) prob[comp[k]] = x[k];
  }
  return prob;
}

AbsorptionProfile absorption_probabilities(const Dfa& machine) {
  require_binary(machine);
  AbsorptionProfile profile;
  profile.leaves = reachable_leaves(machine);
  for (const auto& leaf : profile.leaves) {
    std::vector<bool> targets(machine.num_states(), false);
    for (int q : leaf) targets[q] = true;
    profile.probability.push_back(
        reach_probabilities(machine, targets)[machine.start()]);
  }
  return profile;
}

Rational cylinder_measure(const Dfa& language) {
  return reach_probabilities(language,
                             language.accepting_states())[language.start()];
}

Rational buchi_measure(const DetBuchi& m) {
  AbsorptionProfile profile = absorption_probabilities(m.machine());
  Rational sum = 0;
  for (std::size_t k = 0; k < profile.leaves.size(); ++k) {
    const auto& leaf = profile.leaves[k];
    if (std::any_of(leaf.begin(), leaf.end(),
                    [&](int q) { return m.accepting(q); })) {
      sum += profile.probability[k];
    }
  }
  return sum;
}

Rational muller_measure(const DetMuller& m) {
  AbsorptionProfile profile = absorption_probabilities(m.machine());
  Rational sum = 0;
  for (std::size_t k = 0; k < profile.leaves.size(); ++k) {
    if (m.in_table(profile.leaves[k])) sum += profile.probability[k];
  }
  return sum;
}

std::optional<std::vector<int>> accepting_leaf(const DetBuchi& m) {
  for (const auto& leaf : reachable_leaves(m.machine())) {
    if (std::any_of(leaf.begin(), leaf.end(),
                    [&](int q) { return m.accepting(q); })) {
      return leaf;
    }
  }
  return std::nullopt;
}

bool is_measure_zero_buchi(const DetBuchi& m) { return !accepting_leaf(m); }

bool is_measure_zero_muller(const DetMuller& m) {
  for (const auto& leaf : reachable_leaves(m.machine())) {
    if (m.in_table(leaf)) return false;
  }
  return true;
}

Rational empirical_cylinder_measure(const Dfa& language, int depth) {
  require_binary(language);
  if (depth < 0) throw InputError("negative depth");
  const int n = language.num_states();
  std::vector<mpz_class> count(n, 0);
  count[language.start()] = 1;
  mpz_class hits = 0;
  for (int len = 0; len <= depth; ++len) {
    for (int q = 0; q < n; ++q) {
      if (language.accepting(q) && count[q] != 0) {
        mpz_class weight;
        mpz_ui_pow_ui(weight.get_mpz_t(), 2, depth - len);
        hits += count[q] * weight;
        count[q] = 0;
      }
    }
    if (len == depth) break;
    std::vector<mpz_class> next(n, 0);
    for (int q = 0; q < n; ++q) {
      if (count[q] == 0) continue;
      for (int s = 0; s < 2; ++s) next[language.next(q, s)] += count[q];
    }
    count = std::move(next);
  }
  return Rational(hits) * power_of_half(static_cast<unsigned>(depth));
}

}  // namespace autorand
