#include "autorand/automata.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <string>
#include <unordered_map>

#include "autorand/errors.hpp"
#include "hashing.hpp"

namespace autorand {

Dfa::Dfa(int arity, int num_states, int start, std::vector<bool> accepting,
         std::vector<int> delta)
    : alphabet_(arity),
      num_states_(num_states),
      start_(start),
      accepting_(std::move(accepting)),
      delta_(std::move(delta)) {
  if (num_states_ < 1) throw InputError("automaton needs at least one state");
  if (start_ < 0 || start_ >= num_states_) {
    throw InputError("start state out of range");
  }
  if (static_cast<int>(accepting_.size()) != num_states_) {
    throw InputError("accepting vector has wrong size");
  }
  if (delta_.size() != static_cast<std::size_t>(num_states_) *
                           static_cast<std::size_t>(alphabet_.size())) {
    throw InputError("transition table is not total");
  }
  for (int t : delta_) {
    if (t < 0 || t >= num_states_) {
      throw InputError("transition target out of range");
    }
  }
}

Dfa Dfa::empty_language(int arity) {
  Alphabet a(arity);
  return Dfa(arity, 1, 0, {false}, std::vector<int>(a.size(), 0));
}

int Dfa::run(int q, std::span<const Symbol> block) const {
  for (Symbol s : block) q = next(q, s);
  return q;
}

bool Dfa::accepts_word(std::string_view word) const {
  int q = start_;
  for (char c : word) q = next(q, c == '1' ? 1 : 0);
  return accepting_[q];
}

bool Dfa::operator==(const Dfa& other) const {
  return arity() == other.arity() && num_states_ == other.num_states_ &&
         start_ == other.start_ && accepting_ == other.accepting_ &&
         delta_ == other.delta_;
}

Nfa::Nfa(int arity, int num_states, std::vector<int> start,
         std::vector<bool> accepting)
    : alphabet_(arity),
      num_states_(num_states),
      start_(std::move(start)),
      accepting_(std::move(accepting)),
      delta_(static_cast<std::size_t>(num_states) * alphabet_.size()) {
  if (num_states_ < 1) throw InputError("automaton needs at least one state");
  if (static_cast<int>(accepting_.size()) != num_states_) {
    throw InputError("accepting vector has wrong size");
  }
  for (int s : start_) {
    if (s < 0 || s >= num_states_) throw InputError("start state out of range");
  }
  std::sort(start_.begin(), start_.end());
  start_.erase(std::unique(start_.begin(), start_.end()), start_.end());
}

Nfa Nfa::from_dfa(const Dfa& d) {
  Nfa n(d.arity(), d.num_states(), {d.start()}, d.accepting_states());
  for (int q = 0; q < d.num_states(); ++q) {
    for (int s = 0; s < d.alphabet_size(); ++s) {
      n.add_transition(q, s, d.next(q, s));
    }
  }
  return n;
}

void Nfa::add_transition(int from, Symbol s, int to) {
  if (from < 0 || from >= num_states_ || to < 0 || to >= num_states_ ||
      static_cast<int>(s) >= alphabet_size()) {
    throw InputError("transition out of range");
  }
  auto& row = delta_[from * alphabet_size() + s];
  auto it = std::lower_bound(row.begin(), row.end(), to);
  if (it == row.end() || *it != to) row.insert(it, to);
}

bool Nfa::accepts(std::span<const Symbol> block) const {
  std::vector<bool> current(num_states_, false);
  for (int s : start_) current[s] = true;
  for (Symbol sym : block) {
    std::vector<bool> next(num_states_, false);
    for (int q = 0; q < num_states_; ++q) {
      if (!current[q]) continue;
      for (int t : successors(q, sym)) next[t] = true;
    }
    current = std::move(next);
  }
  for (int q = 0; q < num_states_; ++q) {
    if (current[q] && accepting_[q]) return true;
  }
  return false;
}

Dfa boolean_combine(const Dfa& a, const Dfa& b, BoolOp op) {
  if (a.arity() != b.arity()) {
    throw InputError("boolean combination of automata with arities " +
                     std::to_string(a.arity()) + " and " +
                     std::to_string(b.arity()));
  }
  const int sigma = a.alphabet_size();
  std::unordered_map<std::uint64_t, int> index;
  std::vector<std::pair<int, int>> pairs;
  auto intern = [&](int p, int q) {
    std::uint64_t key = (static_cast<std::uint64_t>(p) << 32) |
                        static_cast<std::uint32_t>(q);
    auto [it, fresh] = index.emplace(key, static_cast<int>(pairs.size()));
    if (fresh) pairs.emplace_back(p, q);
    return it->second;
  };
  intern(a.start(), b.start());
  std::vector<int> delta;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    auto [p, q] = pairs[i];
    for (int s = 0; s < sigma; ++s) {
      delta.push_back(intern(a.next(p, s), b.next(q, s)));
    }
  }
  std::vector<bool> accepting(pairs.size());
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    bool x = a.accepting(pairs[i].first);
    bool y = b.accepting(pairs[i].second);
    switch (op) {
      case BoolOp::kAnd: accepting[i] = x && y; break;
      case BoolOp::kOr: accepting[i] = x || y; break;
      case BoolOp::kDiff: accepting[i] = x && !y; break;
    }
  }
  return Dfa(a.arity(), static_cast<int>(pairs.size()), 0,
             std::move(accepting), std::move(delta));
}

Dfa complement(const Dfa& a) {
  std::vector<bool> flipped(a.num_states());
  for (int q = 0; q < a.num_states(); ++q) flipped[q] = !a.accepting(q);
  Dfa c(a.arity(), a.num_states(), a.start(), std::move(flipped),
        a.transitions());
  if (a.arity() < 2) return c;
  return intersect(c, well_padded(a.arity()));
}

Dfa determinize(const Nfa& a) {
  const int sigma = a.alphabet_size();
  std::unordered_map<std::vector<int>, int, VectorHash> index;
  std::vector<std::vector<int>> subsets;
  auto intern = [&](std::vector<int> set) {
    auto [it, fresh] = index.emplace(set, static_cast<int>(subsets.size()));
    if (fresh) subsets.push_back(std::move(set));
    return it->second;
  };
  intern(a.start());
  std::vector<int> delta;
  std::vector<char> mark(a.num_states(), 0);
  for (std::size_t i = 0; i < subsets.size(); ++i) {
    for (int s = 0; s < sigma; ++s) {
      std::vector<int> next;
      for (int q : subsets[i]) {
        for (int t : a.successors(q, s)) {
          if (!mark[t]) {
            mark[t] = 1;
            next.push_back(t);
          }
        }
      }
      for (int t : next) mark[t] = 0;
      std::sort(next.begin(), next.end());
      delta.push_back(intern(std::move(next)));
    }
  }
  std::vector<bool> accepting(subsets.size(), false);
  for (std::size_t i = 0; i < subsets.size(); ++i) {
    for (int q : subsets[i]) {
      if (a.accepting(q)) {
        accepting[i] = true;
        break;
      }
    }
  }
  return Dfa(a.arity(), static_cast<int>(subsets.size()), 0,
             std::move(accepting), std::move(delta));
}

namespace {

// Renumbers the states reachable from `start` in BFS order over increasing
// symbols; `classes` maps original states onto the states of the result.
Dfa renumber(const Dfa& a, const std::vector<int>& classes, int num_classes) {
  const int sigma = a.alphabet_size();
  // One representative per class.
  std::vector<int> representative(num_classes, -1);
  for (int q = 0; q < a.num_states(); ++q) {
    if (representative[classes[q]] < 0) representative[classes[q]] = q;
  }
  std::vector<int> order(num_classes, -1);
  std::vector<int> queue;
  order[classes[a.start()]] = 0;
  queue.push_back(classes[a.start()]);
  for (std::size_t i = 0; i < queue.size(); ++i) {
    int rep = representative[queue[i]];
    for (int s = 0; s < sigma; ++s) {
      int c = classes[a.next(rep, s)];
      if (order[c] < 0) {
        order[c] = static_cast<int>(queue.size());
        queue.push_back(c);
      }
    }
  }
  const int n = static_cast<int>(queue.size());
  std::vector<int> delta(static_cast<std::size_t>(n) * sigma);
  std::vector<bool> accepting(n);
  for (int i = 0; i < n; ++i) {
    int rep = representative[queue[i]];
    accepting[i] = a.accepting(rep);
    for (int s = 0; s < sigma; ++s) {
      delta[static_cast<std::size_t>(i) * sigma + s] =
          order[classes[a.next(rep, s)]];
    }
  }
  return Dfa(a.arity(), n, 0, std::move(accepting), std::move(delta));
}

}  // namespace

Dfa trim(const Dfa& a) {
  std::vector<int> identity(a.num_states());
  for (int q = 0; q < a.num_states(); ++q) identity[q] = q;
  return renumber(a, identity, a.num_states());
}

Dfa minimize(const Dfa& input) {
  Dfa a = trim(input);
  const int n = a.num_states();
  const int sigma = a.alphabet_size();
  std::vector<int> cls(n);
  bool any_accepting = false;
  bool any_rejecting = false;
  for (int q = 0; q < n; ++q) {
    cls[q] = a.accepting(q) ? 1 : 0;
    (a.accepting(q) ? any_accepting : any_rejecting) = true;
  }
  int count = (any_accepting && any_rejecting) ? 2 : 1;
  if (count == 1) std::fill(cls.begin(), cls.end(), 0);
  // Moore refinement: split classes by the classes of their successors.
  while (true) {
    std::unordered_map<std::vector<int>, int, VectorHash> signatures;
    std::vector<int> refined(n);
    std::vector<int> signature(sigma + 1);
    for (int q = 0; q < n; ++q) {
      signature[0] = cls[q];
      for (int s = 0; s < sigma; ++s) signature[s + 1] = cls[a.next(q, s)];
      auto [it, fresh] = signatures.emplace(
          signature, static_cast<int>(signatures.size()));
      refined[q] = it->second;
    }
    int refined_count = static_cast<int>(signatures.size());
    cls = std::move(refined);
    if (refined_count == count) break;
    count = refined_count;
  }
  return renumber(a, cls, count);
}

Dfa well_padded(int arity) {
  Alphabet alphabet(arity);
  if (arity == 0) return Dfa(0, 1, 0, {true}, {});
  const int full = (1 << arity) - 1;
  const int sink = full;  // masks 0 .. full-1 are the live states
  const int sigma = alphabet.size();
  std::vector<int> delta(static_cast<std::size_t>(full + 1) * sigma);
  std::vector<bool> accepting(full + 1, true);
  accepting[sink] = false;
  for (int mask = 0; mask <= full; ++mask) {
    for (int s = 0; s < sigma; ++s) {
      int target = mask;
      if (mask == sink) {
        target = sink;
      } else {
        for (int t = 0; t < arity; ++t) {
          if (alphabet.letter(s, t) == Letter::kPad) {
            target |= 1 << t;
          } else if (mask & (1 << t)) {
            target = sink;
            break;
          }
        }
      }
      delta[static_cast<std::size_t>(mask) * sigma + s] = target;
    }
  }
  return trim(Dfa(arity, full + 1, 0, std::move(accepting), std::move(delta)));
}

std::vector<std::optional<Block>> shortest_paths(const Dfa& a) {
  std::vector<int> parent(a.num_states(), -1);
  std::vector<Symbol> via(a.num_states(), 0);
  std::vector<bool> seen(a.num_states(), false);
  std::vector<int> queue{a.start()};
  seen[a.start()] = true;
  for (std::size_t i = 0; i < queue.size(); ++i) {
    int q = queue[i];
    for (int s = 0; s < a.alphabet_size(); ++s) {
      int t = a.next(q, s);
      if (!seen[t]) {
        seen[t] = true;
        parent[t] = q;
        via[t] = s;
        queue.push_back(t);
      }
    }
  }
  std::vector<std::optional<Block>> out(a.num_states());
  for (int q = 0; q < a.num_states(); ++q) {
    if (!seen[q]) continue;
    Block path;
    for (int p = q; p != a.start(); p = parent[p]) path.push_back(via[p]);
    std::reverse(path.begin(), path.end());
    out[q] = std::move(path);
  }
  return out;
}

std::optional<Block> shortest_word(const Dfa& a) {
  // BFS visits states in shortlex order of their least access words, so the
  // first accepting state dequeued carries the least accepted block.
  std::vector<int> parent(a.num_states(), -1);
  std::vector<Symbol> via(a.num_states(), 0);
  std::vector<bool> seen(a.num_states(), false);
  std::vector<int> queue{a.start()};
  seen[a.start()] = true;
  for (std::size_t i = 0; i < queue.size(); ++i) {
    int q = queue[i];
    if (a.accepting(q)) {
      Block path;
      for (int p = q; p != a.start(); p = parent[p]) path.push_back(via[p]);
      std::reverse(path.begin(), path.end());
      return path;
    }
    for (int s = 0; s < a.alphabet_size(); ++s) {
      int t = a.next(q, s);
      if (!seen[t]) {
        seen[t] = true;
        parent[t] = q;
        via[t] = s;
        queue.push_back(t);
      }
    }
  }
  return std::nullopt;
}

bool is_empty(const Dfa& a) { return !shortest_word(a).has_value(); }

std::optional<Block> difference_witness(const Dfa& a, const Dfa& b) {
  return shortest_word(boolean_combine(a, b, BoolOp::kDiff));
}

bool equivalent(const Dfa& a, const Dfa& b) {
  if (a.arity() != b.arity()) return false;
  return minimize(a) == minimize(b);
}

std::vector<std::vector<int>> adjacency(const Dfa& a) {
  std::vector<std::vector<int>> adj(a.num_states());
  for (int q = 0; q < a.num_states(); ++q) {
    for (int s = 0; s < a.alphabet_size(); ++s) adj[q].push_back(a.next(q, s));
    std::sort(adj[q].begin(), adj[q].end());
    adj[q].erase(std::unique(adj[q].begin(), adj[q].end()), adj[q].end());
  }
  return adj;
}

Condensation scc_condensation(const std::vector<std::vector<int>>& adj) {
  const int n = static_cast<int>(adj.size());
  Condensation out;
  out.component_of.assign(n, -1);
  std::vector<int> low(n, 0);
  std::vector<int> number(n, -1);
  std::vector<bool> on_stack(n, false);
  std::vector<int> stack;
  int counter = 0;
  // Iterative Tarjan: frames hold (state, next edge index).
  std::vector<std::pair<int, std::size_t>> frames;
  for (int root = 0; root < n; ++root) {
    if (number[root] >= 0) continue;
    frames.emplace_back(root, 0);
    number[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!frames.empty()) {
      auto& [v, edge] = frames.back();
      if (edge < adj[v].size()) {
        int w = adj[v][edge++];
        if (number[w] < 0) {
          number[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          frames.emplace_back(w, 0);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], number[w]);
        }
        continue;
      }
      int finished = v;
      frames.pop_back();
      if (!frames.empty()) {
        int parent = frames.back().first;
        low[parent] = std::min(low[parent], low[finished]);
      }
      if (low[finished] == number[finished]) {
        std::vector<int> component;
        int w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          out.component_of[w] = static_cast<int>(out.components.size());
          component.push_back(w);
        } while (w != finished);
        std::sort(component.begin(), component.end());
        out.components.push_back(std::move(component));
      }
    }
  }
  const int m = static_cast<int>(out.components.size());
  out.successors.assign(m, {});
  out.cyclic.assign(m, false);
  for (int v = 0; v < n; ++v) {
    int cv = out.component_of[v];
    for (int w : adj[v]) {
      int cw = out.component_of[w];
      if (cw != cv) {
        out.successors[cv].push_back(cw);
      } else {
        out.cyclic[cv] = true;
      }
    }
  }
  for (int c = 0; c < m; ++c) {
    auto& succ = out.successors[c];
    std::sort(succ.begin(), succ.end());
    succ.erase(std::unique(succ.begin(), succ.end()), succ.end());
    if (succ.empty()) out.leaves.push_back(c);
  }
  return out;
}

Condensation scc_condensation(const Dfa& a) {
  return scc_condensation(adjacency(a));
}

Condensation scc_condensation(const Nfa& a) {
  std::vector<std::vector<int>> adj(a.num_states());
  for (int q = 0; q < a.num_states(); ++q) {
    for (int s = 0; s < a.alphabet_size(); ++s) {
      for (int t : a.successors(q, s)) adj[q].push_back(t);
    }
    std::sort(adj[q].begin(), adj[q].end());
    adj[q].erase(std::unique(adj[q].begin(), adj[q].end()), adj[q].end());
  }
  return scc_condensation(adj);
}

bool run_visits(const Dfa& m, int q, std::span<const Symbol> block,
                const std::vector<bool>& targets) {
  if (targets[q]) return true;
  for (Symbol s : block) {
    q = m.next(q, s);
    if (targets[q]) return true;
  }
  return false;
}

namespace {

// Shortlex-least block leading from q onto a target, or nullopt.
std::optional<Block> shortest_to_target(const Dfa& m, int q,
                                        const std::vector<bool>& targets) {
  std::vector<int> parent(m.num_states(), -1);
  std::vector<Symbol> via(m.num_states(), 0);
  std::vector<bool> seen(m.num_states(), false);
  std::vector<int> queue{q};
  seen[q] = true;
  for (std::size_t i = 0; i < queue.size(); ++i) {
    int p = queue[i];
    if (targets[p]) {
      Block path;
      for (int r = p; r != q; r = parent[r]) path.push_back(via[r]);
      std::reverse(path.begin(), path.end());
      return path;
    }
    for (int s = 0; s < m.alphabet_size(); ++s) {
      int t = m.next(p, s);
      if (!seen[t]) {
        seen[t] = true;
        parent[t] = p;
        via[t] = s;
        queue.push_back(t);
      }
    }
  }
  return std::nullopt;
}

}  // namespace

Block synthesize_universal_word(const Dfa& m,
                                const std::vector<bool>& targets) {
  if (static_cast<int>(targets.size()) != m.num_states()) {
    throw InputError("target vector has wrong size");
  }
  Block word;
  for (int s = 0; s < m.num_states(); ++s) {
    if (run_visits(m, s, word, targets)) continue;
    int position = m.run(s, word);
    auto extension = shortest_to_target(m, position, targets);
    if (!extension) {
      throw PreconditionError("no target state is reachable from state " +
                              std::to_string(position));
    }
    word.insert(word.end(), extension->begin(), extension->end());
  }
  return word;
}

}  // namespace autorand
