#include "autorand/omega.hpp"

#include <algorithm>
#include <unordered_map>

#include "autorand/errors.hpp"
#include "autorand/measure.hpp"
#include "hashing.hpp"

namespace autorand {

UPSequence::UPSequence(Word prefix, Word period)
    : prefix_(std::move(prefix)), period_(std::move(period)) {
  if (!is_binary_word(prefix_) || !is_binary_word(period_)) {
    throw InputError("sequence letters must be 0 or 1");
  }
  if (period_.empty()) throw InputError("period of u.v must be nonempty");
  const std::size_t n = period_.size();
  for (std::size_t p = 1; p <= n; ++p) {
    if (n % p != 0) continue;
    bool root = true;
    for (std::size_t k = p; k < n && root; ++k) root = period_[k] == period_[k - p];
    if (root) {
      period_.resize(p);
      break;
    }
  }
  while (!prefix_.empty() && prefix_.back() == period_.back()) {
    std::rotate(period_.rbegin(), period_.rbegin() + 1, period_.rend());
    prefix_.pop_back();
  }
}

UPSequence UPSequence::parse(std::string_view text) {
  auto dot = text.find('.');
  if (dot == std::string_view::npos || text.find('.', dot + 1) != text.npos) {
    throw InputError("expected u.v, got '" + std::string(text) + "'");
  }
  return UPSequence(Word(text.substr(0, dot)), Word(text.substr(dot + 1)));
}

char UPSequence::at(std::size_t n) const {
  if (n < prefix_.size()) return prefix_[n];
  return period_[(n - prefix_.size()) % period_.size()];
}

Word UPSequence::take(std::size_t n) const {
  Word out;
  out.reserve(n);
  for (std::size_t k = 0; k < n; ++k) out.push_back(at(k));
  return out;
}

namespace {

Dfa require_binary(const Dfa& machine) {
  if (machine.arity() != 1) {
    throw InputError("omega-automata read one binary track");
  }
  return machine;
}

// BFS numbering of the reachable states, matching trim().
std::vector<int> reachable_order(const Dfa& m) {
  std::vector<int> order(m.num_states(), -1);
  std::vector<int> queue{m.start()};
  order[m.start()] = 0;
  for (std::size_t i = 0; i < queue.size(); ++i) {
    for (int s = 0; s < m.alphabet_size(); ++s) {
      int t = m.next(queue[i], s);
      if (order[t] < 0) {
        order[t] = static_cast<int>(queue.size());
        queue.push_back(t);
      }
    }
  }
  return order;
}

}  // namespace

DetBuchi::DetBuchi(const Dfa& machine)
    : machine_(trim(require_binary(machine))) {}

DetMuller::DetMuller(const Dfa& machine, std::vector<std::vector<int>> table)
    : machine_(trim(require_binary(machine))) {
  std::vector<int> order = reachable_order(machine);
  for (auto& set : table) {
    std::vector<int> mapped;
    bool reachable = !set.empty();
    for (int q : set) {
      if (q < 0 || q >= machine.num_states()) {
        throw InputError("Muller table mentions an unknown state");
      }
      if (order[q] < 0) reachable = false;
      mapped.push_back(order[q]);
    }
    if (!reachable) continue;
    std::sort(mapped.begin(), mapped.end());
    mapped.erase(std::unique(mapped.begin(), mapped.end()), mapped.end());
    table_.push_back(std::move(mapped));
  }
  std::sort(table_.begin(), table_.end());
  table_.erase(std::unique(table_.begin(), table_.end()), table_.end());
}

bool DetMuller::in_table(const std::vector<int>& states) const {
  return std::binary_search(table_.begin(), table_.end(), states);
}

Lasso run_up(const Dfa& machine, const UPSequence& x) {
  Lasso lasso;
  int q = machine.start();
  for (char c : x.prefix()) {
    lasso.stem.push_back(q);
    q = machine.next(q, c == '1' ? 1 : 0);
  }
  // Iterate v, remembering the state at each period boundary; the first
  // repeated boundary state closes the cycle.
  std::vector<int> first_seen(machine.num_states(), -1);
  std::vector<std::vector<int>> passes;
  for (int iteration = 0;; ++iteration) {
    if (first_seen[q] >= 0) {
      int begin = first_seen[q];
      for (int k = 0; k < begin; ++k) {
        lasso.stem.insert(lasso.stem.end(), passes[k].begin(), passes[k].end());
      }
      std::vector<int> cycle;
      for (int k = begin; k < iteration; ++k) {
        cycle.insert(cycle.end(), passes[k].begin(), passes[k].end());
      }
      std::sort(cycle.begin(), cycle.end());
      cycle.erase(std::unique(cycle.begin(), cycle.end()), cycle.end());
      lasso.cycle = std::move(cycle);
      lasso.entry = lasso.stem.size();
      return lasso;
    }
    first_seen[q] = iteration;
    std::vector<int> pass;
    for (char c : x.period()) {
      pass.push_back(q);
      q = machine.next(q, c == '1' ? 1 : 0);
    }
    passes.push_back(std::move(pass));
  }
}

bool buchi_accepts(const DetBuchi& m, const UPSequence& x) {
  Lasso lasso = run_up(m.machine(), x);
  return std::any_of(lasso.cycle.begin(), lasso.cycle.end(),
                     [&](int q) { return m.accepting(q); });
}

bool muller_accepts(const DetMuller& m, const UPSequence& x) {
  return m.in_table(run_up(m.machine(), x).cycle);
}

DetBuchi simplify_buchi(const DetBuchi& m) {
  const Dfa& a = m.machine();
  const int n = a.num_states();
  Condensation cond = scc_condensation(a);
  // Components are numbered so successors come first.
  std::vector<bool> live_component(cond.components.size(), false);
  for (std::size_t c = 0; c < cond.components.size(); ++c) {
    bool live = false;
    if (cond.cyclic[c]) {
      for (int q : cond.components[c]) live = live || a.accepting(q);
    }
    for (int d : cond.successors[c]) live = live || live_component[d];
    live_component[c] = live;
  }
  const int sink = n;
  std::vector<int> delta(static_cast<std::size_t>(n + 1) * 2, sink);
  std::vector<bool> accepting(n + 1, false);
  for (int q = 0; q < n; ++q) {
    if (!live_component[cond.component_of[q]]) continue;
    accepting[q] = a.accepting(q);
    for (int s = 0; s < 2; ++s) {
      int t = a.next(q, s);
      delta[q * 2 + s] = live_component[cond.component_of[t]] ? t : sink;
    }
  }
  int start = live_component[cond.component_of[a.start()]] ? a.start() : sink;
  return DetBuchi(minimize(Dfa(1, n + 1, start, std::move(accepting),
                               std::move(delta))));
}

DetMuller buchi_to_muller(const DetBuchi& m) {
  const int n = m.num_states();
  if (n > 20) {
    throw PreconditionError("Muller table for " + std::to_string(n) +
                            " states is too large to enumerate");
  }
  std::uint32_t accepting_mask = 0;
  for (int q = 0; q < n; ++q) {
    if (m.accepting(q)) accepting_mask |= 1U << q;
  }
  std::vector<std::vector<int>> table;
  for (std::uint32_t mask = 1; mask < (1U << n); ++mask) {
    if ((mask & accepting_mask) == 0) continue;
    std::vector<int> set;
    for (int q = 0; q < n; ++q) {
      if (mask & (1U << q)) set.push_back(q);
    }
    table.push_back(std::move(set));
  }
  return DetMuller(m.machine(), std::move(table));
}

DetBuchi buchi_from_family_indirect(const NormalizedFamily& fam) {
  Dfa r = union_language(prefix_free_refine(fam.family()));
  return DetBuchi(minimize(r));
}

namespace {

struct MarkerState {
  int diagonal;
  std::vector<int> red;
  std::vector<int> grey;
  bool phase_end;

  bool operator==(const MarkerState&) const = default;
};

struct MarkerHash {
  std::size_t operator()(const MarkerState& s) const {
    VectorHash h;
    std::size_t seed = h(s.red) * 31 + h(s.grey);
    return seed * 131 + static_cast<std::size_t>(s.diagonal) * 2 +
           (s.phase_end ? 1 : 0);
  }
};

constexpr std::size_t kMaxMarkerStates = 2'000'000;

}  // namespace

DetBuchi buchi_from_family_direct(const NormalizedFamily& fam) {
  const Dfa& rel = fam.family().relation();
  // Column codes for (b, 0) and (b, PAD).
  auto on_index = [&](int q, int b) { return rel.next(q, b * 3 + 0); };
  auto past_index = [&](int q, int b) { return rel.next(q, b * 3 + 2); };

  auto settle = [&](std::vector<int>& markers) {
    std::vector<int> kept;
    for (int q : markers) {
      if (!rel.accepting(q)) kept.push_back(q);
    }
    std::sort(kept.begin(), kept.end());
    kept.erase(std::unique(kept.begin(), kept.end()), kept.end());
    markers = std::move(kept);
  };

  std::unordered_map<MarkerState, int, MarkerHash> index;
  std::vector<MarkerState> states;
  auto intern = [&](MarkerState s) {
    auto [it, fresh] = index.emplace(s, static_cast<int>(states.size()));
    if (fresh) {
      if (states.size() >= kMaxMarkerStates) {
        throw PreconditionError("marker construction exceeds state budget");
      }
      states.push_back(std::move(s));
    }
    return it->second;
  };

  // The marker for index ε starts on the start state and is grey from the
  // outset, so the first phase waits for it.
  MarkerState initial{rel.start(), {}, {rel.start()}, false};
  settle(initial.grey);
  intern(initial);

  std::vector<int> delta;
  for (std::size_t k = 0; k < states.size(); ++k) {
    for (int b = 0; b < 2; ++b) {
      const MarkerState& from = states[k];
      MarkerState to;
      to.diagonal = on_index(from.diagonal, b);
      to.grey.clear();
      for (int q : from.grey) to.grey.push_back(past_index(q, b));
      to.red.clear();
      for (int q : from.red) to.red.push_back(past_index(q, b));
      to.red.push_back(to.diagonal);
      settle(to.grey);
      settle(to.red);
      to.phase_end = to.grey.empty();
      if (to.phase_end) std::swap(to.grey, to.red);
      delta.push_back(intern(std::move(to)));
    }
  }
  std::vector<bool> accepting(states.size());
  for (std::size_t k = 0; k < states.size(); ++k) {
    accepting[k] = states[k].phase_end;
  }
  Dfa machine(1, static_cast<int>(states.size()), 0, std::move(accepting),
              std::move(delta));
  return DetBuchi(minimize(machine));
}

AutomaticFamily family_from_buchi(const DetBuchi& m) {
  static const FormulaPtr kSlices =
      parse_formula("(and (R x) (in_0star i) (len_leq i x))");
  static const std::vector<std::string> kTracks{"x", "i"};
  Environment env{{"R", m.machine()}};
  return AutomaticFamily(builtin(Builtin::kIn0Star),
                         compile(*kSlices, env, kTracks));
}

namespace {

// Shortlex-least (|u|+|v|, u, v) lasso in L(a) \ L(b) with |u|+|v| <= limit.
std::optional<UPSequence> exhaustive_lasso(const DetBuchi& a,
                                           const DetBuchi& b, int limit) {
  for (int total = 1; total <= limit; ++total) {
    for (int ulen = 0; ulen < total; ++ulen) {
      auto prefixes = words_of_length(ulen);
      auto periods = words_of_length(total - ulen);
      for (const auto& u : prefixes) {
        for (const auto& v : periods) {
          UPSequence x(u, v);
          if (buchi_accepts(a, x) && !buchi_accepts(b, x)) return x;
        }
      }
    }
  }
  return std::nullopt;
}

// BFS path inside `allowed` from `from` to `to`, at least one letter long when
// from == to.
std::optional<Word> product_path(const std::vector<std::array<int, 2>>& succ,
                                 int from, int to,
                                 const std::vector<bool>& allowed) {
  const int n = static_cast<int>(succ.size());
  std::vector<int> parent(n, -1);
  std::vector<char> via(n, 0);
  std::vector<bool> seen(n, false);
  std::vector<int> queue;
  for (int b = 0; b < 2; ++b) {
    int t = succ[from][b];
    if (allowed[t] && !seen[t]) {
      seen[t] = true;
      parent[t] = -2 - from;
      via[t] = b == 0 ? '0' : '1';
      queue.push_back(t);
    }
  }
  for (std::size_t i = 0; i < queue.size(); ++i) {
    int p = queue[i];
    if (p == to) {
      Word path;
      int r = p;
      while (true) {
        path.push_back(via[r]);
        if (parent[r] <= -2) break;
        r = parent[r];
      }
      std::reverse(path.begin(), path.end());
      return path;
    }
    for (int b = 0; b < 2; ++b) {
      int t = succ[p][b];
      if (allowed[t] && !seen[t]) {
        seen[t] = true;
        parent[t] = p;
        via[t] = b == 0 ? '0' : '1';
        queue.push_back(t);
      }
    }
  }
  return std::nullopt;
}

}  // namespace

BuchiVerdict buchi_contains(const DetBuchi& a, const DetBuchi& b) {
  // Reachable product.
  std::unordered_map<std::uint64_t, int> index;
  std::vector<std::pair<int, int>> pairs;
  auto intern = [&](int p, int q) {
    std::uint64_t key = (static_cast<std::uint64_t>(p) << 32) |
                        static_cast<std::uint32_t>(q);
    auto [it, fresh] = index.emplace(key, static_cast<int>(pairs.size()));
    if (fresh) pairs.emplace_back(p, q);
    return it->second;
  };
  intern(a.machine().start(), b.machine().start());
  std::vector<std::array<int, 2>> succ;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    auto [p, q] = pairs[i];
    std::array<int, 2> row{};
    for (int s = 0; s < 2; ++s) {
      row[s] = intern(a.machine().next(p, s), b.machine().next(q, s));
    }
    succ.push_back(row);
  }
  const int n = static_cast<int>(pairs.size());
  // A counterexample cycles through an a-accepting pair while b never accepts.
  std::vector<bool> allowed(n);
  std::vector<std::vector<int>> adj(n);
  for (int i = 0; i < n; ++i) {
    allowed[i] = !b.accepting(pairs[i].second);
  }
  for (int i = 0; i < n; ++i) {
    if (!allowed[i]) continue;
    for (int t : succ[i]) {
      if (allowed[t]) adj[i].push_back(t);
    }
  }
  Condensation cond = scc_condensation(adj);
  int target = -1;
  for (int i = 0; i < n && target < 0; ++i) {
    if (!allowed[i] || !a.accepting(pairs[i].first)) continue;
    if (cond.cyclic[cond.component_of[i]]) target = i;
  }
  if (target < 0) return {};

  std::vector<bool> everywhere(n, true);
  std::vector<bool> component(n, false);
  for (int i : cond.components[cond.component_of[target]]) component[i] = true;
  Word stem;
  if (target != 0) stem = *product_path(succ, 0, target, everywhere);
  Word loop = *product_path(succ, target, target, component);
  UPSequence built(stem, loop);

  int limit = std::min<int>(kExhaustiveLassoLength,
                            static_cast<int>(stem.size() + loop.size()));
  if (auto shortest = exhaustive_lasso(a, b, limit)) return {false, *shortest};
  return {false, built};
}

BuchiVerdict buchi_equiv(const DetBuchi& a, const DetBuchi& b) {
  BuchiVerdict forward = buchi_contains(a, b);
  if (!forward.holds) return forward;
  return buchi_contains(b, a);
}

namespace {

// I = 0*, U_i = {w i}: x = w 0^m paired with i = 0^m.
Dfa shifted_singleton_relation(const Word& w) {
  const int d = static_cast<int>(w.size());
  // State (p, pads): p letters of w consumed (capped at d), pads index-PAD
  // columns read. The block ends after exactly d padded columns.
  const int width = d + 1;
  const int sink = width * width;
  const int n = sink + 1;
  Alphabet alphabet(2);
  const int sigma = alphabet.size();
  auto id = [&](int p, int pads) { return p * width + pads; };
  std::vector<int> delta(static_cast<std::size_t>(n) * sigma, sink);
  std::vector<bool> accepting(n, false);
  for (int p = 0; p <= d; ++p) {
    for (int pads = 0; pads <= d; ++pads) {
      accepting[id(p, pads)] = pads == d && p == d;
      for (int s = 0; s < sigma; ++s) {
        Letter x = alphabet.letter(s, 0);
        Letter i = alphabet.letter(s, 1);
        char expected = p < d ? w[p] : '0';
        if (x == Letter::kPad || letter_char(x) != expected) continue;
        if (i == Letter::kOne) continue;
        if (i == Letter::kZero && pads > 0) continue;
        int next_pads = pads + (i == Letter::kPad ? 1 : 0);
        if (next_pads > d) continue;
        delta[static_cast<std::size_t>(id(p, pads)) * sigma + s] =
            id(std::min(p + 1, d), next_pads);
      }
    }
  }
  return minimize(Dfa(2, n, id(0, 0), std::move(accepting), std::move(delta)));
}

}  // namespace

NoUniversalResult demonstrate_no_universal(const NormalizedFamily& candidate,
                                           int search_bound) {
  for (int k = 0; k <= search_bound; ++k) {
    Word j(k, '0');
    Dfa s = slice(candidate.family(), j);
    if (cylinder_measure(s) == 1) continue;
    // Some state cannot reach acceptance; a word leading there escapes [V_j].
    std::vector<bool> live(s.num_states(), false);
    for (int q = 0; q < s.num_states(); ++q) live[q] = s.accepting(q);
    for (bool changed = true; changed;) {
      changed = false;
      for (int q = 0; q < s.num_states(); ++q) {
        if (live[q]) continue;
        if (live[s.next(q, 0)] || live[s.next(q, 1)]) {
          live[q] = true;
          changed = true;
        }
      }
    }
    auto paths = shortest_paths(s);
    std::optional<Word> escape;
    for (int q = 0; q < s.num_states(); ++q) {
      if (live[q] || !paths[q]) continue;
      Word w = block_to_word(*paths[q]);
      if (!escape || shortlex_less(w, *escape)) escape = w;
    }
    if (!escape) {
      throw Error("slice of measure below 1 has no dead state");
    }
    AutomaticFamily family(builtin(Builtin::kIn0Star),
                           shifted_singleton_relation(*escape));
    UPSequence witness(*escape, "0");
    DetBuchi covering = buchi_from_family_indirect(normalize(family));
    DetBuchi universal = buchi_from_family_indirect(candidate);
    if (!buchi_accepts(covering, witness) ||
        buchi_accepts(universal, witness)) {
      throw Error("no-universal witness failed verification");
    }
    return {std::move(family), witness, k, *escape};
  }
  throw PreconditionError("no slice of measure below 1 with index length <= " +
                          std::to_string(search_bound) +
                          "; the candidate is not a test of measure zero");
}

}  // namespace autorand
