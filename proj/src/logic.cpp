#include "autorand/logic.hpp"

#include <algorithm>
#include <set>

#include "autorand/errors.hpp"

namespace autorand {

Block convolve(std::span<const Word> words) {
  if (words.empty()) return {};
  Alphabet alphabet(static_cast<int>(words.size()));
  std::size_t length = 0;
  for (const auto& w : words) length = std::max(length, w.size());
  Block block;
  block.reserve(length);
  std::vector<Letter> column(words.size());
  for (std::size_t n = 0; n < length; ++n) {
    for (std::size_t t = 0; t < words.size(); ++t) {
      if (n >= words[t].size()) {
        column[t] = Letter::kPad;
      } else {
        column[t] = words[t][n] == '1' ? Letter::kOne : Letter::kZero;
      }
    }
    block.push_back(alphabet.encode(column));
  }
  return block;
}

std::vector<Word> deconvolve(std::span<const Symbol> block, int arity) {
  Alphabet alphabet(arity);
  std::vector<Word> words(arity);
  std::vector<bool> ended(arity, false);
  for (Symbol s : block) {
    for (int t = 0; t < arity; ++t) {
      Letter l = alphabet.letter(s, t);
      if (l == Letter::kPad) {
        ended[t] = true;
      } else if (ended[t]) {
        throw InputError("block is not well padded");
      } else {
        words[t].push_back(letter_char(l));
      }
    }
  }
  return words;
}

Dfa retrack(const Dfa& a, std::span<const int> track_map, int new_arity) {
  if (static_cast<int>(track_map.size()) != a.arity()) {
    throw InputError("track map does not cover every track");
  }
  for (int t : track_map) {
    if (t < 0 || t >= new_arity) throw InputError("track map out of range");
  }
  Alphabet target(new_arity);
  const Alphabet& source = a.alphabet();
  const int sigma = target.size();
  // Old symbol read for each new column; -1 when every old track is PAD.
  std::vector<int> image(sigma);
  std::vector<Letter> column(a.arity());
  for (int s = 0; s < sigma; ++s) {
    bool all_pad = true;
    for (int t = 0; t < a.arity(); ++t) {
      column[t] = target.letter(s, track_map[t]);
      all_pad = all_pad && column[t] == Letter::kPad;
    }
    image[s] = all_pad ? -1 : static_cast<int>(source.encode(column));
  }
  std::vector<int> delta(static_cast<std::size_t>(a.num_states()) * sigma);
  for (int q = 0; q < a.num_states(); ++q) {
    for (int s = 0; s < sigma; ++s) {
      delta[static_cast<std::size_t>(q) * sigma + s] =
          image[s] < 0 ? q : a.next(q, image[s]);
    }
  }
  Dfa lifted(new_arity, a.num_states(), a.start(), a.accepting_states(),
             std::move(delta));
  if (new_arity < 2) return minimize(lifted);
  return minimize(intersect(lifted, well_padded(new_arity)));
}

Dfa cylindrify(const Dfa& a, int at) {
  if (at < 0 || at > a.arity()) throw InputError("track position out of range");
  std::vector<int> map(a.arity());
  for (int t = 0; t < a.arity(); ++t) map[t] = t < at ? t : t + 1;
  return retrack(a, map, a.arity() + 1);
}

Dfa project(const Dfa& a, int track) {
  const int k = a.arity();
  if (track < 0 || track >= k) throw InputError("track position out of range");
  Alphabet reduced(k - 1);
  const Alphabet& full = a.alphabet();
  Nfa nfa(k - 1, a.num_states(), {a.start()},
          std::vector<bool>(a.num_states(), false));
  std::vector<Letter> column(k);
  for (int s = 0; s < reduced.size(); ++s) {
    for (int t = 0, u = 0; t < k; ++t) {
      if (t != track) column[t] = reduced.letter(s, u++);
    }
    for (Letter l : {Letter::kZero, Letter::kOne, Letter::kPad}) {
      column[track] = l;
      Symbol old = full.encode(column);
      for (int q = 0; q < a.num_states(); ++q) {
        nfa.add_transition(q, s, a.next(q, old));
      }
    }
  }
  // Columns where only the removed track is still running are dropped; a state
  // accepts if such a tail can lead to acceptance.
  std::vector<Symbol> tail;
  std::fill(column.begin(), column.end(), Letter::kPad);
  for (Letter l : {Letter::kZero, Letter::kOne}) {
    column[track] = l;
    tail.push_back(full.encode(column));
  }
  std::vector<bool> accepting(a.num_states(), false);
  std::vector<std::vector<int>> reverse(a.num_states());
  for (int q = 0; q < a.num_states(); ++q) {
    for (Symbol s : tail) reverse[a.next(q, s)].push_back(q);
  }
  std::vector<int> queue;
  for (int q = 0; q < a.num_states(); ++q) {
    if (a.accepting(q)) {
      accepting[q] = true;
      queue.push_back(q);
    }
  }
  for (std::size_t i = 0; i < queue.size(); ++i) {
    for (int p : reverse[queue[i]]) {
      if (!accepting[p]) {
        accepting[p] = true;
        queue.push_back(p);
      }
    }
  }
  Nfa closed(k - 1, a.num_states(), {a.start()}, accepting);
  for (int q = 0; q < a.num_states(); ++q) {
    for (int s = 0; s < reduced.size(); ++s) {
      for (int t : nfa.successors(q, s)) closed.add_transition(q, s, t);
    }
  }
  Dfa d = determinize(closed);
  if (k - 1 >= 2) d = intersect(d, well_padded(k - 1));
  return minimize(d);
}

namespace {

// Two-track automaton from a transition rule; -1 targets the reject sink.
template <typename Rule>
Dfa two_track(int live_states, std::vector<bool> accepting, Rule rule) {
  Alphabet alphabet(2);
  const int sink = live_states;
  const int sigma = alphabet.size();
  accepting.push_back(false);
  std::vector<int> delta(static_cast<std::size_t>(live_states + 1) * sigma);
  for (int q = 0; q <= live_states; ++q) {
    for (int s = 0; s < sigma; ++s) {
      int t = q == sink ? sink
                        : rule(q, alphabet.letter(s, 0), alphabet.letter(s, 1));
      delta[static_cast<std::size_t>(q) * sigma + s] = t < 0 ? sink : t;
    }
  }
  Dfa raw(2, live_states + 1, 0, std::move(accepting), std::move(delta));
  return minimize(intersect(raw, well_padded(2)));
}

constexpr Letter kPad = Letter::kPad;

}  // namespace

Dfa builtin(Builtin which) {
  switch (which) {
    case Builtin::kPrefix:
    case Builtin::kStrictPrefix: {
      // 0: equal so far, 1: x ended and y continues.
      bool strict = which == Builtin::kStrictPrefix;
      return two_track(2, {!strict, true}, [](int q, Letter x, Letter y) {
        if (q == 0 && x != kPad && x == y) return 0;
        if (x == kPad && y != kPad) return 1;
        return -1;
      });
    }
    case Builtin::kEqual:
      return two_track(1, {true}, [](int, Letter x, Letter y) {
        return x != kPad && x == y ? 0 : -1;
      });
    case Builtin::kLenLeq:
      // 0 accepting; a column where y has ended traps in 1.
      return two_track(2, {true, false}, [](int q, Letter, Letter y) {
        return q == 0 && y != kPad ? 0 : 1;
      });
    case Builtin::kShortlexLeq: {
      // 0 equal, 1 x below, 2 x above (same length so far), 3 x shorter,
      // 4 x longer.
      return two_track(5, {true, true, false, true, false},
                       [](int q, Letter x, Letter y) {
                         if (q == 3) return x == kPad ? 3 : -1;
                         if (q == 4) return y == kPad ? 4 : -1;
                         if (x == kPad) return 3;
                         if (y == kPad) return 4;
                         if (q != 0 || x == y) return q;
                         return x < y ? 1 : 2;
                       });
    }
    case Builtin::kIn0Star:
      return Dfa(1, 2, 0, {true, false}, {0, 1, 1, 1});
  }
  throw InputError("unknown builtin");
}

std::optional<Builtin> builtin_by_name(std::string_view name) {
  static const std::map<std::string, Builtin, std::less<>> kNames = {
      {"prefix", Builtin::kPrefix},
      {"strict_prefix", Builtin::kStrictPrefix},
      {"strictprefix", Builtin::kStrictPrefix},
      {"equal", Builtin::kEqual},
      {"len_leq", Builtin::kLenLeq},
      {"lenleq", Builtin::kLenLeq},
      {"shortlex_leq", Builtin::kShortlexLeq},
      {"shortlexleq", Builtin::kShortlexLeq},
      {"in_0star", Builtin::kIn0Star},
      {"in0star", Builtin::kIn0Star},
  };
  auto it = kNames.find(name);
  if (it == kNames.end()) return std::nullopt;
  return it->second;
}

Dfa builtin(std::string_view name) {
  auto which = builtin_by_name(name);
  if (!which) throw InputError("unknown builtin relation '" +
                               std::string(name) + "'");
  return builtin(*which);
}

FormulaPtr atom(std::string relation, std::vector<std::string> args) {
  return std::make_shared<Formula>(
      Formula{Formula::Kind::kAtom, std::move(relation), std::move(args), {}});
}

FormulaPtr conj(FormulaPtr a, FormulaPtr b) {
  return std::make_shared<Formula>(
      Formula{Formula::Kind::kAnd, {}, {}, {std::move(a), std::move(b)}});
}

FormulaPtr disj(FormulaPtr a, FormulaPtr b) {
  return std::make_shared<Formula>(
      Formula{Formula::Kind::kOr, {}, {}, {std::move(a), std::move(b)}});
}

FormulaPtr negate(FormulaPtr a) {
  return std::make_shared<Formula>(
      Formula{Formula::Kind::kNot, {}, {}, {std::move(a)}});
}

FormulaPtr implies(FormulaPtr a, FormulaPtr b) {
  return disj(negate(std::move(a)), std::move(b));
}

FormulaPtr exists(std::string var, FormulaPtr body) {
  return std::make_shared<Formula>(
      Formula{Formula::Kind::kExists, std::move(var), {}, {std::move(body)}});
}

FormulaPtr forall(std::string var, FormulaPtr body) {
  return std::make_shared<Formula>(
      Formula{Formula::Kind::kForall, std::move(var), {}, {std::move(body)}});
}

namespace {

void collect_free(const Formula& f, std::set<std::string>& bound,
                  std::set<std::string>& out) {
  switch (f.kind) {
    case Formula::Kind::kAtom:
      for (const auto& v : f.args) {
        if (!bound.count(v)) out.insert(v);
      }
      return;
    case Formula::Kind::kExists:
    case Formula::Kind::kForall: {
      bool fresh = bound.insert(f.name).second;
      collect_free(*f.children[0], bound, out);
      if (fresh) bound.erase(f.name);
      return;
    }
    default:
      for (const auto& c : f.children) collect_free(*c, bound, out);
  }
}

}  // namespace

std::vector<std::string> free_variables(const Formula& f) {
  std::set<std::string> bound, out;
  collect_free(f, bound, out);
  return {out.begin(), out.end()};
}

std::string to_string(const Formula& f) {
  switch (f.kind) {
    case Formula::Kind::kAtom: {
      std::string out = "(" + f.name;
      for (const auto& a : f.args) out += " " + a;
      return out + ")";
    }
    case Formula::Kind::kAnd:
      return "(and " + to_string(*f.children[0]) + " " +
             to_string(*f.children[1]) + ")";
    case Formula::Kind::kOr:
      return "(or " + to_string(*f.children[0]) + " " +
             to_string(*f.children[1]) + ")";
    case Formula::Kind::kNot:
      return "(not " + to_string(*f.children[0]) + ")";
    case Formula::Kind::kExists:
      return "(exists " + f.name + " " + to_string(*f.children[0]) + ")";
    case Formula::Kind::kForall:
      return "(forall " + f.name + " " + to_string(*f.children[0]) + ")";
  }
  return {};
}

namespace {

int position_of(std::span<const std::string> tracks, const std::string& v) {
  auto it = std::find(tracks.begin(), tracks.end(), v);
  if (it == tracks.end()) throw InputError("variable '" + v + "' has no track");
  return static_cast<int>(it - tracks.begin());
}

Dfa align(const CompiledRelation& r, std::span<const std::string> tracks) {
  std::vector<int> map;
  for (const auto& v : r.tracks) map.push_back(position_of(tracks, v));
  bool identity = r.tracks.size() == tracks.size();
  for (std::size_t t = 0; identity && t < map.size(); ++t) {
    identity = map[t] == static_cast<int>(t);
  }
  if (identity) return r.automaton;
  return retrack(r.automaton, map, static_cast<int>(tracks.size()));
}

std::vector<std::string> merge(const std::vector<std::string>& a,
                               const std::vector<std::string>& b) {
  std::vector<std::string> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(),
                 std::back_inserter(out));
  return out;
}

class Compiler {
 public:
  explicit Compiler(const Environment& env) : env_(env) {}

  CompiledRelation run(const Formula& f) {
    switch (f.kind) {
      case Formula::Kind::kAtom:
        return compile_atom(f);
      case Formula::Kind::kAnd:
      case Formula::Kind::kOr: {
        auto a = run(*f.children.at(0));
        auto b = run(*f.children.at(1));
        auto tracks = merge(a.tracks, b.tracks);
        auto op = f.kind == Formula::Kind::kAnd ? BoolOp::kAnd : BoolOp::kOr;
        Dfa combined = boolean_combine(align(a, tracks), align(b, tracks), op);
        return {minimize(combined), tracks};
      }
      case Formula::Kind::kNot: {
        auto a = run(*f.children.at(0));
        return {minimize(complement(a.automaton)), a.tracks};
      }
      case Formula::Kind::kExists:
      case Formula::Kind::kForall: {
        if (!scope_.insert(f.name).second) {
          throw InputError("variable '" + f.name + "' is bound twice");
        }
        bool universal = f.kind == Formula::Kind::kForall;
        auto body = run(*f.children.at(0));
        scope_.erase(f.name);
        auto it = std::find(body.tracks.begin(), body.tracks.end(), f.name);
        if (it == body.tracks.end()) return body;
        int track = static_cast<int>(it - body.tracks.begin());
        Dfa inner = universal ? complement(body.automaton) : body.automaton;
        Dfa projected = project(inner, track);
        body.tracks.erase(it);
        if (universal) projected = minimize(complement(projected));
        return {std::move(projected), std::move(body.tracks)};
      }
    }
    throw InputError("malformed formula");
  }

 private:
  CompiledRelation compile_atom(const Formula& f) {
    Dfa relation = lookup(f.name);
    if (static_cast<int>(f.args.size()) != relation.arity()) {
      throw InputError("relation '" + f.name + "' has arity " +
                       std::to_string(relation.arity()) + " but is applied to " +
                       std::to_string(f.args.size()) + " variables");
    }
    if (relation.arity() >= 2) {
      relation = minimize(intersect(relation, well_padded(relation.arity())));
    }
    std::vector<std::string> tracks(f.args.begin(), f.args.end());
    std::sort(tracks.begin(), tracks.end());
    tracks.erase(std::unique(tracks.begin(), tracks.end()), tracks.end());
    CompiledRelation r{relation, f.args};
    return {align(r, tracks), tracks};
  }

  Dfa lookup(const std::string& name) const {
    if (auto it = env_.find(name); it != env_.end()) return it->second;
    if (auto b = builtin_by_name(name)) return builtin(*b);
    throw InputError("unbound relation '" + name + "'");
  }

  const Environment& env_;
  std::set<std::string> scope_;
};

}  // namespace

CompiledRelation compile(const Formula& f, const Environment& env) {
  return Compiler(env).run(f);
}

Dfa compile(const Formula& f, const Environment& env,
            std::span<const std::string> tracks) {
  auto r = compile(f, env);
  for (const auto& v : r.tracks) position_of(tracks, v);
  return align(r, tracks);
}

}  // namespace autorand
