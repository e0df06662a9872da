#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "autorand/automata.hpp"

namespace autorand {

// Stacks the words as tracks of one block; shorter tracks are padded with PAD
// at the end. The block is as long as the longest word.
Block convolve(std::span<const Word> words);
// Inverse of convolve for well-padded blocks; throws InputError otherwise.
std::vector<Word> deconvolve(std::span<const Symbol> block, int arity);

// Reassigns tracks: old track t reads new track track_map[t]. Several old
// tracks may share a new track (diagonal), and new tracks nobody reads are
// unconstrained. The result accepts exactly the well-padded new tuples whose
// image under the map is accepted.
Dfa retrack(const Dfa& a, std::span<const int> track_map, int new_arity);

// Inserts an unconstrained track at position `at` (0-based).
Dfa cylindrify(const Dfa& a, int at);

// Existentially removes `track`; the removed word may be shorter or longer than
// the remaining ones. Result is minimized.
Dfa project(const Dfa& a, int track);

enum class Builtin {
  kPrefix,        // x ⪯ y
  kStrictPrefix,  // x ≺ y
  kEqual,
  kLenLeq,        // |x| <= |y|
  kShortlexLeq,
  kIn0Star,       // one track: x ∈ 0*
};

Dfa builtin(Builtin which);
// Accepts the canonical names and a dash-free alias each (e.g. "len_leq",
// "lenleq"); returns nullopt for anything else.
std::optional<Builtin> builtin_by_name(std::string_view name);
// Throws InputError on an unknown name.
Dfa builtin(std::string_view name);

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Formula {
  enum class Kind { kAtom, kAnd, kOr, kNot, kExists, kForall };

  Kind kind;
  // Relation name for atoms, bound variable for quantifiers.
  std::string name;
  std::vector<std::string> args;
  std::vector<FormulaPtr> children;
};

FormulaPtr atom(std::string relation, std::vector<std::string> args);
FormulaPtr conj(FormulaPtr a, FormulaPtr b);
FormulaPtr disj(FormulaPtr a, FormulaPtr b);
FormulaPtr negate(FormulaPtr a);
FormulaPtr implies(FormulaPtr a, FormulaPtr b);
FormulaPtr exists(std::string var, FormulaPtr body);
FormulaPtr forall(std::string var, FormulaPtr body);

// Sorted, duplicate-free.
std::vector<std::string> free_variables(const Formula& f);
std::string to_string(const Formula& f);

// Prefix syntax, e.g.
//   (forall i (imp (lenleq i j) (exists y (and (prefix y x) (rel U y i)))))
// Connectives: and, or (n-ary), not, imp, iff, exists, forall. Atoms are
// (name args...) or (rel name args...). Throws InputError with the offset.
FormulaPtr parse_formula(std::string_view text);

using Environment = std::map<std::string, Dfa, std::less<>>;

struct CompiledRelation {
  Dfa automaton;
  // tracks[t] is the variable read on track t.
  std::vector<std::string> tracks;
};

// Compiles f into an automaton over its free variables (sorted order).
// Relation names resolve against env first and then the builtins. Quantifiers
// range over all binary words; forall is compiled as not-exists-not; every
// quantifier step determinizes and minimizes. Throws InputError on unbound
// relations, arity mismatches and rebinding of a variable already in scope.
CompiledRelation compile(const Formula& f, const Environment& env);
// Same, with the given track order. `tracks` must contain every free variable;
// extra variables become unconstrained tracks.
Dfa compile(const Formula& f, const Environment& env,
            std::span<const std::string> tracks);

}  // namespace autorand
