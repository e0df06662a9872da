#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "autorand/automata.hpp"
#include "autorand/logic.hpp"

namespace autorand {

// (U_i)_{i ∈ I}: `index` recognizes I over {0,1}; `relation` reads convolved
// pairs with the word x on track 0 and the index i on track 1.
class AutomaticFamily {
 public:
  AutomaticFamily(Dfa index, Dfa relation);

  const Dfa& index() const { return index_; }
  const Dfa& relation() const { return relation_; }

  bool member(const Word& x, const Word& i) const;

 private:
  Dfa index_;
  Dfa relation_;
};

struct ValidationReport {
  std::vector<std::string> failures;
  std::optional<Block> counterexample;

  bool ok() const { return failures.empty(); }
};

// Checks arities, that the relation accepts only well-padded blocks, and that
// every accepted pair has its index in I.
ValidationReport validate(const AutomaticFamily& fam);

// Minimal one-track automaton for U_i. Throws PreconditionError if i ∉ I.
Dfa slice(const AutomaticFamily& fam, const Word& i);

// W_j = {x | ∀i ∈ I [|i| <= |j| → ∃y ∈ U_i (y ≺ x)]} over J = 0*.
AutomaticFamily intersect_down(const AutomaticFamily& fam);

// L∞ = {x | ∀j ∈ 0* : x ∈ W_j} for a decreasing family over 0*.
Dfa core_language(const AutomaticFamily& decreasing);

// V(x, j) = W(x, j 0^shift), restricted to j ∈ 0*.
Dfa shift_index(const Dfa& relation, int shift);

struct LengthCertificate {
  bool holds = true;
  // (x, i) with x ∈ U_i and |x| <= |i|.
  std::optional<std::pair<Word, Word>> counterexample;
};

LengthCertificate verify_length_condition(const AutomaticFamily& fam);

// A family with index set 0*, decreasing slices and x ∈ V_i ⇒ |x| > |i|,
// each property checked by an emptiness test when the value is built.
class NormalizedFamily {
 public:
  // Runs the three checks; nullopt if any fails.
  static std::optional<NormalizedFamily> certify(AutomaticFamily fam);

  const AutomaticFamily& family() const { return family_; }
  // Index shift applied by normalize (0 for families certified directly).
  int shift() const { return shift_; }

 private:
  NormalizedFamily(AutomaticFamily fam, int shift)
      : family_(std::move(fam)), shift_(shift) {}

  AutomaticFamily family_;
  int shift_;

  friend NormalizedFamily normalize(const AutomaticFamily& fam);
};

// Index set is exactly 0*.
bool has_unary_index(const AutomaticFamily& fam);
// V_{j0} ⊆ V_j for all j ∈ 0*; returns a pair (x, j) violating it.
std::optional<std::pair<Word, Word>> decreasing_violation(
    const AutomaticFamily& fam);

// Equivalent normalized family V_j = W_{j 0^{c+1}} where c is the state count
// of the minimal W relation automaton. Throws PreconditionError if the family
// fails validation, NotAnArt if the core language is nonempty, and
// LengthConditionUnsatisfied if the shifted family fails its certificate.
NormalizedFamily normalize(const AutomaticFamily& fam);

// V_i = {x ∈ U_i : no y ∈ U_i is a strict prefix of x}.
AutomaticFamily prefix_free_refine(const AutomaticFamily& fam);

// ⋃_i U_i.
Dfa union_language(const AutomaticFamily& fam);

// The atoms "U" (relation) and "I" (index) bound for the family.
Environment family_environment(const AutomaticFamily& fam);

}  // namespace autorand
