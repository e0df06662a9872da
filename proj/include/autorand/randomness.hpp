#pragma once

#include <optional>
#include <string>
#include <vector>

#include "autorand/family.hpp"
#include "autorand/omega.hpp"
#include "autorand/rational.hpp"

namespace autorand {

struct ArtVerdict {
  bool is_art = false;
  // Present whenever normalization succeeded.
  std::optional<NormalizedFamily> normalized;
  std::optional<DetBuchi> covering;
  // Negative certificates: a core word x keeps measure >= 2^-|x| in every
  // slice; an accepting leaf gives the covering region positive measure.
  std::optional<Word> core_witness;
  std::optional<std::vector<int>> accepting_leaf;
};

// Structural decision: normalize, build the covering automaton, test for an
// accepting leaf. Throws PreconditionError when validation fails.
ArtVerdict is_art(const AutomaticFamily& fam);

struct IndexMeasure {
  Word index;
  Rational measure;
};

struct MartReport {
  int depth = 0;
  // Every i ∈ I with |i| <= depth, in shortlex order.
  std::vector<IndexMeasure> measures;
  // Position in `measures` of the first index with μ[U_i] > 2^-|i|.
  std::optional<std::size_t> violation;

  bool holds() const { return !violation.has_value(); }
};

// Bounded check of μ[U_i] <= 2^-|i|. Slices are measured concurrently.
MartReport is_mart_bounded(const AutomaticFamily& fam, int depth = 12);
// Single-threaded reference for is_mart_bounded.
MartReport is_mart_bounded_serial(const AutomaticFamily& fam, int depth = 12);

// x ∈ F(fam), decided on the indirect covering automaton of normalize(fam).
bool covers(const AutomaticFamily& fam, const UPSequence& x);

// Shortlex-least word that is not a factor of x.
Word shortest_absent_factor(const UPSequence& x);

struct DisjunctivityReport {
  bool disjunctive = false;
  // Shortlex-least absent factor when the verdict is negative.
  std::optional<Word> missing;
  // Largest n such that every word of length <= n occurs.
  int coverage = 0;
};

DisjunctivityReport is_prefix_disjunctive(const Word& w, int k);
// A UP sequence is never disjunctive; the report carries the absent factor.
DisjunctivityReport disjunctivity(const UPSequence& x);

// I = 0*, U_i = {x : |x| = |i|, w is not a factor of x}.
AutomaticFamily art_from_forbidden_word(const Word& w);
// I = u v*, U_i = {i}.
AutomaticFamily art_from_up(const UPSequence& x);
// I = (00)*, U_i = (Σ0)^{|i|/2}.
AutomaticFamily art_even_zeros();

// A word whose run from every state of simplify_buchi(m) ends inside a leaf,
// so no accepted sequence contains it. Throws PreconditionError unless the
// automaton has measure zero.
Word forbidden_word_for_buchi(const DetBuchi& m);

// γ = base^(1/degree), kept as the pair so bounds compare exactly.
struct Gamma {
  Rational base;
  unsigned degree = 1;

  // measure <= γ^length
  bool bounds(const Rational& measure, std::size_t length) const;
  std::string str() const;
};

struct RenormalizedFamily {
  AutomaticFamily family;
  Word forbidden;
  Gamma gamma;
  // Indices up to length 4d whose measures were compared against γ^|j|.
  std::vector<IndexMeasure> checked;
  // F(original) ⊆ F(family).
  BuchiVerdict subsumption;
};

// J = (0^d)^+, V_j = words of length |j| avoiding w. Throws NotAnArt or
// PreconditionError when fam is not an ART.
RenormalizedFamily renormalize_exponential(const AutomaticFamily& fam);

}  // namespace autorand
