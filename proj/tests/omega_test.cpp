#include "autorand/omega.hpp"

#include <gtest/gtest.h>

#include "autorand/errors.hpp"
#include "autorand/measure.hpp"
#include "autorand/randomness.hpp"
#include "test_support.hpp"

namespace autorand {
namespace {

using testing::automaton;
using testing::Rng;

DetBuchi all_states_accepting() { return DetBuchi(Dfa(1, 1, 0, {true}, {0, 0})); }
DetBuchi nothing_accepting() { return DetBuchi(Dfa::empty_language(1)); }

// Remembers the last letter.
Dfa last_letter() { return Dfa(1, 2, 0, {false, true}, {0, 1, 0, 1}); }

NormalizedFamily certified(AutomaticFamily fam) {
  auto v = NormalizedFamily::certify(std::move(fam));
  EXPECT_TRUE(v);
  return *v;
}

// V_j = {0^n 1 : n >= |j|}; nonempty decreasing slices, empty intersection.
NormalizedFamily escaping_ones() {
  return certified(AutomaticFamily(
      builtin(Builtin::kIn0Star),
      minimize(automaton(2, 3, {2},
                         {{0, "0,0", 0}, {0, "0,#", 1}, {0, "1,#", 2},
                          {1, "0,#", 1}, {1, "1,#", 2}}))));
}

// U_j = {0^{|j|+1}}; not decreasing as sets, so it goes through normalize.
NormalizedFamily single_zero_run() {
  AutomaticFamily fam(
      builtin(Builtin::kIn0Star),
      minimize(automaton(2, 2, {1}, {{0, "0,0", 0}, {0, "0,#", 1}})));
  EXPECT_FALSE(NormalizedFamily::certify(fam));
  return normalize(fam);
}

TEST(UPSequence, Canonicalizes) {
  UPSequence a("0101", "01");
  EXPECT_EQ(a.prefix(), "");
  EXPECT_EQ(a.period(), "01");
  UPSequence b("1", "01");
  EXPECT_EQ(b.str(), ".10");
  UPSequence c("", "0000");
  EXPECT_EQ(c.str(), ".0");
  UPSequence d("01", "1");
  EXPECT_EQ(d.str(), "0.1");
  EXPECT_EQ(UPSequence::parse("0.10"), UPSequence("", "01"));
  EXPECT_EQ(UPSequence::parse("01.10").str(), "01.10");
  EXPECT_EQ(UPSequence("110", "110").str(), ".110");
}

TEST(UPSequence, LettersAgreeWithRawForm) {
  for (const auto& u : words_up_to(3)) {
    for (const auto& v : words_up_to(3)) {
      if (v.empty()) continue;
      UPSequence x(u, v);
      for (std::size_t n = 0; n < 20; ++n) {
        char raw = n < u.size() ? u[n] : v[(n - u.size()) % v.size()];
        ASSERT_EQ(x.at(n), raw);
      }
    }
  }
}

TEST(UPSequence, ParseErrors) {
  EXPECT_THROW(UPSequence::parse("01"), InputError);
  EXPECT_THROW(UPSequence::parse("0."), InputError);
  EXPECT_THROW(UPSequence::parse("0.1.1"), InputError);
  EXPECT_THROW(UPSequence::parse("2.1"), InputError);
}

TEST(RunUp, SelfLoop) {
  Lasso l = run_up(Dfa(1, 1, 0, {true}, {0, 0}), UPSequence::parse("01.1"));
  EXPECT_EQ(l.cycle, std::vector<int>{0});
}

TEST(RunUp, ParityOnAlternatingSequence) {
  Dfa parity(1, 2, 0, {true, false}, {1, 1, 0, 0});
  Lasso l = run_up(parity, UPSequence::parse(".01"));
  EXPECT_EQ(l.cycle, (std::vector<int>{0, 1}));
  Lasso on_ones = run_up(last_letter(), UPSequence::parse("0.1"));
  EXPECT_EQ(on_ones.cycle, std::vector<int>{1});
}

TEST(RunUp, InvariantUnderUnrolling) {
  Rng rng(3);
  for (int round = 0; round < 20; ++round) {
    Dfa m = testing::random_binary_dfa(rng, 6);
    for (const auto& x : testing::up_sequences(2, 3)) {
      Word u = x.prefix(), v = x.period();
      Lasso a = run_up(m, x);
      // Simulate the raw unrolled form for 2·|v|·|S| steps past the stem.
      int q = m.run(m.start(), word_to_block(u + v + v));
      std::vector<int> seen;
      for (int step = 0; step < 4 * static_cast<int>(v.size()) * m.num_states(); ++step) {
        q = m.next(q, v[step % v.size()] == '1');
      }
      for (int step = 0; step < 2 * static_cast<int>(v.size()) * m.num_states(); ++step) {
        seen.push_back(q);
        q = m.next(q, v[step % v.size()] == '1');
      }
      std::sort(seen.begin(), seen.end());
      seen.erase(std::unique(seen.begin(), seen.end()), seen.end());
      ASSERT_EQ(a.cycle, seen);
    }
  }
}

TEST(BuchiAccepts, TrivialAcceptanceSets) {
  for (const auto& x : testing::up_sequences(2, 2)) {
    EXPECT_TRUE(buchi_accepts(all_states_accepting(), x));
    EXPECT_FALSE(buchi_accepts(nothing_accepting(), x));
  }
}

TEST(BuchiAccepts, EvenZerosCoveringAutomaton) {
  DetBuchi c = buchi_from_family_indirect(normalize(art_even_zeros()));
  EXPECT_TRUE(buchi_accepts(c, UPSequence::parse(".0")));
  EXPECT_TRUE(buchi_accepts(c, UPSequence::parse(".00")));
  EXPECT_TRUE(buchi_accepts(c, UPSequence::parse(".10")));
  EXPECT_FALSE(buchi_accepts(c, UPSequence::parse(".11")));
  EXPECT_FALSE(buchi_accepts(c, UPSequence::parse(".01")));
  for (const auto& x : testing::up_sequences(3, 3)) {
    bool zero_at_odd = true;
    for (std::size_t n = 1; n < 40; n += 2) zero_at_odd = zero_at_odd && x.at(n) == '0';
    ASSERT_EQ(buchi_accepts(c, x), zero_at_odd) << x.str();
  }
}

TEST(Muller, TrivialTables) {
  Dfa parity(1, 2, 0, {false, false}, {1, 1, 0, 0});
  DetMuller none(parity, {});
  DetMuller every(parity, {{0}, {1}, {0, 1}});
  for (const auto& x : testing::up_sequences(2, 2)) {
    EXPECT_FALSE(muller_accepts(none, x));
    EXPECT_TRUE(muller_accepts(every, x));
  }
}

TEST(BuchiToMuller, TablesForExtremeAcceptance) {
  DetMuller empty = buchi_to_muller(DetBuchi(Dfa(1, 2, 0, {false, false}, {1, 1, 0, 0})));
  EXPECT_TRUE(empty.table().empty());
  DetMuller full = buchi_to_muller(DetBuchi(Dfa(1, 2, 0, {true, true}, {1, 1, 0, 0})));
  EXPECT_EQ(full.table(), (std::vector<std::vector<int>>{{0}, {0, 1}, {1}}));
}

TEST(BuchiToMuller, SameVerdictsOnRandomAutomata) {
  Rng rng(5);
  auto inputs = testing::up_sequences(2, 3);
  for (int round = 0; round < 3; ++round) {
    DetBuchi b = testing::random_buchi(rng, 6);
    DetMuller m = buchi_to_muller(b);
    for (std::size_t k = 0; k < 10; ++k) {
      const auto& x = inputs[(k * 7 + round) % inputs.size()];
      EXPECT_EQ(buchi_accepts(b, x), muller_accepts(m, x)) << x.str();
    }
  }
}

TEST(Indirect, EmptyCoveringRegion) {
  DetBuchi b = buchi_from_family_indirect(escaping_ones());
  EXPECT_TRUE(buchi_equiv(b, nothing_accepting()).holds);
  EXPECT_FALSE(buchi_accepts(b, UPSequence::parse(".0")));
}

TEST(Direct, EveryMarkerDiesImmediately) {
  DetBuchi b = buchi_from_family_direct(certified(testing::longer_than_index()));
  EXPECT_TRUE(buchi_equiv(b, all_states_accepting()).holds);
  for (const auto& x : testing::up_sequences(2, 3)) EXPECT_TRUE(buchi_accepts(b, x));
}

TEST(Direct, EvenZerosMatchesIndirect) {
  NormalizedFamily v = normalize(art_even_zeros());
  DetBuchi direct = buchi_from_family_direct(v);
  DetBuchi indirect = buchi_from_family_indirect(v);
  EXPECT_TRUE(buchi_contains(direct, indirect).holds);
  EXPECT_TRUE(buchi_contains(indirect, direct).holds);
}

TEST(Direct, SingletonRunOfZeros) {
  DetBuchi b = buchi_from_family_direct(single_zero_run());
  EXPECT_TRUE(buchi_accepts(b, UPSequence::parse(".0")));
  for (int k = 0; k < 5; ++k) {
    EXPECT_FALSE(buchi_accepts(b, UPSequence(Word(k, '0') + "1", "0")));
    EXPECT_FALSE(buchi_accepts(b, UPSequence(Word(k, '0') + "1", "01")));
  }
}

TEST(Direct, EmptyCoveringRegion) {
  DetBuchi b = buchi_from_family_direct(escaping_ones());
  EXPECT_TRUE(buchi_equiv(b, nothing_accepting()).holds);
}

TEST(Direct, AgreesWithIndirectOnRandomFamilies) {
  Rng rng(19);
  for (int round = 0; round < 25; ++round) {
    NormalizedFamily v = testing::sample_normalized_family(rng, 4);
    BuchiVerdict verdict = buchi_equiv(buchi_from_family_direct(v),
                                       buchi_from_family_indirect(v));
    ASSERT_TRUE(verdict.holds) << verdict.counterexample->str();
  }
}

TEST(FamilyFromBuchi, EmptyLanguageGivesEmptySlices) {
  AutomaticFamily fam = family_from_buchi(nothing_accepting());
  EXPECT_TRUE(is_empty(fam.relation()));
}

TEST(FamilyFromBuchi, EvenZerosRoundTrip) {
  DetBuchi m = buchi_from_family_indirect(normalize(art_even_zeros()));
  AutomaticFamily fam = family_from_buchi(m);
  DetBuchi back = buchi_from_family_indirect(normalize(fam));
  EXPECT_TRUE(buchi_equiv(back, m).holds);
}

TEST(FamilyFromBuchi, EpsilonSliceIsTheFiniteWordLanguage) {
  DetBuchi m(last_letter());
  AutomaticFamily fam = family_from_buchi(m);
  EXPECT_TRUE(equivalent(slice(fam, ""), m.machine()));
  for (const auto& x : words_up_to(5)) {
    EXPECT_EQ(slice(fam, "00").accepts_word(x),
              x.size() >= 2 && m.machine().accepts_word(x));
  }
}

TEST(BuchiContains, Reflexive) {
  DetBuchi m(last_letter());
  EXPECT_TRUE(buchi_contains(m, m).holds);
  EXPECT_TRUE(buchi_equiv(m, m).holds);
}

TEST(BuchiContains, AllVersusNone) {
  BuchiVerdict v = buchi_contains(all_states_accepting(), nothing_accepting());
  ASSERT_FALSE(v.holds);
  EXPECT_EQ(v.counterexample->str(), ".0");
  EXPECT_TRUE(buchi_accepts(all_states_accepting(), *v.counterexample));
  EXPECT_FALSE(buchi_accepts(nothing_accepting(), *v.counterexample));
}

TEST(BuchiEquiv, DistinctAutomataSameLanguage) {
  // Infinitely many ones, with a redundant copy of each state.
  Dfa redundant(1, 4, 0, {false, true, false, true}, {2, 3, 0, 1, 2, 3, 0, 1});
  EXPECT_TRUE(buchi_equiv(DetBuchi(redundant), DetBuchi(last_letter())).holds);
}

TEST(BuchiEquiv, InequivalentPairHasVerifiedWitness) {
  DetBuchi ones(last_letter());
  Dfa zeros_machine(1, 2, 0, {true, false}, {0, 1, 0, 1});
  DetBuchi zeros(zeros_machine);
  BuchiVerdict v = buchi_equiv(ones, zeros);
  ASSERT_FALSE(v.holds);
  EXPECT_EQ(v.counterexample->str(), ".1");
}

TEST(BuchiContains, AgreesWithExhaustiveProbing) {
  Rng rng(31);
  auto probes = testing::up_sequences(4, 4);
  for (int round = 0; round < 40; ++round) {
    DetBuchi a = testing::random_buchi(rng, 5);
    DetBuchi b = testing::random_buchi(rng, 5);
    BuchiVerdict v = buchi_contains(a, b);
    std::optional<std::size_t> shortest;
    for (const auto& x : probes) {
      if (buchi_accepts(a, x) && !buchi_accepts(b, x)) {
        std::size_t total = x.prefix().size() + x.period().size();
        if (!shortest || total < *shortest) shortest = total;
      }
    }
    if (v.holds) {
      ASSERT_FALSE(shortest);
      continue;
    }
    ASSERT_TRUE(buchi_accepts(a, *v.counterexample));
    ASSERT_FALSE(buchi_accepts(b, *v.counterexample));
    if (shortest) {
      ASSERT_LE(v.counterexample->prefix().size() + v.counterexample->period().size(),
                *shortest);
    }
  }
}

TEST(NoUniversal, EvenZerosCandidate) {
  NormalizedFamily candidate = normalize(art_even_zeros());
  NoUniversalResult r = demonstrate_no_universal(candidate);
  bool one_at_odd = false;
  for (std::size_t n = 1; n < r.escape.size(); n += 2) one_at_odd |= r.escape[n] == '1';
  EXPECT_TRUE(one_at_odd) << r.escape;
  EXPECT_EQ(r.witness, UPSequence(r.escape, "0"));
  EXPECT_TRUE(covers(r.family, r.witness));
  EXPECT_FALSE(covers(candidate.family(), r.witness));
  EXPECT_TRUE(is_art(r.family).is_art);
}

TEST(NoUniversal, DepthOneEscape) {
  NoUniversalResult r =
      demonstrate_no_universal(certified(testing::longer_than_index("0")));
  EXPECT_EQ(r.escape, "1");
  EXPECT_EQ(r.index_length, 0);
}

TEST(NoUniversal, FullMeasureSlicesThrow) {
  EXPECT_THROW(
      demonstrate_no_universal(certified(testing::longer_than_index()), 8),
      PreconditionError);
}

}  // namespace
}  // namespace autorand
