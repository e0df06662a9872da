// Acceptance run: one PASS/FAIL line per criterion. Exit status is 1 if any
// criterion fails, except those named with --known-failure N; a known failure
// that passes also gives status 1.

#include <chrono>
#include <cstdlib>
#include <functional>
#include <set>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "autorand/randomness.hpp"
#include "formula_oracle.hpp"
#include "test_support.hpp"

namespace {

using namespace autorand;
using namespace autorand::testing;

struct Outcome {
  bool pass = true;
  std::string detail;
};

class Tally {
 public:
  void fail(const std::string& why) {
    if (pass_) first_ = why;
    pass_ = false;
  }
  void expect(bool ok, const std::string& why) {
    if (!ok) fail(why);
  }
  Outcome done(const std::string& summary) const {
    return {pass_, pass_ ? summary : first_};
  }

 private:
  bool pass_ = true;
  std::string first_;
};

Rational slice_measure(const AutomaticFamily& fam, const Word& index) {
  return cylinder_measure(slice(fam, index));
}

Outcome even_zeros_separation() {
  Tally t;
  AutomaticFamily fam = art_even_zeros();
  for (int k = 1; k <= 10; ++k) {
    Word index(2 * k, '0');
    t.expect(slice_measure(fam, index) == power_of_half(k),
             "slice 0^" + std::to_string(2 * k) + " is not 2^-" + std::to_string(k));
  }
  ArtVerdict v = is_art(fam);
  t.expect(v.is_art && !v.accepting_leaf && v.covering, "art-check is not yes");
  MartReport r = is_mart_bounded(fam, 10);
  t.expect(!r.holds(), "mart-check reported no violation");
  if (!r.holds()) {
    const IndexMeasure& bad = r.measures[*r.violation];
    t.expect(bad.index == "00", "violation index is " + bad.index);
    t.expect(bad.measure == Rational(1, 2), "violation measure is " + to_fraction(bad.measure));
  }
  return t.done("slices 2^-k for k=1..10, ART yes, MART(≤10) no at 00 with 1/2");
}

Outcome direct_matches_indirect() {
  Tally t;
  Rng rng(2024);
  const int trials = 60;
  for (int n = 0; n < trials; ++n) {
    NormalizedFamily fam = sample_normalized_family(rng, 4);
    DetBuchi direct = buchi_from_family_direct(fam);
    DetBuchi indirect = buchi_from_family_indirect(fam);
    BuchiVerdict v = buchi_equiv(direct, indirect);
    if (!v.holds) {
      const UPSequence& x = *v.counterexample;
      bool real = buchi_accepts(direct, x) != buchi_accepts(indirect, x);
      t.fail("family " + std::to_string(n) + " differs on " + x.str() +
             (real ? " (confirmed)" : " (not confirmed by simulation)"));
    }
  }
  return t.done(std::to_string(trials) + " random normalized families agree");
}

std::vector<DetBuchi> round_trip_sources() {
  Rng rng(77);
  std::vector<DetBuchi> out;
  for (int n = 0; n < 30; ++n) out.push_back(random_measure_zero_buchi(rng, 6));
  return out;
}

Outcome round_trip() {
  Tally t;
  auto sources = round_trip_sources();
  for (std::size_t n = 0; n < sources.size(); ++n) {
    NormalizedFamily fam = normalize(family_from_buchi(sources[n]));
    BuchiVerdict v = buchi_equiv(buchi_from_family_indirect(fam), sources[n]);
    if (!v.holds) {
      t.fail("automaton " + std::to_string(n) + " differs on " + v.counterexample->str());
    }
  }
  return t.done(std::to_string(sources.size()) + " measure-zero Büchi automata round-trip");
}

DetMuller random_muller(Rng& rng, int max_states) {
  Dfa m = random_binary_dfa(rng, max_states);
  Condensation c = scc_condensation(m);
  std::bernoulli_distribution coin(0.5);
  std::vector<std::vector<int>> table;
  for (const auto& comp : c.components) {
    if (coin(rng)) {
      std::vector<int> set = comp;
      std::sort(set.begin(), set.end());
      table.push_back(set);
    }
  }
  std::uniform_int_distribution<int> state(0, m.num_states() - 1);
  for (int extra = 0; extra < 2; ++extra) {
    std::vector<int> set{state(rng), state(rng)};
    std::sort(set.begin(), set.end());
    set.erase(std::unique(set.begin(), set.end()), set.end());
    table.push_back(set);
  }
  return DetMuller(m, table);
}

Outcome measure_agreement() {
  Tally t;
  Rng rng(9);
  int positive = 0;
  const int trials = 120;
  for (int n = 0; n < trials; ++n) {
    DetBuchi b = random_buchi(rng, 8);
    Rational mb = buchi_measure(b);
    t.expect(is_measure_zero_buchi(b) == (mb == 0), "büchi " + std::to_string(n));
    t.expect(muller_measure(buchi_to_muller(b)) == mb,
             "buchi_to_muller changes the measure of büchi " + std::to_string(n));
    DetMuller m = random_muller(rng, 8);
    Rational mm = muller_measure(m);
    t.expect(is_measure_zero_muller(m) == (mm == 0), "muller " + std::to_string(n));
    positive += (mb > 0) + (mm > 0);
  }
  return t.done(std::to_string(trials) + " Büchi and " + std::to_string(trials) +
                " Muller automata, " + std::to_string(positive) + " of positive measure");
}

Outcome dominated_convergence() {
  Tally t;
  auto sources = round_trip_sources();
  int worst = 0;
  for (std::size_t n = 0; n < sources.size(); ++n) {
    AutomaticFamily fam = family_from_buchi(sources[n]);
    Rational limit = buchi_measure(sources[n]);
    Rational previous = 2;
    std::optional<int> reached;
    for (int k = 0; k <= 64; ++k) {
      Rational m = slice_measure(fam, Word(k, '0'));
      t.expect(m <= previous, "slices increase at k=" + std::to_string(k));
      t.expect(m >= limit, "slice below the ω-measure at k=" + std::to_string(k));
      if (!reached && m <= limit + power_of_half(8)) reached = k;
      previous = m;
    }
    if (reached) {
      worst = std::max(worst, *reached);
      continue;
    }
    int k = 65;
    while (k <= 1024 && slice_measure(fam, Word(k, '0')) > limit + power_of_half(8)) ++k;
    t.fail("monotone and bounded below for all " + std::to_string(sources.size()) +
           ", but automaton " + std::to_string(n) + " first gets within 2^-8 at k=" +
           (k > 1024 ? std::string(">1024") : std::to_string(k)) + " > 64");
  }
  return t.done("nonincreasing and within 2^-8 of the limit by k=" + std::to_string(worst));
}

std::vector<bool> can_reach(const Dfa& m, const std::vector<bool>& targets) {
  std::vector<bool> reach = targets;
  for (bool changed = true; changed;) {
    changed = false;
    for (int q = 0; q < m.num_states(); ++q) {
      if (reach[q]) continue;
      for (Symbol s = 0; s < m.alphabet_size(); ++s) {
        if (reach[m.next(q, s)]) {
          reach[q] = true;
          changed = true;
          break;
        }
      }
    }
  }
  return reach;
}

std::vector<bool> leaf_states(const Dfa& m) {
  Condensation c = scc_condensation(m);
  std::vector<bool> leaf(m.num_states(), false);
  for (int comp : c.leaves) {
    for (int q : c.components[comp]) leaf[q] = true;
  }
  return leaf;
}

Outcome synthesis() {
  Tally t;
  Rng rng(31);
  int made = 0;
  while (made < 60) {
    Dfa m = random_dfa(rng, 1, std::uniform_int_distribution<int>(2, 8)(rng));
    std::vector<bool> targets(m.num_states());
    std::bernoulli_distribution coin(0.3);
    for (int q = 0; q < m.num_states(); ++q) targets[q] = coin(rng);
    auto reach = can_reach(m, targets);
    if (std::find(reach.begin(), reach.end(), false) != reach.end()) continue;
    ++made;
    Block w = synthesize_universal_word(m, targets);
    for (int q = 0; q < m.num_states(); ++q) {
      t.expect(run_visits(m, q, w, targets), "target word misses from a state");
    }
    std::vector<bool> leaves = leaf_states(m);
    Block trap = synthesize_universal_word(m, leaves);
    for (int q = 0; q < m.num_states(); ++q) {
      t.expect(leaves[m.run(q, trap)], "leaf word does not trap every state");
    }
  }
  return t.done(std::to_string(made) + " automata, every state driven through the targets and trapped in a leaf");
}

Outcome leaf_trapping() {
  Tally t;
  Rng rng(5);
  Word enumeration;
  for (const auto& w : words_up_to(8)) enumeration += w;
  Block input = word_to_block(enumeration);
  const int trials = 25;
  for (int n = 0; n < trials; ++n) {
    Dfa m = random_dfa(rng, 1, std::uniform_int_distribution<int>(2, 6)(rng));
    Condensation c = scc_condensation(m);
    int q = m.start();
    std::size_t entered = input.size();
    for (std::size_t p = 0; p <= input.size(); ++p) {
      if (c.is_leaf(c.component_of[q])) {
        entered = p;
        break;
      }
      if (p < input.size()) q = m.next(q, input[p]);
    }
    if (entered == input.size() && !c.is_leaf(c.component_of[q])) {
      t.fail("fsm " + std::to_string(n) + " never reaches a leaf");
      continue;
    }
    const auto& leaf = c.components[c.component_of[q]];
    std::vector<bool> seen(m.num_states(), false);
    seen[q] = true;
    for (std::size_t p = entered; p < input.size(); ++p) {
      q = m.next(q, input[p]);
      seen[q] = true;
    }
    for (int s : leaf) {
      t.expect(seen[s], "fsm " + std::to_string(n) + " skips leaf state " + std::to_string(s));
    }
  }
  return t.done(std::to_string(trials) + " FSMs trapped by the length-8 enumeration, leaves fully visited");
}

Outcome no_universal() {
  Tally t;
  AutomaticFamily candidate = art_even_zeros();
  NoUniversalResult r = demonstrate_no_universal(normalize(candidate));
  t.expect(covers(r.family, r.witness), "new family misses " + r.witness.str());
  t.expect(!covers(candidate, r.witness), "candidate covers " + r.witness.str());
  return t.done("witness " + r.witness.str() + " escapes the even-zeros ART");
}

bool is_factor(const Word& w, const Word& text) { return text.find(w) != Word::npos; }

Outcome up_level() {
  Tally t;
  auto sequences = up_sequences(2, 3);
  for (const auto& x : sequences) {
    Word w = shortest_absent_factor(x);
    std::size_t n = w.size();
    std::size_t v = x.period().size();
    std::size_t window = x.prefix().size() + v * ((n + v - 1) / v + 2);
    Word text = x.take(2 * window);
    t.expect(!w.empty() && !is_factor(w, text), x.str() + ": " + w + " occurs");
    for (const auto& smaller : words_up_to(static_cast<int>(n))) {
      if (!smaller.empty() && shortlex_less(smaller, w)) {
        t.expect(is_factor(smaller, text), x.str() + ": " + smaller + " is absent too");
      }
    }
    AutomaticFamily fam = art_from_forbidden_word(w);
    t.expect(covers(fam, x), x.str() + " is not covered");
    Rational base = 1 - power_of_half(static_cast<unsigned>(n));
    for (int k = 1; k <= 6; ++k) {
      Rational m = slice_measure(fam, Word(n * k, '0'));
      t.expect(m <= pow(base, k), x.str() + ": bound fails at k=" + std::to_string(k));
    }
  }
  return t.done(std::to_string(sequences.size()) + " UP sequences, absent factors verified and covered");
}

Outcome renormalization() {
  Tally t;
  std::vector<AutomaticFamily> families{art_even_zeros()};
  Rng rng(404);
  while (families.size() < 11) {
    families.push_back(family_from_buchi(random_measure_zero_buchi(rng, 4)));
  }
  for (std::size_t n = 0; n < families.size(); ++n) {
    const std::string who = n == 0 ? "even zeros" : "random ART " + std::to_string(n);
    RenormalizedFamily r = renormalize_exponential(families[n]);
    const std::size_t d = r.forbidden.size();
    if (d == 0) {
      t.expect(is_empty(r.family.relation()), who + ": empty forbidden word, nonempty slices");
      continue;
    }
    Rational base = 1 - power_of_half(static_cast<unsigned>(d));
    for (std::size_t k = 1; k <= 4; ++k) {
      Rational m = slice_measure(r.family, Word(d * k, '0'));
      t.expect(pow(m, static_cast<unsigned>(d)) <= pow(base, static_cast<unsigned>(d * k)),
               who + ": bound fails at |j|=" + std::to_string(d * k));
    }
    DetBuchi original = *is_art(families[n]).covering;
    DetBuchi result = *is_art(r.family).covering;
    BuchiVerdict sub = buchi_contains(original, result);
    t.expect(sub.holds && r.subsumption.holds, who + ": covering region not subsumed");
  }
  return t.done("even zeros and 10 random ARTs bounded for |j| <= 4d and subsumed");
}

Outcome empirical_oracle() {
  Tally t;
  std::vector<std::vector<Word>> finite{
      {"0"}, {"1"}, {"00", "11"}, {"0", "01"}, {"010", "011", "1"},
      {"0000", "1111", "0101"}, {""}, {"10", "110", "1110"}};
  for (const auto& words : finite) {
    Dfa l = finite_language(words);
    for (int depth = 5; depth <= 8; ++depth) {
      t.expect(empirical_cylinder_measure(l, depth) == cylinder_measure(l),
               "finite language disagrees at depth " + std::to_string(depth));
    }
  }
  t.expect(cylinder_measure(finite_language({})) == 0, "empty language");
  Rng rng(11);
  for (int n = 0; n < 50; ++n) {
    Dfa l = random_binary_dfa(rng, 6);
    Rational exact = cylinder_measure(l);
    Rational previous = 0;
    for (int depth = 0; depth <= 14; ++depth) {
      Rational e = empirical_cylinder_measure(l, depth);
      t.expect(e >= previous, "empirical value decreases for dfa " + std::to_string(n));
      t.expect(e <= exact, "empirical value exceeds exact for dfa " + std::to_string(n));
      previous = e;
    }
  }
  return t.done("finite languages exact, 50 random DFAs bounded and monotone to depth 14");
}

Outcome compiler_soundness() {
  Tally t;
  Rng rng(1234);
  FormulaOracle oracle(random_relation(rng, 3));
  FormulaGenerator gen(rng);
  std::size_t tuples = 0;
  for (int n = 0; n < 30; ++n) {
    FormulaPtr f = gen.generate(2);
    FormulaCheck c = check_formula(oracle, *f);
    tuples += c.tuples;
    t.expect(c.disagreements == 0, to_string(*f) + " disagrees at " + c.first_failure);
  }
  return t.done("30 formulas agree with brute force on " + std::to_string(tuples) + " tuples");
}

}  // namespace

int main(int argc, char** argv) {
  std::set<std::size_t> known;
  for (int a = 1; a + 1 < argc; a += 2) {
    if (std::string(argv[a]) == "--known-failure") known.insert(std::strtoul(argv[a + 1], nullptr, 10));
  }
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"even-zeros separation", even_zeros_separation},
      {"direct and indirect constructions agree", direct_matches_indirect},
      {"Büchi to family round trip", round_trip},
      {"structural and exact measures agree", measure_agreement},
      {"slice measures converge to the ω-measure", dominated_convergence},
      {"universal word synthesis", synthesis},
      {"enumeration prefix traps in a leaf", leaf_trapping},
      {"no universal ART", no_universal},
      {"UP sequences are not random", up_level},
      {"exponential renormalization", renormalization},
      {"empirical measure oracle", empirical_oracle},
      {"first-order compiler soundness", compiler_soundness},
  };
  int failures = 0;
  for (std::size_t n = 0; n < criteria.size(); ++n) {
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[n].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::ostringstream line;
    line.precision(2);
    const bool expected_failure = known.count(n + 1) > 0;
    line << std::fixed << (o.pass ? "PASS" : "FAIL") << "  " << n + 1 << ". "
         << criteria[n].first << ": " << o.detail << " (" << seconds << "s)";
    if (expected_failure) line << (o.pass ? " [listed as known failure]" : " [known failure]");
    std::cout << line.str() << std::endl;
    failures += o.pass == expected_failure;
  }
  return failures == 0 ? 0 : 1;
}
