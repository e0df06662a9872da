#include "autorand/randomness.hpp"

#include <omp.h>

#include <algorithm>
#include <unordered_set>

#include "autorand/errors.hpp"
#include "autorand/measure.hpp"

namespace autorand {
namespace {

constexpr Symbol column(Letter x, Letter i) {
  return static_cast<Symbol>(x) * 3 + static_cast<Symbol>(i);
}

std::vector<Word> index_words(const AutomaticFamily& fam, int depth) {
  std::vector<Word> out;
  for (auto& w : words_up_to(depth)) {
    if (fam.index().accepts_word(w)) out.push_back(std::move(w));
  }
  return out;
}

std::optional<std::size_t> first_violation(
    const std::vector<IndexMeasure>& measures) {
  for (std::size_t k = 0; k < measures.size(); ++k) {
    const auto& m = measures[k];
    if (m.measure > power_of_half(static_cast<unsigned>(m.index.size()))) {
      return k;
    }
  }
  return std::nullopt;
}

void require_mart_input(const AutomaticFamily& fam, int depth) {
  if (depth < 0) throw InputError("negative depth");
  ValidationReport report = validate(fam);
  if (!report.ok()) throw PreconditionError(report.failures.front());
}

// Index automaton for the language u v*.
Dfa up_index(const UPSequence& x) {
  const Word& u = x.prefix();
  const Word& v = x.period();
  const int positions = static_cast<int>(u.size() + v.size());
  const int sink = positions;
  std::vector<int> delta(static_cast<std::size_t>(positions + 1) * 2, sink);
  std::vector<bool> accepting(positions + 1, false);
  accepting[u.size()] = true;
  for (int p = 0; p < positions; ++p) {
    int next;
    char expected;
    if (p < static_cast<int>(u.size())) {
      expected = u[p];
      next = p + 1;
    } else {
      int k = p - static_cast<int>(u.size());
      expected = v[k];
      next = static_cast<int>(u.size()) + (k + 1) % static_cast<int>(v.size());
    }
    delta[p * 2 + (expected == '1' ? 1 : 0)] = next;
  }
  return minimize(Dfa(1, positions + 1, 0, std::move(accepting),
                      std::move(delta)));
}

}  // namespace

ArtVerdict is_art(const AutomaticFamily& fam) {
  ValidationReport report = validate(fam);
  if (!report.ok()) throw PreconditionError(report.failures.front());
  ArtVerdict verdict;
  try {
    verdict.normalized = normalize(fam);
  } catch (const NotAnArt& e) {
    verdict.core_witness = e.witness();
    return verdict;
  }
  verdict.covering = buchi_from_family_indirect(*verdict.normalized);
  verdict.accepting_leaf = accepting_leaf(*verdict.covering);
  verdict.is_art = !verdict.accepting_leaf.has_value();
  return verdict;
}

MartReport is_mart_bounded(const AutomaticFamily& fam, int depth) {
  require_mart_input(fam, depth);
  std::vector<Word> indices = index_words(fam, depth);
  MartReport report;
  report.depth = depth;
  report.measures.resize(indices.size());
  const long count = static_cast<long>(indices.size());
#pragma omp parallel for schedule(dynamic)
  for (long k = 0; k < count; ++k) {
    report.measures[k].index = indices[k];
    report.measures[k].measure = cylinder_measure(slice(fam, indices[k]));
  }
  report.violation = first_violation(report.measures);
  return report;
}

MartReport is_mart_bounded_serial(const AutomaticFamily& fam, int depth) {
  require_mart_input(fam, depth);
  MartReport report;
  report.depth = depth;
  for (auto& i : index_words(fam, depth)) {
    Rational mu = cylinder_measure(slice(fam, i));
    report.measures.push_back({std::move(i), std::move(mu)});
  }
  report.violation = first_violation(report.measures);
  return report;
}

bool covers(const AutomaticFamily& fam, const UPSequence& x) {
  return buchi_accepts(buchi_from_family_indirect(normalize(fam)), x);
}

Word shortest_absent_factor(const UPSequence& x) {
  for (std::size_t n = 1;; ++n) {
    std::size_t repeats = (n + x.period().size() - 1) / x.period().size() + 2;
    Word window = x.prefix();
    for (std::size_t r = 0; r < repeats; ++r) window += x.period();
    std::unordered_set<Word> factors;
    for (std::size_t k = 0; k + n <= window.size(); ++k) {
      factors.insert(window.substr(k, n));
    }
    for (auto& w : words_of_length(static_cast<int>(n))) {
      if (!factors.count(w)) return w;
    }
  }
}

DisjunctivityReport is_prefix_disjunctive(const Word& w, int k) {
  if (!is_binary_word(w)) throw InputError("word letters must be 0 or 1");
  DisjunctivityReport report;
  for (int n = 1; n <= k; ++n) {
    std::unordered_set<Word> factors;
    for (std::size_t p = 0; p + n <= w.size(); ++p) {
      factors.insert(w.substr(p, n));
    }
    for (auto& candidate : words_of_length(n)) {
      if (!factors.count(candidate)) {
        report.missing = candidate;
        return report;
      }
    }
    report.coverage = n;
  }
  report.disjunctive = true;
  return report;
}

DisjunctivityReport disjunctivity(const UPSequence& x) {
  DisjunctivityReport report;
  report.missing = shortest_absent_factor(x);
  report.coverage = static_cast<int>(report.missing->size()) - 1;
  return report;
}

AutomaticFamily art_from_forbidden_word(const Word& w) {
  if (w.empty()) throw InputError("forbidden word must be nonempty");
  if (!is_binary_word(w)) throw InputError("word letters must be 0 or 1");
  const int d = static_cast<int>(w.size());
  // State k: the longest suffix read so far that is a prefix of w has length
  // k < d. State d is the sink.
  auto advance = [&](int k, char c) {
    Word seen = w.substr(0, k) + c;
    for (int len = std::min(d, k + 1); len > 0; --len) {
      if (seen.compare(seen.size() - len, len, w, 0, len) == 0) return len;
    }
    return 0;
  };
  const int sigma = Alphabet(2).size();
  std::vector<int> delta(static_cast<std::size_t>(d + 1) * sigma, d);
  std::vector<bool> accepting(d + 1, true);
  accepting[d] = false;
  for (int k = 0; k < d; ++k) {
    for (char c : {'0', '1'}) {
      Letter x = c == '0' ? Letter::kZero : Letter::kOne;
      delta[k * sigma + column(x, Letter::kZero)] = advance(k, c);
    }
  }
  return AutomaticFamily(
      builtin(Builtin::kIn0Star),
      minimize(Dfa(2, d + 1, 0, std::move(accepting), std::move(delta))));
}

AutomaticFamily art_from_up(const UPSequence& x) {
  static const FormulaPtr kSingleton = parse_formula("(and (equal x i) (I i))");
  static const std::vector<std::string> kTracks{"x", "i"};
  Dfa index = up_index(x);
  Environment env{{"I", index}};
  return AutomaticFamily(index, compile(*kSingleton, env, kTracks));
}

AutomaticFamily art_even_zeros() {
  // Index (00)*: parity states 0 and 1, sink 2.
  Dfa index(1, 3, 0, {true, false, false}, {1, 2, 0, 2, 2, 2});
  // Relation: equal lengths, index all zeros of even length, x has 0 at every
  // odd position.
  const int sigma = Alphabet(2).size();
  std::vector<int> delta(3 * sigma, 2);
  delta[0 * sigma + column(Letter::kZero, Letter::kZero)] = 1;
  delta[0 * sigma + column(Letter::kOne, Letter::kZero)] = 1;
  delta[1 * sigma + column(Letter::kZero, Letter::kZero)] = 0;
  Dfa relation(2, 3, 0, {true, false, false}, std::move(delta));
  return AutomaticFamily(minimize(index), minimize(relation));
}

Word forbidden_word_for_buchi(const DetBuchi& original) {
  if (!is_measure_zero_buchi(original)) {
    throw PreconditionError("Büchi automaton has an accepting leaf component");
  }
  DetBuchi m = simplify_buchi(original);
  Condensation cond = scc_condensation(m.machine());
  std::vector<bool> targets(m.num_states(), false);
  for (int c : cond.leaves) {
    for (int q : cond.components[c]) targets[q] = true;
  }
  return block_to_word(synthesize_universal_word(m.machine(), targets));
}

bool Gamma::bounds(const Rational& measure, std::size_t length) const {
  return pow(measure, degree) <= pow(base, static_cast<unsigned>(length));
}

std::string Gamma::str() const {
  return "(" + to_fraction(base) + ")^(1/" + std::to_string(degree) + ")";
}

RenormalizedFamily renormalize_exponential(const AutomaticFamily& fam) {
  ArtVerdict verdict = is_art(fam);
  if (verdict.core_witness) throw NotAnArt(*verdict.core_witness);
  if (!verdict.is_art) {
    throw PreconditionError("covering region has positive measure");
  }
  Word w = forbidden_word_for_buchi(*verdict.covering);
  const unsigned d = w.empty() ? 1 : static_cast<unsigned>(w.size());

  // J = (0^d)^+
  std::vector<int> jdelta(static_cast<std::size_t>(d + 2) * 2, d + 1);
  std::vector<bool> jaccept(d + 2, false);
  for (unsigned k = 0; k < d; ++k) jdelta[k * 2] = k + 1;
  jdelta[d * 2] = 1;
  jaccept[d] = true;
  Dfa index = minimize(Dfa(1, static_cast<int>(d + 2), 0, std::move(jaccept),
                           std::move(jdelta)));

  Dfa relation = Dfa::empty_language(2);
  Gamma gamma{0, 1};
  if (!w.empty()) {
    std::array<int, 1> on_index{1};
    relation = minimize(intersect(art_from_forbidden_word(w).relation(),
                                  retrack(index, on_index, 2)));
    gamma = Gamma{1 - power_of_half(d), d};
  }
  RenormalizedFamily out{AutomaticFamily(index, relation), w, gamma, {}, {}};
  for (unsigned length = d; length <= 4 * d; length += d) {
    Word j(length, '0');
    Rational mu = cylinder_measure(slice(out.family, j));
    if (!gamma.bounds(mu, length)) {
      throw Error("renormalized slice " + j + " exceeds its exponential bound");
    }
    out.checked.push_back({std::move(j), std::move(mu)});
  }
  out.subsumption = buchi_contains(
      *verdict.covering, buchi_from_family_indirect(normalize(out.family)));
  return out;
}

}  // namespace autorand
