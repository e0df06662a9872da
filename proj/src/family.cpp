#include "autorand/family.hpp"

#include <array>

#include "autorand/errors.hpp"

namespace autorand {
namespace {

constexpr Symbol column(Letter x, Letter i) {
  return static_cast<Symbol>(x) * 3 + static_cast<Symbol>(i);
}

Letter bit(char c) { return c == '1' ? Letter::kOne : Letter::kZero; }

std::pair<Word, Word> as_pair(const Block& block) {
  auto words = deconvolve(block, 2);
  return {words[0], words[1]};
}

const std::string kX = "x";
const std::string kIndex = "i";

}  // namespace

AutomaticFamily::AutomaticFamily(Dfa index, Dfa relation)
    : index_(std::move(index)), relation_(std::move(relation)) {
  if (index_.arity() != 1) throw InputError("index automaton must have 1 track");
  if (relation_.arity() != 2) {
    throw InputError("relation automaton must have 2 tracks");
  }
}

bool AutomaticFamily::member(const Word& x, const Word& i) const {
  std::array<Word, 2> pair{x, i};
  return relation_.accepts(convolve(pair));
}

Environment family_environment(const AutomaticFamily& fam) {
  return {{"U", fam.relation()}, {"I", fam.index()}};
}

ValidationReport validate(const AutomaticFamily& fam) {
  ValidationReport report;
  if (auto bad = difference_witness(fam.relation(), well_padded(2))) {
    report.failures.push_back("relation accepts a block that is not well padded");
    report.counterexample = *bad;
    return report;
  }
  std::array<int, 1> on_index_track{1};
  Dfa supported = retrack(fam.index(), on_index_track, 2);
  if (auto bad = difference_witness(fam.relation(), supported)) {
    report.failures.push_back(
        "relation accepts a pair whose index is not in the index set");
    report.counterexample = *bad;
  }
  return report;
}

Dfa slice(const AutomaticFamily& fam, const Word& i) {
  if (!is_binary_word(i) || !fam.index().accepts_word(i)) {
    throw PreconditionError("index '" + i + "' is not in the index set");
  }
  const Dfa& rel = fam.relation();
  const int length = static_cast<int>(i.size());
  const int width = length + 1;
  const int n = rel.num_states() * width;
  // State (q, p): relation state q after p letters of x, p capped at |i|.
  auto id = [&](int q, int p) { return q * width + p; };
  std::vector<int> delta(static_cast<std::size_t>(n) * 2);
  std::vector<bool> accepting(n);
  for (int q = 0; q < rel.num_states(); ++q) {
    for (int p = 0; p <= length; ++p) {
      for (int a = 0; a < 2; ++a) {
        Letter x = a == 0 ? Letter::kZero : Letter::kOne;
        Letter idx = p < length ? bit(i[p]) : Letter::kPad;
        int target = rel.next(q, column(x, idx));
        delta[static_cast<std::size_t>(id(q, p)) * 2 + a] =
            id(target, std::min(p + 1, length));
      }
      int r = q;
      for (int rest = p; rest < length; ++rest) {
        r = rel.next(r, column(Letter::kPad, bit(i[rest])));
      }
      accepting[id(q, p)] = rel.accepting(r);
    }
  }
  return minimize(Dfa(1, n, id(rel.start(), 0), std::move(accepting),
                      std::move(delta)));
}

AutomaticFamily intersect_down(const AutomaticFamily& fam) {
  static const FormulaPtr kW = parse_formula(
      "(and (in_0star j)"
      "     (forall i (imp (and (I i) (len_leq i j))"
      "                    (exists y (and (U y i) (strict_prefix y x))))))");
  static const std::vector<std::string> kTracks{"x", "j"};
  Dfa w = compile(*kW, family_environment(fam), kTracks);
  return AutomaticFamily(builtin(Builtin::kIn0Star), std::move(w));
}

Dfa core_language(const AutomaticFamily& decreasing) {
  static const FormulaPtr kCore =
      parse_formula("(forall j (imp (in_0star j) (U x j)))");
  static const std::vector<std::string> kTracks{"x"};
  return compile(*kCore, family_environment(decreasing), kTracks);
}

Dfa shift_index(const Dfa& relation, int shift) {
  if (relation.arity() != 2) throw InputError("expected a 2-track relation");
  if (shift < 0) throw InputError("negative shift");
  const int width = shift + 1;
  const int sink = relation.num_states() * width;
  const int n = sink + 1;
  const int sigma = relation.alphabet_size();
  Alphabet alphabet(2);
  // State (q, k): k extra index zeros already fed beyond the input index.
  auto id = [&](int q, int k) { return q * width + k; };
  std::vector<int> delta(static_cast<std::size_t>(n) * sigma, sink);
  std::vector<bool> accepting(n, false);
  for (int q = 0; q < relation.num_states(); ++q) {
    for (int k = 0; k <= shift; ++k) {
      for (int s = 0; s < sigma; ++s) {
        Letter x = alphabet.letter(s, 0);
        Letter j = alphabet.letter(s, 1);
        int target = sink;
        if (j == Letter::kZero && k == 0) {
          target = id(relation.next(q, column(x, Letter::kZero)), 0);
        } else if (j == Letter::kPad && k < shift) {
          target = id(relation.next(q, column(x, Letter::kZero)), k + 1);
        } else if (j == Letter::kPad) {
          target = id(relation.next(q, column(x, Letter::kPad)), shift);
        }
        delta[static_cast<std::size_t>(id(q, k)) * sigma + s] = target;
      }
      int r = q;
      for (int owed = k; owed < shift; ++owed) {
        r = relation.next(r, column(Letter::kPad, Letter::kZero));
      }
      accepting[id(q, k)] = relation.accepting(r);
    }
  }
  Dfa raw(2, n, id(relation.start(), 0), std::move(accepting),
          std::move(delta));
  return minimize(intersect(raw, well_padded(2)));
}

LengthCertificate verify_length_condition(const AutomaticFamily& fam) {
  LengthCertificate cert;
  Dfa bad = intersect(fam.relation(), builtin(Builtin::kLenLeq));
  if (auto w = shortest_word(bad)) {
    cert.holds = false;
    cert.counterexample = as_pair(*w);
  }
  return cert;
}

bool has_unary_index(const AutomaticFamily& fam) {
  return equivalent(fam.index(), builtin(Builtin::kIn0Star));
}

std::optional<std::pair<Word, Word>> decreasing_violation(
    const AutomaticFamily& fam) {
  Dfa next = shift_index(fam.relation(), 1);
  if (auto w = difference_witness(next, fam.relation())) return as_pair(*w);
  return std::nullopt;
}

std::optional<NormalizedFamily> NormalizedFamily::certify(AutomaticFamily fam) {
  if (!validate(fam).ok() || !has_unary_index(fam) ||
      decreasing_violation(fam) || !verify_length_condition(fam).holds) {
    return std::nullopt;
  }
  return NormalizedFamily(std::move(fam), 0);
}

NormalizedFamily normalize(const AutomaticFamily& fam) {
  ValidationReport report = validate(fam);
  if (!report.ok()) throw PreconditionError(report.failures.front());
  AutomaticFamily w = intersect_down(fam);
  if (auto core = shortest_word(core_language(w))) {
    throw NotAnArt(block_to_word(*core));
  }
  // V_j = W_{j 0^{c+1}} with c the state count of the W relation.
  const int c = w.relation().num_states();
  AutomaticFamily shifted(builtin(Builtin::kIn0Star),
                          shift_index(w.relation(), c + 1));
  LengthCertificate lc = verify_length_condition(shifted);
  if (!lc.holds) {
    throw LengthConditionUnsatisfied(lc.counterexample->first,
                                     lc.counterexample->second);
  }
  if (auto bad = decreasing_violation(shifted)) {
    throw Error("shifted family is not decreasing at x=" + bad->first +
                " j=" + bad->second);
  }
  return NormalizedFamily(std::move(shifted), c + 1);
}

AutomaticFamily prefix_free_refine(const AutomaticFamily& fam) {
  static const FormulaPtr kRefined = parse_formula(
      "(and (U x i) (not (exists y (and (U y i) (strict_prefix y x)))))");
  static const std::vector<std::string> kTracks{kX, kIndex};
  return AutomaticFamily(fam.index(),
                         compile(*kRefined, family_environment(fam), kTracks));
}

Dfa union_language(const AutomaticFamily& fam) {
  return project(minimize(intersect(fam.relation(), well_padded(2))), 1);
}

}  // namespace autorand
