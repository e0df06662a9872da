// autorand: command-line access to the automatic randomness test pipeline.
//
// Every command prints `key: value` lines (or one JSON object with --json)
// and exits 0 on success, 1 on a negative verdict and 2 on bad input.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "autorand/errors.hpp"
#include "autorand/family.hpp"
#include "autorand/logic.hpp"
#include "autorand/measure.hpp"
#include "autorand/omega.hpp"
#include "autorand/randomness.hpp"
#include "autorand/text_format.hpp"

namespace {

using namespace autorand;
using Json = nlohmann::ordered_json;

constexpr int kOk = 0;
constexpr int kNegative = 1;
constexpr int kInputError = 2;

class Output {
 public:
  explicit Output(bool json) : json_(json) {}

  void field(const std::string& key, const std::string& text) {
    if (json_) {
      doc_[key] = text;
    } else {
      std::cout << key << ": " << text << '\n';
    }
  }

  void field(const std::string& key, const std::string& text, Json value) {
    if (json_) {
      doc_[key] = std::move(value);
    } else {
      std::cout << key << ": " << text << '\n';
    }
  }

  void measure(const std::string& key, const Rational& r) {
    field(key, to_fraction(r) + " (" + to_decimal(r) + ")",
          Json{{"fraction", to_fraction(r)}, {"decimal", to_decimal(r)}});
  }

  // Free-form text line; in JSON mode it joins the "lines" array.
  void line(const std::string& text) {
    if (json_) {
      doc_["lines"].push_back(text);
    } else {
      std::cout << text << '\n';
    }
  }

  // A printable document, written to `out` when given and to stdout otherwise.
  void document(const std::string& key, const std::string& text,
                const std::string& out) {
    if (!out.empty()) {
      std::ofstream file(out, std::ios::binary);
      if (!file) throw InputError("cannot write '" + out + "'");
      file << text;
      field(key, out);
      return;
    }
    if (json_) {
      doc_[key] = text;
    } else {
      std::cout << text;
    }
  }

  void flush() {
    if (json_) std::cout << doc_.dump(2) << '\n';
  }

 private:
  bool json_;
  Json doc_ = Json::object();
};

std::string yes_no(bool b) { return b ? "yes" : "no"; }

AutomatonDocument load_automaton(const std::string& path) {
  return parse_automaton(read_file(path));
}

AutomaticFamily load_family(const std::string& path) {
  AutomaticFamily fam = parse_family(read_file(path));
  return fam;
}

NormalizedFamily as_normalized(const AutomaticFamily& fam) {
  if (auto certified = NormalizedFamily::certify(fam)) return *certified;
  return normalize(fam);
}

std::string state_list(const std::vector<int>& states) {
  std::string out;
  for (int q : states) out += (out.empty() ? "" : " ") + std::to_string(q);
  return out;
}

std::string block_text(const Alphabet& alphabet, const Block& block) {
  if (alphabet.arity() == 1) {
    Word w = block_to_word(block);
    return w.empty() ? "ε" : w;
  }
  return block.empty() ? "ε" : format_block(alphabet, block);
}

std::string word_text(const Word& w) { return w.empty() ? "ε" : w; }

struct Options {
  bool json = false;
  std::string out;
  std::string family;
  std::string automaton;
  std::string other;
  std::string index;
  std::string sequence;
  std::string word;
  std::string method = "indirect";
  std::string formula;
  std::vector<std::string> relations;
  std::vector<std::string> tracks;
  int depth = 12;
  bool serial = false;
};

int cmd_validate(const Options& o, Output& out) {
  AutomaticFamily fam = load_family(o.family);
  ValidationReport r = validate(fam);
  out.field("valid", yes_no(r.ok()));
  for (const auto& f : r.failures) out.field("failure", f);
  if (r.counterexample) {
    out.field("witness", block_text(fam.relation().alphabet(), *r.counterexample));
  }
  return r.ok() ? kOk : kNegative;
}

int cmd_slice(const Options& o, Output& out) {
  AutomaticFamily fam = load_family(o.family);
  Dfa s = slice(fam, o.index == "ε" ? "" : o.index);
  out.document("slice", print_automaton(document_of(s)), o.out);
  return kOk;
}

int cmd_normalize(const Options& o, Output& out) {
  NormalizedFamily v = normalize(load_family(o.family));
  out.field("shift", std::to_string(v.shift()), v.shift());
  out.document("family", print_family(v.family()), o.out);
  return kOk;
}

int cmd_measure_cylinder(const Options& o, Output& out) {
  AutomatonDocument doc = load_automaton(o.automaton);
  Dfa l = to_dfa(doc);
  if (l.arity() != 1) throw InputError("cylinder measures need one track");
  out.measure("measure", cylinder_measure(l));
  return kOk;
}

int cmd_measure_omega(const Options& o, Output& out) {
  AutomatonDocument doc = load_automaton(o.automaton);
  if (doc.kind == AutomatonKind::kMuller) {
    out.measure("measure", muller_measure(to_muller(doc)));
  } else {
    out.measure("measure", buchi_measure(to_buchi(doc)));
  }
  return kOk;
}

int cmd_leaf_components(const Options& o, Output& out) {
  AutomatonDocument doc = load_automaton(o.automaton);
  Dfa m = doc.kind == AutomatonKind::kMuller ? to_muller(doc).machine()
                                              : to_dfa(doc);
  if (m.arity() != 1) throw InputError("leaf analysis needs one track");
  AbsorptionProfile p = absorption_probabilities(m);
  Json leaves = Json::array();
  for (std::size_t k = 0; k < p.leaves.size(); ++k) {
    leaves.push_back({{"states", p.leaves[k]},
                      {"probability", to_fraction(p.probability[k])}});
    out.line("leaf: " + state_list(p.leaves[k]) + " probability: " +
             to_fraction(p.probability[k]) + " (" +
             to_decimal(p.probability[k]) + ")");
  }
  out.field("leaves", std::to_string(p.leaves.size()), leaves);
  return kOk;
}

int cmd_is_measure_zero(const Options& o, Output& out) {
  AutomatonDocument doc = load_automaton(o.automaton);
  if (doc.kind == AutomatonKind::kMuller) {
    DetMuller m = to_muller(doc);
    bool zero = is_measure_zero_muller(m);
    out.field("measure-zero", yes_no(zero));
    out.measure("measure", muller_measure(m));
    return zero ? kOk : kNegative;
  }
  DetBuchi b = to_buchi(doc);
  auto leaf = accepting_leaf(b);
  out.field("measure-zero", yes_no(!leaf));
  if (leaf) out.field("witness", "leaf " + state_list(*leaf), *leaf);
  out.measure("measure", buchi_measure(b));
  return leaf ? kNegative : kOk;
}

int cmd_art_check(const Options& o, Output& out) {
  ArtVerdict v = is_art(load_family(o.family));
  out.field("ART", yes_no(v.is_art));
  if (v.core_witness) {
    out.field("witness", word_text(*v.core_witness));
    out.field("certificate", "core word; every slice keeps measure >= 2^-" +
                                 std::to_string(v.core_witness->size()));
    return kNegative;
  }
  out.field("shift", std::to_string(v.normalized->shift()),
            v.normalized->shift());
  if (v.accepting_leaf) {
    out.field("certificate", "accepting leaf " + state_list(*v.accepting_leaf));
    out.measure("measure", buchi_measure(*v.covering));
  } else {
    out.field("certificate", "no leaf component of the covering automaton "
                             "contains an accepting state");
  }
  out.field("covering-states", std::to_string(v.covering->num_states()),
            v.covering->num_states());
  if (!o.out.empty()) {
    out.document("covering", print_automaton(document_of(*v.covering)), o.out);
  }
  return v.is_art ? kOk : kNegative;
}

int cmd_mart_check(const Options& o, Output& out) {
  AutomaticFamily fam = load_family(o.family);
  MartReport r = o.serial ? is_mart_bounded_serial(fam, o.depth)
                          : is_mart_bounded(fam, o.depth);
  std::string label = "MART(≤" + std::to_string(o.depth) + ")";
  out.field(label, yes_no(r.holds()));
  out.field("indices-checked", std::to_string(r.measures.size()),
            r.measures.size());
  if (r.holds()) return kOk;
  const IndexMeasure& bad = r.measures[*r.violation];
  Rational bound = power_of_half(static_cast<unsigned>(bad.index.size()));
  out.field("witness", word_text(bad.index), bad.index);
  out.field("measure", to_fraction(bad.measure) + " > " + to_fraction(bound),
            Json{{"fraction", to_fraction(bad.measure)},
                 {"bound", to_fraction(bound)}});
  return kNegative;
}

int cmd_build_buchi(const Options& o, Output& out) {
  NormalizedFamily v = as_normalized(load_family(o.family));
  DetBuchi b = o.method == "direct" ? buchi_from_family_direct(v)
                                    : buchi_from_family_indirect(v);
  out.document("buchi", print_automaton(document_of(b)), o.out);
  return kOk;
}

int cmd_art_from_buchi(const Options& o, Output& out) {
  DetBuchi b = to_buchi(load_automaton(o.automaton));
  out.document("family", print_family(family_from_buchi(b)), o.out);
  return kOk;
}

int cmd_accepts(const Options& o, Output& out) {
  AutomatonDocument doc = load_automaton(o.automaton);
  UPSequence x = UPSequence::parse(o.sequence);
  bool yes = doc.kind == AutomatonKind::kMuller
                 ? muller_accepts(to_muller(doc), x)
                 : buchi_accepts(to_buchi(doc), x);
  out.field("sequence", x.str());
  out.field("accepted", yes_no(yes));
  return yes ? kOk : kNegative;
}

int cmd_covers(const Options& o, Output& out) {
  UPSequence x = UPSequence::parse(o.sequence);
  bool yes = covers(load_family(o.family), x);
  out.field("sequence", x.str());
  out.field("covered", yes_no(yes));
  return yes ? kOk : kNegative;
}

int cmd_absent_factor(const Options& o, Output& out) {
  UPSequence x = UPSequence::parse(o.sequence);
  out.field("sequence", x.str());
  out.field("absent-factor", shortest_absent_factor(x));
  return kOk;
}

int cmd_art_from_word(const Options& o, Output& out) {
  out.document("family", print_family(art_from_forbidden_word(o.word)), o.out);
  return kOk;
}

int cmd_art_from_up(const Options& o, Output& out) {
  UPSequence x = UPSequence::parse(o.sequence);
  out.document("family", print_family(art_from_up(x)), o.out);
  return kOk;
}

int cmd_renormalize(const Options& o, Output& out) {
  RenormalizedFamily r = renormalize_exponential(load_family(o.family));
  out.field("forbidden", word_text(r.forbidden), r.forbidden);
  out.field("gamma", r.gamma.str(),
            Json{{"base", to_fraction(r.gamma.base)}, {"degree", r.gamma.degree}});
  for (const auto& m : r.checked) {
    out.line("bound " + m.index + ": (" + to_fraction(m.measure) + ")^" +
             std::to_string(r.gamma.degree) + " <= (" +
             to_fraction(r.gamma.base) + ")^" + std::to_string(m.index.size()));
  }
  out.field("subsumes", yes_no(r.subsumption.holds));
  out.document("family", print_family(r.family), o.out);
  return r.subsumption.holds ? kOk : kNegative;
}

int cmd_equiv(const Options& o, Output& out) {
  AutomatonDocument a = load_automaton(o.automaton);
  AutomatonDocument b = load_automaton(o.other);
  bool omega = a.kind == AutomatonKind::kBuchi || b.kind == AutomatonKind::kBuchi;
  if (a.kind == AutomatonKind::kMuller || b.kind == AutomatonKind::kMuller) {
    throw InputError("equiv compares dfa or buchi documents");
  }
  if (omega) {
    BuchiVerdict v = buchi_equiv(to_buchi(a), to_buchi(b));
    out.line(v.holds ? "equivalent" : "not equivalent");
    if (!v.holds) out.field("witness", v.counterexample->str());
    return v.holds ? kOk : kNegative;
  }
  Dfa da = to_dfa(a), db = to_dfa(b);
  if (da.arity() != db.arity()) throw InputError("track counts differ");
  auto w = difference_witness(da, db);
  if (!w) w = difference_witness(db, da);
  out.line(w ? "not equivalent" : "equivalent");
  if (w) out.field("witness", block_text(da.alphabet(), *w));
  return w ? kNegative : kOk;
}

int cmd_no_universal(const Options& o, Output& out) {
  NormalizedFamily candidate = as_normalized(load_family(o.family));
  NoUniversalResult r = demonstrate_no_universal(candidate);
  out.field("index", word_text(Word(r.index_length, '0')),
            Word(r.index_length, '0'));
  out.field("escape", word_text(r.escape), r.escape);
  out.field("witness", r.witness.str());
  out.field("covered-by-new", "yes");
  out.field("covered-by-candidate", "no");
  out.document("family", print_family(r.family), o.out);
  return kOk;
}

int cmd_fo_compile(const Options& o, Output& out) {
  FormulaPtr f = parse_formula(read_file(o.formula));
  Environment env;
  for (const auto& binding : o.relations) {
    auto eq = binding.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw InputError("--rel expects NAME=path, got '" + binding + "'");
    }
    std::string name = binding.substr(0, eq);
    std::string path = binding.substr(eq + 1);
    std::string text = read_file(path);
    if (text.find("[relation]") != std::string::npos) {
      AutomaticFamily fam = parse_family(text);
      env.insert_or_assign(name, fam.relation());
    } else {
      env.insert_or_assign(name, to_dfa(parse_automaton(text)));
    }
  }
  std::vector<std::string> tracks = o.tracks;
  Dfa result = tracks.empty() ? [&] {
    CompiledRelation r = compile(*f, env);
    tracks = r.tracks;
    return r.automaton;
  }()
                              : compile(*f, env, tracks);
  std::string names;
  for (const auto& t : tracks) names += (names.empty() ? "" : " ") + t;
  out.field("variables", names, tracks);
  out.field("states", std::to_string(result.num_states()), result.num_states());
  out.document("automaton", print_automaton(document_of(result)), o.out);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Automatic randomness tests: families, Büchi automata, measures"};
  app.require_subcommand(1);
  Options o;
  app.add_flag("--json", o.json, "Print one JSON object instead of text");

  std::map<CLI::App*, int (*)(const Options&, Output&)> handlers;
  auto sub = [&](const std::string& name, const std::string& help,
                 int (*handler)(const Options&, Output&)) {
    CLI::App* s = app.add_subcommand(name, help);
    s->fallthrough();
    handlers[s] = handler;
    return s;
  };

  sub("validate", "Check a family document", cmd_validate)
      ->add_option("family", o.family)->required();
  auto* slice_cmd = sub("slice", "Automaton for the slice U_i", cmd_slice);
  slice_cmd->add_option("family", o.family)->required();
  slice_cmd->add_option("index", o.index)->required();
  slice_cmd->add_option("--out", o.out);
  auto* norm = sub("normalize", "Equivalent normalized family", cmd_normalize);
  norm->add_option("family", o.family)->required();
  norm->add_option("--out", o.out);
  sub("measure-cylinder", "Exact measure of the cylinder [L]", cmd_measure_cylinder)
      ->add_option("automaton", o.automaton)->required();
  sub("measure-omega", "Exact measure of a Büchi or Muller language", cmd_measure_omega)
      ->add_option("automaton", o.automaton)->required();
  sub("leaf-components", "Leaf components and absorption probabilities",
      cmd_leaf_components)
      ->add_option("automaton", o.automaton)->required();
  sub("is-measure-zero", "Structural measure-zero test", cmd_is_measure_zero)
      ->add_option("automaton", o.automaton)->required();
  auto* art = sub("art-check", "Decide whether a family is an ART", cmd_art_check);
  art->add_option("family", o.family)->required();
  art->add_option("--out", o.out, "Write the covering automaton here");
  auto* mart = sub("mart-check", "Bounded MART check", cmd_mart_check);
  mart->add_option("family", o.family)->required();
  mart->add_option("--depth", o.depth, "Largest index length checked")
      ->check(CLI::Range(0, 24));
  mart->add_flag("--serial", o.serial, "Use the single-threaded path");
  auto* build = sub("build-buchi", "Covering Büchi automaton", cmd_build_buchi);
  build->add_option("family", o.family)->required();
  build->add_option("--method", o.method)
      ->check(CLI::IsMember({"direct", "indirect"}));
  build->add_option("--out", o.out);
  auto* from_buchi = sub("art-from-buchi", "Family covering a Büchi language",
                         cmd_art_from_buchi);
  from_buchi->add_option("automaton", o.automaton)->required();
  from_buchi->add_option("--out", o.out);
  auto* acc = sub("accepts", "Run an ω-automaton on u.v", cmd_accepts);
  acc->add_option("automaton", o.automaton)->required();
  acc->add_option("sequence", o.sequence)->required();
  auto* cov = sub("covers", "Is u.v in the covering region", cmd_covers);
  cov->add_option("family", o.family)->required();
  cov->add_option("sequence", o.sequence)->required();
  sub("absent-factor", "Shortest word missing from u.v", cmd_absent_factor)
      ->add_option("sequence", o.sequence)->required();
  auto* from_word = sub("art-from-word", "ART of sequences avoiding w", cmd_art_from_word);
  from_word->add_option("word", o.word)->required();
  from_word->add_option("--out", o.out);
  auto* from_up = sub("art-from-up", "ART covering exactly u.v", cmd_art_from_up);
  from_up->add_option("sequence", o.sequence)->required();
  from_up->add_option("--out", o.out);
  auto* renorm = sub("renormalize", "Exponentially bounded subsuming ART",
                     cmd_renormalize);
  renorm->add_option("family", o.family)->required();
  renorm->add_option("--out", o.out);
  auto* eq = sub("equiv", "Language equivalence of two automata", cmd_equiv);
  eq->add_option("a", o.automaton)->required();
  eq->add_option("b", o.other)->required();
  auto* nu = sub("no-universal", "Sequence escaping a candidate universal ART",
                 cmd_no_universal);
  nu->add_option("family", o.family)->required();
  nu->add_option("--out", o.out);
  auto* fo = sub("fo-compile", "Compile a first-order formula", cmd_fo_compile);
  fo->add_option("formula", o.formula)->required();
  fo->add_option("--rel", o.relations, "NAME=path binding (automaton or family)");
  fo->add_option("--tracks", o.tracks, "Track order")->delimiter(',');
  fo->add_option("--out", o.out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  Output out(o.json);
  try {
    for (auto& [command, handler] : handlers) {
      if (command->parsed()) {
        int code = handler(o, out);
        out.flush();
        return code;
      }
    }
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const PreconditionError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const NotAnArt& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kNegative;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  }
  return kInputError;
}
