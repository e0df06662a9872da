#include "autorand/text_format.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "autorand/errors.hpp"

namespace autorand {
namespace {

std::string_view trim_view(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::string_view> fields(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (pos < s.size()) {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) {
      ++pos;
    }
    std::size_t begin = pos;
    while (pos < s.size() && !std::isspace(static_cast<unsigned char>(s[pos]))) {
      ++pos;
    }
    if (pos > begin) out.push_back(s.substr(begin, pos - begin));
  }
  return out;
}

[[noreturn]] void fail(int line, const std::string& what) {
  throw InputError("line " + std::to_string(line) + ": " + what);
}

int to_int(std::string_view s, int line) {
  int value = 0;
  auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || end != s.data() + s.size() || value < 0) {
    fail(line, "expected a nonnegative integer, got '" + std::string(s) + "'");
  }
  return value;
}

std::vector<int> int_list(const std::vector<std::string_view>& f,
                          std::size_t from, int line) {
  std::vector<int> out;
  for (std::size_t k = from; k < f.size(); ++k) out.push_back(to_int(f[k], line));
  return out;
}

void sort_unique(std::vector<int>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

struct Line {
  int number;
  std::string_view text;
};

std::vector<Line> content_lines(std::string_view text, int first_line = 1) {
  std::vector<Line> out;
  int number = first_line;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = trim_view(text.substr(pos, end - pos));
    if (!line.empty() && line.front() != '#') out.push_back({number, line});
    ++number;
    pos = end + 1;
  }
  return out;
}

AutomatonDocument parse_lines(const std::vector<Line>& lines) {
  AutomatonDocument doc;
  bool seen_type = false, seen_tracks = false, seen_states = false,
       seen_start = false, seen_accept = false;
  struct RawTransition {
    int line;
    int from;
    std::string symbol;
    int to;
  };
  std::vector<RawTransition> raw;
  std::vector<std::pair<int, std::vector<int>>> raw_sets;
  for (const auto& [number, text] : lines) {
    auto colon = text.find(':');
    if (colon == std::string_view::npos) fail(number, "expected 'key: value'");
    std::string key(trim_view(text.substr(0, colon)));
    auto f = fields(text.substr(colon + 1));
    auto once = [&](bool& seen) {
      if (seen) fail(number, "duplicate key '" + key + "'");
      seen = true;
    };
    if (key == "type") {
      once(seen_type);
      if (f.size() != 1) fail(number, "type takes one value");
      if (f[0] == "dfa") doc.kind = AutomatonKind::kDfa;
      else if (f[0] == "nfa") doc.kind = AutomatonKind::kNfa;
      else if (f[0] == "buchi") doc.kind = AutomatonKind::kBuchi;
      else if (f[0] == "muller") doc.kind = AutomatonKind::kMuller;
      else fail(number, "unknown type '" + std::string(f[0]) + "'");
    } else if (key == "tracks") {
      once(seen_tracks);
      if (f.size() != 1) fail(number, "tracks takes one value");
      doc.tracks = to_int(f[0], number);
      if (doc.tracks < 1 || doc.tracks > 4) fail(number, "tracks must be 1..4");
    } else if (key == "states") {
      once(seen_states);
      if (f.size() != 1) fail(number, "states takes one value");
      doc.states = to_int(f[0], number);
      if (doc.states < 1) fail(number, "at least one state is required");
    } else if (key == "start") {
      once(seen_start);
      doc.start = int_list(f, 0, number);
    } else if (key == "accept") {
      once(seen_accept);
      doc.accept = int_list(f, 0, number);
    } else if (key == "accept-set") {
      raw_sets.emplace_back(number, int_list(f, 0, number));
    } else if (key == "delta") {
      if (f.size() != 3) fail(number, "delta takes 'state symbol state'");
      raw.push_back({number, to_int(f[0], number), std::string(f[1]),
                     to_int(f[2], number)});
    } else {
      fail(number, "unknown key '" + key + "'");
    }
  }
  if (!seen_type) throw InputError("missing 'type:'");
  if (!seen_states) throw InputError("missing 'states:'");
  if (!seen_tracks) doc.tracks = 1;
  if (!seen_start) throw InputError("missing 'start:'");
  const int first_line = lines.empty() ? 1 : lines.front().number;
  if (doc.kind == AutomatonKind::kMuller) {
    if (seen_accept) fail(first_line, "muller automata use 'accept-set:'");
  } else if (!raw_sets.empty()) {
    fail(raw_sets.front().first, "'accept-set:' is only valid for muller");
  }
  if (doc.kind != AutomatonKind::kNfa && doc.start.size() != 1) {
    fail(first_line, "deterministic automata need exactly one start state");
  }
  if (doc.start.empty()) fail(first_line, "no start state");
  if ((doc.kind == AutomatonKind::kBuchi || doc.kind == AutomatonKind::kMuller) &&
      doc.tracks != 1) {
    fail(first_line, "omega-automata read one track");
  }
  auto check_state = [&](int q, int line) {
    if (q >= doc.states) {
      fail(line, "state " + std::to_string(q) + " out of range");
    }
  };
  for (int q : doc.start) check_state(q, first_line);
  for (int q : doc.accept) check_state(q, first_line);
  for (auto& [line, set] : raw_sets) {
    for (int q : set) check_state(q, line);
    doc.accept_sets.push_back(set);
  }
  Alphabet alphabet(doc.tracks);
  for (const auto& t : raw) {
    check_state(t.from, t.line);
    check_state(t.to, t.line);
    Symbol s;
    try {
      s = alphabet.parse(t.symbol);
    } catch (const InputError& e) {
      fail(t.line, e.what());
    }
    doc.delta.push_back({t.from, s, t.to});
  }
  if (doc.kind != AutomatonKind::kNfa) {
    auto sorted = doc.delta;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t k = 1; k < sorted.size(); ++k) {
      if (sorted[k].from == sorted[k - 1].from &&
          sorted[k].symbol == sorted[k - 1].symbol) {
        throw InputError("state " + std::to_string(sorted[k].from) +
                         " has two transitions on " +
                         alphabet.format(sorted[k].symbol));
      }
    }
  }
  doc.canonicalize();
  return doc;
}

}  // namespace

std::string_view kind_name(AutomatonKind kind) {
  switch (kind) {
    case AutomatonKind::kDfa: return "dfa";
    case AutomatonKind::kNfa: return "nfa";
    case AutomatonKind::kBuchi: return "buchi";
    case AutomatonKind::kMuller: return "muller";
  }
  return "dfa";
}

void AutomatonDocument::canonicalize() {
  sort_unique(start);
  sort_unique(accept);
  for (auto& set : accept_sets) sort_unique(set);
  std::sort(accept_sets.begin(), accept_sets.end());
  accept_sets.erase(std::unique(accept_sets.begin(), accept_sets.end()),
                    accept_sets.end());
  std::sort(delta.begin(), delta.end());
  delta.erase(std::unique(delta.begin(), delta.end()), delta.end());
}

AutomatonDocument parse_automaton(std::string_view text) {
  return parse_lines(content_lines(text));
}

std::string print_automaton(AutomatonDocument doc) {
  doc.canonicalize();
  Alphabet alphabet(doc.tracks);
  std::ostringstream out;
  auto list = [&](const std::vector<int>& v) {
    for (int q : v) out << ' ' << q;
  };
  out << "type: " << kind_name(doc.kind) << '\n';
  out << "tracks: " << doc.tracks << '\n';
  out << "states: " << doc.states << '\n';
  out << "start:";
  list(doc.start);
  out << '\n';
  if (doc.kind == AutomatonKind::kMuller) {
    for (const auto& set : doc.accept_sets) {
      out << "accept-set:";
      list(set);
      out << '\n';
    }
  } else {
    out << "accept:";
    list(doc.accept);
    out << '\n';
  }
  for (const auto& t : doc.delta) {
    out << "delta: " << t.from << ' ' << alphabet.format(t.symbol) << ' '
        << t.to << '\n';
  }
  return out.str();
}

Dfa to_dfa(const AutomatonDocument& doc) {
  if (doc.kind == AutomatonKind::kNfa) {
    return determinize(to_nfa(doc));
  }
  Alphabet alphabet(doc.tracks);
  const int sigma = alphabet.size();
  // The sink is only added when some transition is missing.
  const bool total = doc.delta.size() ==
                     static_cast<std::size_t>(doc.states) * sigma;
  const int n = total ? doc.states : doc.states + 1;
  const int sink = doc.states;
  std::vector<int> delta(static_cast<std::size_t>(n) * sigma, sink);
  for (const auto& t : doc.delta) {
    delta[static_cast<std::size_t>(t.from) * sigma + t.symbol] = t.to;
  }
  std::vector<bool> accepting(n, false);
  for (int q : doc.accept) accepting[q] = true;
  return Dfa(doc.tracks, n, doc.start.front(), std::move(accepting),
             std::move(delta));
}

Nfa to_nfa(const AutomatonDocument& doc) {
  if (doc.kind == AutomatonKind::kMuller) {
    throw InputError("a muller document cannot be read as an nfa");
  }
  std::vector<bool> accepting(doc.states, false);
  for (int q : doc.accept) accepting[q] = true;
  Nfa out(doc.tracks, doc.states, doc.start, std::move(accepting));
  for (const auto& t : doc.delta) out.add_transition(t.from, t.symbol, t.to);
  return out;
}

DetBuchi to_buchi(const AutomatonDocument& doc) {
  if (doc.kind == AutomatonKind::kNfa || doc.kind == AutomatonKind::kMuller) {
    throw InputError("expected a deterministic buchi automaton, got " +
                     std::string(kind_name(doc.kind)));
  }
  if (doc.tracks != 1) throw InputError("omega-automata read one track");
  return DetBuchi(to_dfa(doc));
}

DetMuller to_muller(const AutomatonDocument& doc) {
  if (doc.kind != AutomatonKind::kMuller) {
    throw InputError("expected a muller automaton, got " +
                     std::string(kind_name(doc.kind)));
  }
  AutomatonDocument plain = doc;
  plain.kind = AutomatonKind::kDfa;
  plain.accept.clear();
  return DetMuller(to_dfa(plain), doc.accept_sets);
}

AutomatonDocument document_of(const Dfa& a, AutomatonKind kind) {
  AutomatonDocument doc;
  doc.kind = kind;
  doc.tracks = a.arity();
  doc.states = a.num_states();
  doc.start = {a.start()};
  for (int q = 0; q < a.num_states(); ++q) {
    if (a.accepting(q)) doc.accept.push_back(q);
    for (int s = 0; s < a.alphabet_size(); ++s) {
      doc.delta.push_back({q, static_cast<Symbol>(s), a.next(q, s)});
    }
  }
  return doc;
}

AutomatonDocument document_of(const DetBuchi& m) {
  return document_of(m.machine(), AutomatonKind::kBuchi);
}

AutomatonDocument document_of(const DetMuller& m) {
  AutomatonDocument doc = document_of(m.machine(), AutomatonKind::kMuller);
  doc.accept.clear();
  doc.accept_sets = m.table();
  return doc;
}

AutomaticFamily parse_family(std::string_view text) {
  std::vector<Line> index_lines, relation_lines;
  std::vector<Line>* target = nullptr;
  bool seen_index = false, seen_relation = false;
  for (const auto& line : content_lines(text)) {
    if (line.text == "[index]") {
      if (seen_index) fail(line.number, "duplicate [index] block");
      seen_index = true;
      target = &index_lines;
    } else if (line.text == "[relation]") {
      if (seen_relation) fail(line.number, "duplicate [relation] block");
      seen_relation = true;
      target = &relation_lines;
    } else if (target == nullptr) {
      fail(line.number, "expected [index] or [relation]");
    } else {
      target->push_back(line);
    }
  }
  if (!seen_index) throw InputError("family document has no [index] block");
  if (!seen_relation) {
    throw InputError("family document has no [relation] block");
  }
  AutomatonDocument index = parse_lines(index_lines);
  AutomatonDocument relation = parse_lines(relation_lines);
  if (index.tracks != 1) throw InputError("[index] must have tracks: 1");
  if (relation.tracks != 2) throw InputError("[relation] must have tracks: 2");
  return AutomaticFamily(to_dfa(index), to_dfa(relation));
}

std::string print_family(const AutomaticFamily& fam) {
  return "[index]\n" + print_automaton(document_of(fam.index())) +
         "[relation]\n" + print_automaton(document_of(fam.relation()));
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace autorand
