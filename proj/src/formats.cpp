#include "ltbt/formats.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include <json.hpp>

#include "ltbt/errors.hpp"

namespace ltbt {

uint64_t SplitMix64::next() {
  uint64_t z = (state += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

uint64_t SplitMix64::below(uint64_t n) { return next() % n; }

double SplitMix64::unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// Scanner for one .aut line.
struct LineScanner {
  std::string_view s;
  size_t pos = 0;
  int line;

  LineScanner(std::string_view text, int line_) : s(text), line(line_) {}

  void skip_space() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool at_end() {
    skip_space();
    return pos >= s.size();
  }
  void expect(char c) {
    skip_space();
    if (pos >= s.size() || s[pos] != c)
      throw ParseError(line, std::string("expected '") + c + "'");
    ++pos;
  }
  long integer() {
    skip_space();
    size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == start) throw ParseError(line, "expected a number");
    return std::stol(std::string(s.substr(start, pos - start)));
  }
  // Quoted label, or a bare token up to the next comma.
  std::string label() {
    skip_space();
    if (pos < s.size() && s[pos] == '"') {
      size_t close = s.find('"', pos + 1);
      if (close == std::string_view::npos) throw ParseError(line, "unterminated label quote");
      std::string out(s.substr(pos + 1, close - pos - 1));
      pos = close + 1;
      return out;
    }
    size_t comma = s.find(',', pos);
    if (comma == std::string_view::npos) throw ParseError(line, "expected label");
    std::string_view raw = trim(s.substr(pos, comma - pos));
    if (raw.empty()) throw ParseError(line, "empty label");
    for (char c : raw)
      if (c == '(' || c == ')' || c == '"')
        throw ParseError(line, "unquoted label contains a reserved character");
    pos = comma;
    return std::string(raw);
  }
};

}  // namespace

Lts parse_aut(std::string_view text) {
  std::vector<std::string_view> lines;
  size_t start = 0;
  while (start <= text.size()) {
    size_t nl = text.find('\n', start);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(start, nl - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    start = nl + 1;
  }

  long init = -1, ntrans = -1, nstates = -1;
  std::vector<std::tuple<State, std::string, State>> transitions;
  bool seen_header = false;
  for (size_t i = 0; i < lines.size(); ++i) {
    std::string_view body = trim(lines[i]);
    if (body.empty()) continue;
    int line_no = static_cast<int>(i + 1);
    if (!seen_header) {
      if (body.substr(0, 3) != "des") throw ParseError(line_no, "expected 'des' header");
      LineScanner sc(body.substr(3), line_no);
      sc.expect('(');
      init = sc.integer();
      sc.expect(',');
      ntrans = sc.integer();
      sc.expect(',');
      nstates = sc.integer();
      sc.expect(')');
      if (!sc.at_end()) throw ParseError(line_no, "trailing characters after header");
      seen_header = true;
      continue;
    }
    LineScanner sc(body, line_no);
    sc.expect('(');
    long from = sc.integer();
    sc.expect(',');
    std::string label = sc.label();
    sc.expect(',');
    long to = sc.integer();
    sc.expect(')');
    if (!sc.at_end()) throw ParseError(line_no, "trailing characters after transition");
    transitions.emplace_back(static_cast<State>(from), std::move(label), static_cast<State>(to));
  }
  if (!seen_header) throw ParseError(1, "missing 'des' header");
  if (static_cast<long>(transitions.size()) != ntrans)
    throw CountMismatch("header announces " + std::to_string(ntrans) + " transitions, body has " +
                        std::to_string(transitions.size()));
  return make_lts(static_cast<int>(nstates), static_cast<State>(init), transitions);
}

std::string write_aut(const Lts& lts) {
  std::vector<std::tuple<State, std::string, State>> rows;
  rows.reserve(lts.transitions.size());
  for (const auto& t : lts.transitions)
    rows.emplace_back(t.src, lts.alphabet.name(t.label), t.dst);
  std::sort(rows.begin(), rows.end());
  std::ostringstream os;
  os << "des (" << lts.initial << ", " << rows.size() << ", " << lts.num_states << ")\n";
  for (const auto& [src, label, dst] : rows)
    os << "(" << src << ", \"" << label << "\", " << dst << ")\n";
  return os.str();
}

namespace {

using nlohmann::json;

int line_of_offset(std::string_view text, size_t byte) {
  int line = 1;
  for (size_t i = 0; i < byte && i < text.size(); ++i)
    if (text[i] == '\n') ++line;
  return line;
}

}  // namespace

Dmts parse_dmts(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(line_of_offset(text, e.byte), e.what());
  }
  if (!doc.is_object()) throw ParseError(1, "expected a JSON object");
  for (const auto& [key, value] : doc.items()) {
    (void)value;
    if (key != "states" && key != "initial" && key != "may" && key != "must")
      throw ParseError(1, "unknown field '" + key + "'");
  }
  if (!doc.contains("states") || !doc["states"].is_number_integer())
    throw ParseError(1, "missing integer field 'states'");
  if (!doc.contains("initial") || !doc["initial"].is_array())
    throw ParseError(1, "missing list field 'initial'");
  if (!doc.contains("may") || !doc["may"].is_array())
    throw ParseError(1, "missing list field 'may'");
  if (!doc.contains("must") || !doc["must"].is_array())
    throw ParseError(1, "missing list field 'must'");

  int num_states = doc["states"].get<int>();
  std::vector<State> initial;
  for (const auto& v : doc["initial"]) {
    if (!v.is_number_integer()) throw ParseError(1, "'initial' entries must be integers");
    initial.push_back(v.get<State>());
  }
  std::vector<std::tuple<State, std::string, State>> may;
  for (const auto& row : doc["may"]) {
    if (!row.is_array() || row.size() != 3 || !row[0].is_number_integer() ||
        !row[1].is_string() || !row[2].is_number_integer())
      throw ParseError(1, "'may' entries must be [state, label, state]");
    may.emplace_back(row[0].get<State>(), row[1].get<std::string>(), row[2].get<State>());
  }
  std::vector<std::pair<State, std::vector<std::pair<std::string, State>>>> must;
  for (const auto& row : doc["must"]) {
    if (!row.is_array() || row.size() != 2 || !row[0].is_number_integer() || !row[1].is_array())
      throw ParseError(1, "'must' entries must be [state, [[label, state], ...]]");
    std::vector<std::pair<std::string, State>> branches;
    for (const auto& br : row[1]) {
      if (!br.is_array() || br.size() != 2 || !br[0].is_string() || !br[1].is_number_integer())
        throw ParseError(1, "must branches must be [label, state]");
      branches.emplace_back(br[0].get<std::string>(), br[1].get<State>());
    }
    must.emplace_back(row[0].get<State>(), std::move(branches));
  }
  return make_dmts(num_states, std::move(initial), may, must);
}

std::string write_dmts(const Dmts& dmts) {
  std::vector<std::tuple<State, std::string, State>> mays;
  for (const auto& t : dmts.may) mays.emplace_back(t.src, dmts.alphabet.name(t.label), t.dst);
  std::sort(mays.begin(), mays.end());

  std::vector<std::pair<State, std::vector<std::pair<std::string, State>>>> musts;
  for (const auto& m : dmts.must) {
    std::vector<std::pair<std::string, State>> branches;
    for (auto [lab, t] : m.branches) branches.emplace_back(dmts.alphabet.name(lab), t);
    std::sort(branches.begin(), branches.end());
    musts.emplace_back(m.src, std::move(branches));
  }
  std::sort(musts.begin(), musts.end());

  json doc;
  doc["states"] = dmts.num_states;
  doc["initial"] = dmts.initial;
  doc["may"] = json::array();
  for (const auto& [src, label, dst] : mays) doc["may"].push_back({src, label, dst});
  doc["must"] = json::array();
  for (const auto& [src, branches] : musts) {
    json bs = json::array();
    for (const auto& [label, dst] : branches) bs.push_back({label, dst});
    doc["must"].push_back({src, std::move(bs)});
  }
  return doc.dump(2) + "\n";
}

namespace {

std::string label_name(int i) {
  if (i < 26) return std::string(1, static_cast<char>('a' + i));
  return "l" + std::to_string(i);
}

// Restriction to the states reachable from the roots along `edges`, with a
// dense remap preserving index order.
std::vector<State> reachable_remap(int num_states, const std::vector<State>& roots,
                                   const std::vector<Transition>& edges) {
  std::vector<bool> seen(num_states, false);
  std::vector<State> queue;
  for (State r : roots)
    if (!seen[r]) {
      seen[r] = true;
      queue.push_back(r);
    }
  for (size_t head = 0; head < queue.size(); ++head) {
    State s = queue[head];
    for (const auto& e : edges)
      if (e.src == s && !seen[e.dst]) {
        seen[e.dst] = true;
        queue.push_back(e.dst);
      }
  }
  std::vector<State> remap(num_states, -1);
  State next = 0;
  for (State s = 0; s < num_states; ++s)
    if (seen[s]) remap[s] = next++;
  return remap;
}

}  // namespace

Lts random_lts(const GenParams& params) {
  SplitMix64 rng(params.seed);
  int span = params.max_states - params.min_states + 1;
  int n = params.min_states + static_cast<int>(rng.below(static_cast<uint64_t>(span)));
  if (n < 1) n = 1;

  Lts lts;
  lts.num_states = n;
  lts.initial = 0;
  for (int i = 0; i < params.alphabet_size; ++i) lts.alphabet.intern(label_name(i));
  for (State s = 0; s < n; ++s)
    for (Label a = 0; a < params.alphabet_size; ++a)
      for (State t = 0; t < n; ++t)
        if (rng.unit() < params.may_density) lts.transitions.push_back({s, a, t});

  auto remap = reachable_remap(n, {0}, lts.transitions);
  Lts pruned;
  pruned.num_states = 0;
  for (State s = 0; s < n; ++s)
    if (remap[s] >= 0) ++pruned.num_states;
  pruned.initial = remap[0];
  pruned.alphabet = lts.alphabet;
  for (const auto& t : lts.transitions)
    if (remap[t.src] >= 0 && remap[t.dst] >= 0)
      pruned.transitions.push_back({remap[t.src], t.label, remap[t.dst]});
  return validate_lts(std::move(pruned));
}

Dmts random_dmts(const GenParams& params) {
  SplitMix64 rng(params.seed);
  int span = params.max_states - params.min_states + 1;
  int n = params.min_states + static_cast<int>(rng.below(static_cast<uint64_t>(span)));
  if (n < 1) n = 1;

  Dmts d;
  d.num_states = n;
  for (int i = 0; i < params.alphabet_size; ++i) d.alphabet.intern(label_name(i));

  int initial_count = 1 + static_cast<int>(rng.below(2));
  if (initial_count > n) initial_count = n;
  for (State s = 0; s < initial_count; ++s) d.initial.push_back(s);

  for (State s = 0; s < n; ++s)
    for (Label a = 0; a < params.alphabet_size; ++a)
      for (State t = 0; t < n; ++t)
        if (rng.unit() < params.may_density) d.may.push_back({s, a, t});

  std::vector<std::vector<std::pair<Label, State>>> mays_at(n);
  for (const auto& t : d.may) mays_at[t.src].emplace_back(t.label, t.dst);

  int must_span = params.max_musts_per_state - params.min_musts_per_state + 1;
  int branch_span = params.max_branch - params.min_branch + 1;
  for (State s = 0; s < n; ++s) {
    if (mays_at[s].empty()) continue;
    int count = params.min_musts_per_state +
                static_cast<int>(rng.below(static_cast<uint64_t>(must_span)));
    for (int m = 0; m < count; ++m) {
      int want = params.min_branch +
                 static_cast<int>(rng.below(static_cast<uint64_t>(branch_span)));
      if (want > static_cast<int>(mays_at[s].size())) want = static_cast<int>(mays_at[s].size());
      if (want < 1) want = 1;
      MustTransition must{s, {}};
      std::vector<int> picked;
      while (static_cast<int>(picked.size()) < want) {
        int idx = static_cast<int>(rng.below(mays_at[s].size()));
        if (std::find(picked.begin(), picked.end(), idx) == picked.end()) picked.push_back(idx);
      }
      std::sort(picked.begin(), picked.end());
      for (int idx : picked) must.branches.push_back(mays_at[s][idx]);
      d.must.push_back(std::move(must));
    }
  }

  auto remap = reachable_remap(n, d.initial, d.may);
  Dmts pruned;
  // (musts whose source survives keep all branches: branch targets are may
  // targets of the source, hence reachable as well)
  pruned.num_states = 0;
  for (State s = 0; s < n; ++s)
    if (remap[s] >= 0) ++pruned.num_states;
  pruned.alphabet = d.alphabet;
  for (State s : d.initial) pruned.initial.push_back(remap[s]);
  for (const auto& t : d.may)
    if (remap[t.src] >= 0 && remap[t.dst] >= 0)
      pruned.may.push_back({remap[t.src], t.label, remap[t.dst]});
  for (const auto& m : d.must) {
    if (remap[m.src] < 0) continue;
    MustTransition must{remap[m.src], {}};
    for (auto [lab, t] : m.branches) must.branches.emplace_back(lab, remap[t]);
    pruned.must.push_back(std::move(must));
  }
  return validate_dmts(std::move(pruned));
}

Lts unfold_state(const Lts& lts, uint64_t seed) {
  SplitMix64 rng(seed);
  Lts out = lts;
  State original = static_cast<State>(rng.below(static_cast<uint64_t>(lts.num_states)));
  State copy = out.num_states++;
  std::vector<Transition> extra;
  for (const auto& t : lts.transitions)
    if (t.src == original) extra.push_back({copy, t.label, t.dst});
  for (auto& t : out.transitions)
    if (t.dst == original && rng.below(2) == 0) t.dst = copy;
  out.transitions.insert(out.transitions.end(), extra.begin(), extra.end());
  // Self-loops on the original keep their source; re-rooting the copy's own
  // loop targets preserves bisimilarity either way (copy mirrors original).
  return validate_lts(std::move(out));
}

}  // namespace ltbt
