#include "symred/io.hpp"
#include "symred/errors.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

namespace symred {

namespace {

struct Lines {
  std::string_view text;
  std::size_t at = 0;
  int number = 0;

  bool next(std::string_view& line) {
    if (at >= text.size()) return false;
    std::size_t end = text.find('\n', at);
    if (end == std::string_view::npos) end = text.size();
    line = text.substr(at, end - at);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    at = end + 1;
    ++number;
    return true;
  }
};

std::vector<std::string_view> tokens(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

[[noreturn]] void fail(int line, const std::string& what) {
  throw InputError("line " + std::to_string(line) + ": " + what);
}

long long to_int(std::string_view tok, int line) {
  long long v = 0;
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || p != tok.data() + tok.size()) fail(line, "expected an integer, got '" + std::string(tok) + "'");
  return v;
}

int to_count(std::string_view tok, int line, long long hi = 1LL << 30) {
  long long v = to_int(tok, line);
  if (v < 0 || v > hi) fail(line, "value " + std::string(tok) + " out of range");
  return static_cast<int>(v);
}

bool is_comment(std::string_view line) {
  auto t = line.find_first_not_of(" \t");
  return t == std::string_view::npos || line[t] == 'c' || line[t] == '%';
}

} // namespace

Cnf parse_dimacs(std::string_view text) {
  Lines in{text};
  std::string_view line;
  Cnf f;
  long long declared = -1;
  std::vector<int> clause;
  while (in.next(line)) {
    if (is_comment(line)) continue;
    auto t = tokens(line);
    if (t[0] == "p") {
      if (declared >= 0) fail(in.number, "second header");
      if (t.size() != 4 || t[1] != "cnf") fail(in.number, "expected 'p cnf <vars> <clauses>'");
      f.num_vars = to_count(t[2], in.number);
      declared = to_count(t[3], in.number);
      continue;
    }
    if (declared < 0) fail(in.number, "clause before header");
    for (auto tok : t) {
      long long l = to_int(tok, in.number);
      if (l == 0) {
        f.clauses.push_back(std::move(clause));
        clause.clear();
      } else {
        if (l > f.num_vars || -l > f.num_vars)
          fail(in.number, "literal " + std::string(tok) + " out of range 1.." + std::to_string(f.num_vars));
        clause.push_back(static_cast<int>(l));
      }
    }
  }
  if (declared < 0) throw InputError("missing 'p cnf' header");
  if (!clause.empty()) fail(in.number, "last clause not terminated by 0");
  if (static_cast<long long>(f.clauses.size()) != declared)
    fail(in.number, "header declares " + std::to_string(declared) + " clauses, found " +
                        std::to_string(f.clauses.size()));
  return f;
}

std::string write_dimacs(const Cnf& f) {
  std::ostringstream os;
  os << "p cnf " << f.num_vars << ' ' << f.clauses.size() << '\n';
  for (const auto& c : f.clauses) {
    for (int l : c) os << l << ' ';
    os << "0\n";
  }
  return os.str();
}

GraphFile parse_graph(std::string_view text) {
  Lines in{text};
  std::string_view line;
  GraphFile out;
  int n = -1;
  long long declared = 0;
  std::vector<std::pair<int, int>> colors;
  std::vector<std::pair<int, std::pair<int, int>>> edges;
  while (in.next(line)) {
    if (is_comment(line)) continue;
    auto t = tokens(line);
    if (t[0] == "p") {
      if (n >= 0) fail(in.number, "second header");
      if (t.size() != 4 || t[1] != "edge") fail(in.number, "expected 'p edge <V> <E>'");
      n = to_count(t[2], in.number);
      declared = to_count(t[3], in.number);
      continue;
    }
    if (n < 0) fail(in.number, "line before header");
    auto vertex = [&](std::string_view tok) {
      int v = to_count(tok, in.number);
      if (v < 1 || v > n) fail(in.number, "vertex " + std::string(tok) + " out of range 1.." + std::to_string(n));
      return v - 1;
    };
    if (t[0] == "n" && t.size() == 3) {
      int v = vertex(t[1]);
      colors.emplace_back(v, to_count(t[2], in.number));
    } else if (t[0] == "e" && t.size() == 3) {
      int u = vertex(t[1]);
      edges.push_back({in.number, {u, vertex(t[2])}});
    } else if (t[0] == "v" && t.size() == 2) {
      int k = to_count(t[1], in.number);
      if (k > n) fail(in.number, "more variable vertices than vertices");
      out.var_vertices = k;
    } else {
      fail(in.number, "unrecognized line");
    }
  }
  if (n < 0) throw InputError("missing 'p edge' header");
  out.graph = ColoredGraph(n);
  for (auto [v, c] : colors) out.graph.set_color(v, c);
  for (const auto& [ln, e] : edges) {
    if (e.first == e.second) fail(ln, "loop at vertex " + std::to_string(e.first + 1));
    if (!out.graph.add_edge(e.first, e.second))
      fail(ln, "duplicate edge " + std::to_string(e.first + 1) + " " + std::to_string(e.second + 1));
  }
  if (static_cast<long long>(edges.size()) != declared)
    throw InputError("header declares " + std::to_string(declared) + " edges, found " + std::to_string(edges.size()));
  return out;
}

std::string write_graph(const ColoredGraph& g, std::optional<int> var_vertices) {
  std::ostringstream os;
  os << "p edge " << g.order() << ' ' << g.edge_count() << '\n';
  if (var_vertices) os << "v " << *var_vertices << '\n';
  for (Vertex v = 0; v < g.order(); ++v)
    if (g.color(v) != 0) os << "n " << v + 1 << ' ' << g.color(v) << '\n';
  for (auto [u, v] : g.edges()) os << "e " << u + 1 << ' ' << v + 1 << '\n';
  return os.str();
}

std::vector<Var> parse_prefix(std::string_view text, int num_vars) {
  std::vector<Var> out;
  std::set<Var> seen;
  Lines in{text};
  std::string_view line;
  while (in.next(line)) {
    if (is_comment(line)) continue;
    std::string s(line);
    for (char& ch : s)
      if (ch == ',') ch = ' ';
    for (auto tok : tokens(s)) {
      long long v = to_int(tok, in.number);
      if (v < 1 || v > num_vars)
        fail(in.number, "prefix variable " + std::string(tok) + " out of range 1.." + std::to_string(num_vars));
      if (!seen.insert(static_cast<Var>(v - 1)).second) fail(in.number, "prefix variable " + std::string(tok) + " repeated");
      out.push_back(static_cast<Var>(v - 1));
    }
  }
  return out;
}

std::string write_prefix(const std::vector<Var>& prefix) {
  std::ostringstream os;
  for (std::size_t i = 0; i < prefix.size(); ++i) os << (i ? " " : "") << prefix[i] + 1;
  os << '\n';
  return os.str();
}

int literal(const Binding& b) {
  if (b.value < 0 || b.value > 1) throw InputError("non-Boolean value in output");
  return b.value ? b.var + 1 : -(b.var + 1);
}

std::string emit_outputs(const std::vector<PartialAssignment>& assignments, OutputFormat format, const Cnf& f) {
  std::ostringstream os;
  auto cubes = [&] {
    for (const auto& x : assignments) {
      os << 'a';
      for (const auto& b : x.bindings()) os << ' ' << literal(b);
      os << " 0\n";
    }
  };
  auto clauses = [&] {
    for (const auto& c : f.clauses) {
      for (int l : c) os << l << ' ';
      os << "0\n";
    }
  };
  switch (format) {
  case OutputFormat::count:
    os << assignments.size() << '\n';
    break;
  case OutputFormat::cubes:
    cubes();
    break;
  case OutputFormat::icnf:
    os << "p inccnf\n";
    clauses();
    cubes();
    break;
  case OutputFormat::sbp: {
    std::size_t lits = 0;
    for (const auto& x : assignments) lits += x.bindings().size();
    const std::size_t m = assignments.size();
    os << "p cnf " << static_cast<std::size_t>(f.num_vars) + m << ' ' << f.clauses.size() + lits + 1 << '\n';
    clauses();
    for (std::size_t i = 0; i < m; ++i) {
      long long s = f.num_vars + static_cast<long long>(i) + 1;
      for (const auto& b : assignments[i].bindings()) os << -s << ' ' << literal(b) << " 0\n";
    }
    for (std::size_t i = 0; i < m; ++i) os << f.num_vars + static_cast<long long>(i) + 1 << ' ';
    os << "0\n";
    break;
  }
  }
  return os.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, std::string_view data) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  out << data;
  if (!out) throw InputError("write failed: " + path);
}

} // namespace symred
