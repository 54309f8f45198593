#include "plumbing/graph_io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

namespace plumbing {

namespace {

struct Token {
  std::string_view text;
  std::size_t column;
};

std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    if (line[i] == '#') break;
    if (line[i] == ' ' || line[i] == '\t' || line[i] == '\r') {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r' && line[j] != '#') ++j;
    out.push_back({line.substr(i, j - i), i + 1});
    i = j;
  }
  return out;
}

std::int64_t parse_int(const Token& t, std::size_t line, bool allow_negative, const char* what) {
  std::int64_t value = 0;
  const char* first = t.text.data();
  const char* last = first + t.text.size();
  if (!t.text.empty() && t.text.front() == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last)
    throw ParseError(line, t.column, std::string("expected integer ") + what + ", got '" + std::string(t.text) + "'");
  if (!allow_negative && value < 0)
    throw ParseError(line, t.column, std::string(what) + " must be non-negative");
  return value;
}

struct PendingLink {
  char kind;
  Token first;
  Token second;
  std::size_t line;
};

}  // namespace

PlumbingGraph parse_graph(std::string_view text) {
  PlumbingGraph g;
  std::vector<PendingLink> links;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    ++line_no;
    const auto tokens = tokenize(text.substr(start, end - start));
    start = end + 1;
    if (tokens.empty()) {
      if (end == text.size()) break;
      continue;
    }
    const auto& head = tokens.front();
    if (head.text == "V") {
      if (tokens.size() != 4) throw ParseError(line_no, head.column, "expected 'V <id> <euler> <genus>'");
      const auto euler = parse_int(tokens[2], line_no, true, "euler number");
      const auto genus = parse_int(tokens[3], line_no, false, "genus");
      if (g.find(std::string(tokens[1].text)))
        throw ParseError(line_no, tokens[1].column, "duplicate vertex id '" + std::string(tokens[1].text) + "'");
      g.add_vertex(std::string(tokens[1].text), euler, genus);
    } else if (head.text == "E" || head.text == "A") {
      if (tokens.size() != 3)
        throw ParseError(line_no, head.column,
                         head.text == "E" ? "expected 'E <id> <id>'" : "expected 'A <id> <branch>'");
      links.push_back({head.text[0], tokens[1], tokens[2], line_no});
    } else {
      throw ParseError(line_no, head.column, "unknown record '" + std::string(head.text) + "'");
    }
    if (end == text.size()) break;
  }
  if (g.vertex_count() == 0) throw ParseError(line_no == 0 ? 1 : line_no, 1, "no vertices");

  auto lookup = [&](const Token& t, std::size_t line) {
    auto idx = g.find(std::string(t.text));
    if (!idx) throw ParseError(line, t.column, "unknown vertex '" + std::string(t.text) + "'");
    return *idx;
  };
  for (const auto& link : links) {
    if (link.kind == 'E') {
      const auto a = lookup(link.first, link.line);
      const auto b = lookup(link.second, link.line);
      if (a == b) throw ParseError(link.line, link.second.column, "loop edge");
      g.add_edge(a, b);
    } else {
      const auto v = lookup(link.first, link.line);
      const auto branch = parse_int(link.second, link.line, false, "branch label");
      if (branch < 1) throw ParseError(link.line, link.second.column, "branch label must be at least 1");
      g.add_arrow(v, static_cast<int>(branch));
    }
  }
  return g;
}

PlumbingGraph read_graph_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_graph(ss.str());
}

std::string serialize_graph(const PlumbingGraph& g) {
  std::ostringstream out;
  const auto order = g.sorted_vertex_indices();
  std::vector<std::size_t> rank(g.vertex_count());
  for (std::size_t i = 0; i < order.size(); ++i) rank[order[i]] = i;
  for (auto v : order) {
    const auto& vx = g.vertices()[v];
    out << "V " << vx.id << ' ' << vx.euler << ' ' << vx.genus << '\n';
  }
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (const auto& e : g.edges()) edges.push_back(std::minmax(rank[e.a], rank[e.b]));
  std::sort(edges.begin(), edges.end());
  for (auto [a, b] : edges) out << "E " << g.vertices()[order[a]].id << ' ' << g.vertices()[order[b]].id << '\n';
  std::vector<std::pair<std::size_t, int>> arrows;
  for (const auto& h : g.arrows()) arrows.emplace_back(rank[h.vertex], h.branch);
  std::sort(arrows.begin(), arrows.end());
  for (auto [v, b] : arrows) out << "A " << g.vertices()[order[v]].id << ' ' << b << '\n';
  return out.str();
}

}  // namespace plumbing
