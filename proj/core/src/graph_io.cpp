#include "matchlab/graph_io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

namespace matchlab {

ParseError::ParseError(Kind kind, int line, const std::string& what)
    : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), kind_(kind), line_(line) {}

namespace {

using Kind = ParseError::Kind;

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

// Parses whitespace-separated non-negative integers; false on any stray token.
bool parse_ints(std::string_view s, std::vector<long>& out) {
  out.clear();
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    if (i == s.size()) break;
    long value = 0;
    auto [ptr, ec] = std::from_chars(s.data() + i, s.data() + s.size(), value);
    if (ec != std::errc() || value < 0) return false;
    i = static_cast<std::size_t>(ptr - s.data());
    if (i < s.size() && s[i] != ' ' && s[i] != '\t') return false;
    out.push_back(value);
  }
  return true;
}

}  // namespace

Graph parse_graph(std::string_view text) {
  enum class Section { kHeader, kEdges, kRotation, kDone };
  Section section = Section::kHeader;
  long n = 0, m = 0;
  std::vector<std::pair<VertexId, VertexId>> edges;
  std::set<std::pair<VertexId, VertexId>> seen;
  bool has_rotation = false;
  RotationSystem rotation;
  std::vector<char> rotation_seen;
  int rotation_line = 0;
  std::optional<std::vector<long>> left_side;
  int bipartition_line = 0;
  std::vector<long> ints;

  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = trim(text.substr(pos, end - pos));
    pos = end + 1;
    ++line_no;
    if (line.empty()) continue;

    if (line.front() == '#') {
      std::string_view body = trim(line.substr(1));
      if (body == "rotation") {
        if (section != Section::kDone && section != Section::kRotation) {
          throw ParseError(Kind::kMalformedLine, line_no, "rotation section before the edge list ends");
        }
        has_rotation = true;
        rotation_line = line_no;
        rotation.assign(n, {});
        rotation_seen.assign(n, 0);
        section = Section::kRotation;
      } else if (body.starts_with("bipartition:")) {
        if (!parse_ints(body.substr(12), ints)) {
          throw ParseError(Kind::kMalformedLine, line_no, "bad bipartition vertex list");
        }
        left_side = ints;
        bipartition_line = line_no;
      }
      continue;
    }

    switch (section) {
      case Section::kHeader: {
        if (!parse_ints(line, ints) || ints.size() != 2) {
          throw ParseError(Kind::kMalformedLine, line_no, "expected header \"n m\"");
        }
        n = ints[0];
        m = ints[1];
        section = m > 0 ? Section::kEdges : Section::kDone;
        break;
      }
      case Section::kEdges: {
        if (!parse_ints(line, ints) || ints.size() != 2) {
          throw ParseError(Kind::kMalformedLine, line_no, "expected edge \"u v\"");
        }
        if (ints[0] >= n || ints[1] >= n) {
          throw ParseError(Kind::kVertexOutOfRange, line_no, "endpoint out of range");
        }
        auto u = static_cast<VertexId>(ints[0]);
        auto v = static_cast<VertexId>(ints[1]);
        if (u == v) throw ParseError(Kind::kSelfLoop, line_no, "self-loop at vertex " + std::to_string(u));
        if (!seen.emplace(std::min(u, v), std::max(u, v)).second) {
          throw ParseError(Kind::kDuplicateEdge, line_no,
                           "duplicate edge " + std::to_string(u) + " " + std::to_string(v));
        }
        edges.emplace_back(u, v);
        if (static_cast<long>(edges.size()) == m) section = Section::kDone;
        break;
      }
      case Section::kRotation: {
        auto colon = line.find(':');
        if (colon == std::string_view::npos || !parse_ints(line.substr(0, colon), ints) || ints.size() != 1) {
          throw ParseError(Kind::kMalformedLine, line_no, "expected rotation line \"v: e1 e2 ...\"");
        }
        long v = ints[0];
        if (v >= n) throw ParseError(Kind::kVertexOutOfRange, line_no, "rotation vertex out of range");
        if (rotation_seen[v]) {
          throw ParseError(Kind::kRotationInconsistent, line_no, "vertex listed twice in rotation");
        }
        rotation_seen[v] = 1;
        if (!parse_ints(line.substr(colon + 1), ints)) {
          throw ParseError(Kind::kMalformedLine, line_no, "bad rotation edge list");
        }
        for (long e : ints) {
          if (e >= m) throw ParseError(Kind::kRotationInconsistent, line_no, "rotation names unknown edge");
          const auto& [a, b] = edges[e];
          if (a != v && b != v) {
            throw ParseError(Kind::kRotationInconsistent, line_no,
                             "edge " + std::to_string(e) + " is not incident to vertex " + std::to_string(v));
          }
          rotation[v].push_back(static_cast<EdgeId>(e));
        }
        break;
      }
      case Section::kDone:
        throw ParseError(Kind::kEdgeCountMismatch, line_no, "more edge lines than the header declares");
    }
  }

  if (section == Section::kHeader) throw ParseError(Kind::kMalformedLine, 0, "missing header");
  if (static_cast<long>(edges.size()) != m) {
    throw ParseError(Kind::kEdgeCountMismatch, line_no, "fewer edge lines than the header declares");
  }

  Graph g(static_cast<int>(n), edges);
  if (has_rotation) {
    try {
      g = g.with_embedding(std::move(rotation));
    } catch (const std::invalid_argument& e) {
      throw ParseError(Kind::kRotationInconsistent, rotation_line, e.what());
    }
  }
  if (left_side) {
    Bipartition sides(n, 1);
    for (long v : *left_side) {
      if (v >= n) throw ParseError(Kind::kBipartitionInvalid, bipartition_line, "vertex out of range");
      sides[v] = 0;
    }
    try {
      g = g.with_bipartition(std::move(sides));
    } catch (const std::invalid_argument& e) {
      throw ParseError(Kind::kBipartitionInvalid, bipartition_line, e.what());
    }
  }
  return g;
}

Graph read_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open graph file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_graph(buf.str());
}

SerializedGraph serialize_graph(const Graph& g) {
  SerializedGraph out;
  std::vector<int> dense(g.edge_id_bound(), -1);
  for (const Edge& e : g.edges()) {
    dense[e.id] = static_cast<int>(out.id_map.size());
    out.id_map.push_back(e.id);
  }
  std::ostringstream os;
  os << g.num_vertices() << ' ' << g.num_edges() << '\n';
  for (const Edge& e : g.edges()) os << e.u << ' ' << e.v << '\n';
  if (g.embedding()) {
    os << "# rotation\n";
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
      os << v << ':';
      for (EdgeId e : (*g.embedding())[v]) os << ' ' << dense[e];
      os << '\n';
    }
  }
  if (g.bipartition()) {
    os << "# bipartition:";
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
      if ((*g.bipartition())[v] == 0) os << ' ' << v;
    }
    os << '\n';
  }
  out.text = os.str();
  return out;
}

void write_graph_file(const Graph& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write graph file " + path);
  out << serialize_graph(g).text;
}

}  // namespace matchlab
