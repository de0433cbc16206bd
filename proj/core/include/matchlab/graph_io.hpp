#pragma once

#include <istream>
#include <string>
#include <string_view>
#include <vector>

#include "matchlab/graph.hpp"

namespace matchlab {

/// Edge-list text format:
///
///   n m
///   u v            (m lines, 0-indexed endpoints; edge i is the i-th line)
///   # rotation     (optional; then one "v: e1 e2 ..." line per vertex)
///   # bipartition: a b c ...   (optional; vertices on side 0)
///
/// Any other line starting with '#' is a comment.
class ParseError : public Error {
 public:
  enum class Kind {
    kMalformedLine,
    kDuplicateEdge,
    kSelfLoop,
    kVertexOutOfRange,
    kEdgeCountMismatch,
    kRotationInconsistent,
    kBipartitionInvalid,
  };

  ParseError(Kind kind, int line, const std::string& what);

  Kind kind() const { return kind_; }
  /// 1-based line number; 0 when the error concerns the file as a whole.
  int line() const { return line_; }

 private:
  Kind kind_;
  int line_;
};

Graph parse_graph(std::string_view text);
Graph read_graph_file(const std::string& path);

struct SerializedGraph {
  std::string text;
  /// id_map[k] is the original id of the edge written as dense id k.
  std::vector<EdgeId> id_map;
};

/// Re-densifies edge ids (in increasing original id order).
SerializedGraph serialize_graph(const Graph& g);
void write_graph_file(const Graph& g, const std::string& path);

}  // namespace matchlab
