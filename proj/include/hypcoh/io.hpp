#pragma once

#include <string>

#include "hypcoh/chain.hpp"
#include "hypcoh/graph.hpp"

namespace hypcoh {

/// "graph <n>" then one "u v" edge per line. '#' starts a comment.
Graph parse_graph(const std::string& text);
std::string format_graph(const Graph& g);

/// One member per line, space-separated ids; duplicate lines allowed. The
/// disjoint flag is computed.
SubgraphFamily parse_family(const std::string& text, std::size_t vertices);
std::string format_family(const SubgraphFamily& family);

/// "chain <degree>" then "num/den v0 v1 [v2]" per term.
Chain parse_chain(const std::string& text, std::size_t vertices);
std::string format_chain(const Chain& c);

/// Throws InvalidArgument when the file cannot be opened.
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

}  // namespace hypcoh
