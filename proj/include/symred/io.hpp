#ifndef SYMRED_IO_HPP
#define SYMRED_IO_HPP

#include "symred/encode.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace symred {

/// DIMACS CNF. Throws InputError with the line number on malformed input.
Cnf parse_dimacs(std::string_view text);
std::string write_dimacs(const Cnf& f);

/*
  Colored graph file, 1-based vertices:
    p edge <V> <E>
    n <vertex> <color>     (default color 0, any position)
    e <u> <v>
    v <K>                  (optional: vertices 1..K are the variables)
  Lines starting with c are comments.
*/
struct GraphFile {
  ColoredGraph graph;
  std::optional<int> var_vertices;
};

GraphFile parse_graph(std::string_view text);
std::string write_graph(const ColoredGraph& g, std::optional<int> var_vertices = std::nullopt);

/// Whitespace- or comma-separated 1-based variable numbers; returned 0-based.
std::vector<Var> parse_prefix(std::string_view text, int num_vars);
std::string write_prefix(const std::vector<Var>& prefix);

enum class OutputFormat { cubes, icnf, sbp, count };

/// Signed DIMACS literal of a Boolean binding: value 1 is true.
int literal(const Binding& b);

std::string emit_outputs(const std::vector<PartialAssignment>& assignments, OutputFormat format, const Cnf& f);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view data);

} // namespace symred

#endif
