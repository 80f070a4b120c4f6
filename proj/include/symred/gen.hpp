#ifndef SYMRED_GEN_HPP
#define SYMRED_GEN_HPP

#include "symred/encode.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace symred {

struct Instance {
  Cnf cnf;
  /// Auxiliary symmetry graph; its first aux_vars vertices are variables
  /// 1..aux_vars of the CNF.
  std::optional<ColoredGraph> aux;
  int aux_vars = 0;
  std::vector<Var> prefix;
  std::string name;   // e.g. "a4", used for default file names
};

/// Symmetry model of an instance: the auxiliary graph when present, the
/// clause graph otherwise.
SymmetryModel instance_model(const Instance& inst, ValueMode mode);

/*
  Rank-r decomposition of a random m x m x m tensor over GF(2) with exactly
  `ones` nonzero entries. Variables: A, B, C entries (a_{il} = i*r + l, B and
  C offset by m*r and 2*m*r), then per equation (i,j,k) the r product
  variables w_l <-> a_{il} & b_{jl} & c_{kl}, then the r-1 XOR-chain
  variables whose last link is fixed to t_{ijk}. Prefix: the first three
  rows of A.
*/
Instance gen_tensor(int m, int r, int ones, std::uint64_t seed);

/// The target tensor chosen by gen_tensor, t[(i*m + j)*m + k].
std::vector<int> tensor_target(int m, int ones, std::uint64_t seed);

/*
  Clique coloring: is there a t-colorable graph on n nodes containing K_s?
  Variables x_{i,j} (ordered pairs i != j, row-major), then y_{p,j} at
  n(n-1) + p*n + j, then z_{i,k} at n(n-1) + s*n + i*t + k. Prefix y_{1,1..n}.
*/
Instance gen_ccp(int n, int s, int t);

/// Edges of K_n in row-major order: (0,1), (0,2), ..., (1,2), ...
std::vector<std::pair<int, int>> complete_graph_edges(int n);
/// Index of edge {i, j} in row-major order.
int edge_index(int n, int i, int j);

/// Two-colorings of K_n without a monochromatic K_k. One variable per edge
/// (row-major); prefix = the first 2n-3 edges.
Instance gen_ramsey(int n, int k);

enum class EdgeOrder {
  row_major,
  /// Edges sorted by larger endpoint: all edges of K_2, then K_3, ...
  vertex_incremental,
};

/// Empty CNF over the edges of K_n with the subdivided K_n as auxiliary
/// graph; prefix = all edges in the given order.
Instance gen_a000088(int n, EdgeOrder order = EdgeOrder::row_major);

} // namespace symred

#endif
