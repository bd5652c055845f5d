#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "steal_lab/address_space.hpp"
#include "steal_lab/semiring.hpp"
#include "steal_lab/shape.hpp"
#include "steal_lab/sp_dag.hpp"

namespace steal_lab {

struct KernelConfig {
  std::uint64_t block_words = 16;  // B; block id = word address / B
  std::uint32_t leaf = 8;          // recursion stops at tiles of this side length
  std::uint32_t fork_work = 1;
  std::uint32_t join_work = 1;
  std::uint64_t node_cap = kDefaultNodeCap;
};

struct MatrixResult {
  SemiringMatrix value;
  SPDag dag;
  AddressSpace space;
};

struct VectorResult {
  std::vector<Value> value;
  SPDag dag;
  AddressSpace space;
};

struct TableResult {
  /// value[i][j] = D_{i,j} for i < j; kInf elsewhere.
  std::vector<std::vector<Value>> value;
  SPDag dag;
  AddressSpace space;
};

struct KernelRun {
  SPDag dag;
  AddressSpace space;
};

/// C <- min(C, A (x) B) over (min,+). Eight half-size products run in
/// parallel, four of them into a temporary that is min-merged into C.
MatrixResult mm(const SemiringMatrix& a, const SemiringMatrix& b, const SemiringMatrix& c,
                const KernelConfig& cfg = {});

/// Transposed copy via four parallel quadrant transposes.
MatrixResult mt(const SemiringMatrix& a, const KernelConfig& cfg = {});

/// d_out[j] <- min(d_out[j], min_i d_in[i] + w(i, j)); both arrays of the
/// same power-of-two length.
VectorResult grid2d(const std::vector<Value>& d_in, const std::vector<Value>& d_out,
                    const WeightOracle& w, const KernelConfig& cfg = {});

/// All-pairs shortest paths by recursive closure.
MatrixResult kleene(const SemiringMatrix& a, const KernelConfig& cfg = {});

struct LwsInstance {
  std::uint64_t n = 1;
  Value d0 = 0;
  WeightOracle w;
};

/// D_j = min_{0<=i<j} D_i + w(i, j) for j = 1..n; value has n+1 entries.
VectorResult lws(const LwsInstance& inst, const KernelConfig& cfg = {});

struct ParenthesisInstance {
  std::uint64_t n = 1;
  std::vector<Value> base;  // base[i] = D_{i,i+1}
  WeightOracle w;
};

/// D_{i,j} = min_{i<k<j} D_{i,k} + D_{k,j} + w(i,k,j) over points 0..n.
TableResult parenthesis(const ParenthesisInstance& inst, const KernelConfig& cfg = {});

/// Trace-only DAG for gaussian, trs, cholesky_lu, gap, rna, protein.
/// `shape` must equal the registry entry for `alg`.
KernelRun skeleton(const RecurrenceShape& shape, std::uint64_t n, std::string_view alg,
                   const KernelConfig& cfg = {});

/// Ids accepted by generate(): mm, mt, grid2d, kleene, lws, parenthesis,
/// gaussian, trs, cholesky_lu, gap, rna, protein.
std::span<const std::string_view> algorithm_ids();

/// Builds the DAG of `alg` at size n with seeded random inputs.
/// Throws std::invalid_argument for unknown ids or non-power-of-two n.
KernelRun generate(std::string_view alg, std::uint64_t n, std::uint64_t seed,
                   const KernelConfig& cfg = {});

}  // namespace steal_lab
