// Combinatorial analysis of an instance: classifies every intermediate value
// by its mapper and requester sets, partitions the needed IVs into
// (cluster, round, mapper-subset) cells, and computes the exact
// information-theoretic lower bound and the uncoded baseline.
#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "cdc/instance.hpp"
#include "cdc/rational.hpp"

namespace cdc::analysis {

using algebra::Rational;
using instance::SystemInstance;

struct IVKey {
  int q = 0;  // function index
  int n = 0;  // file index
  friend bool operator==(const IVKey&, const IVKey&) = default;
  friend auto operator<=>(const IVKey&, const IVKey&) = default;
};

struct IVInfo {
  IVKey key;
  uint32_t mappers = 0;     // nodes whose placement holds file n
  uint32_t requesters = 0;  // nodes that reduce q but did not map n
};

struct IVCatalog {
  int K = 0, N = 0, Q = 0;
  int r_min = 0;                 // fewest mappers over all files
  int q_min = 0;                 // fewest reducers over all functions
  std::vector<IVInfo> needed;    // every (q, n) with nonempty requesters
  long long total_needed() const { return static_cast<long long>(needed.size()); }
};

IVCatalog build_catalog(const SystemInstance& inst);

// One round of one sending cluster. cells[i] is the i-th z-subset of the
// cluster in lexicographic order; cell_ivs[i] holds the IVs mapped by exactly
// that subset and requested by the rest of the cluster, sorted by (q, n).
struct ClusterRound {
  uint32_t cluster = 0;
  int z = 0;
  std::vector<uint32_t> cells;
  std::vector<std::vector<IVKey>> cell_ivs;
  bool skippable = false;   // every cell empty
  bool in_window = false;   // cluster size within the nominal window
  int size() const { return __builtin_popcount(cluster); }
  long long total_ivs() const;
  long long cell_size(int i) const { return static_cast<long long>(cell_ivs[i].size()); }
};

// Deterministic order: clusters by ascending sorted node list, rounds by
// ascending z. Every needed IV lands in exactly one cell (cluster = mappers
// union requesters, z = mapper count); clusters inside the nominal size
// window are present even when empty, flagged skippable.
std::vector<ClusterRound> enumerate_cluster_rounds(const SystemInstance& inst, const IVCatalog& catalog);

// (t, d) -> number of IVs available at t nodes and required by d others.
std::map<std::pair<int, int>, long long> a_table(const IVCatalog& catalog);

// (1/QN) * sum a_{t,d} * d / (t+d-1): no shuffle can beat this.
Rational lower_bound(const IVCatalog& catalog);

// (1/QN) * sum a_{t,d} * d: every needed IV unicast to each requester.
Rational uncoded_load(const IVCatalog& catalog);

struct NodeBalance {
  int node = 0;
  long long n_value = 0;        // (|S|-z) * (IVs known) - (z-1) * (IVs requested)
  long long known_ivs = 0;      // sum of cell sizes over cells containing the node
  long long requested_ivs = 0;  // sum over cells not containing the node
  bool ratio_defined = false;   // false when requested > 0 and known == 0
  Rational deficit_ratio;       // requested / known, 0 when both are zero
};

struct DeficitProfile {
  uint32_t cluster = 0;
  int z = 0;
  std::vector<NodeBalance> nodes;  // ascending node index over the cluster
  const NodeBalance& at(int node) const;
};

DeficitProfile deficit_profile(const ClusterRound& round);

// Catalog plus enumerated rounds; the bundle every scheme consumes.
struct Analysis {
  IVCatalog catalog;
  std::vector<ClusterRound> rounds;
};

Analysis analyze(const SystemInstance& inst);

}  // namespace cdc::analysis
