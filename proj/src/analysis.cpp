#include "cdc/analysis.hpp"

#include <algorithm>
#include <stdexcept>

#include "cdc/combinatorics.hpp"

namespace cdc::analysis {

IVCatalog build_catalog(const SystemInstance& inst) {
  IVCatalog cat;
  cat.K = inst.K;
  cat.N = inst.N;
  cat.Q = inst.Q;
  std::vector<uint32_t> file_mappers(inst.N, 0), fn_reducers(inst.Q, 0);
  for (int k = 1; k <= inst.K; ++k) {
    for (int n : inst.placement[k - 1]) file_mappers[n - 1] |= 1u << (k - 1);
    for (int q : inst.assignment[k - 1]) fn_reducers[q - 1] |= 1u << (k - 1);
  }
  cat.r_min = inst.K;
  for (int n = 0; n < inst.N; ++n) {
    if (file_mappers[n] == 0) throw std::invalid_argument("catalog: unmapped file");
    cat.r_min = std::min(cat.r_min, popcount_mask(file_mappers[n]));
  }
  cat.q_min = inst.K;
  for (int q = 0; q < inst.Q; ++q) {
    if (fn_reducers[q] == 0) throw std::invalid_argument("catalog: unassigned function");
    cat.q_min = std::min(cat.q_min, popcount_mask(fn_reducers[q]));
  }
  for (int q = 1; q <= inst.Q; ++q)
    for (int n = 1; n <= inst.N; ++n) {
      uint32_t requesters = fn_reducers[q - 1] & ~file_mappers[n - 1];
      if (requesters != 0) cat.needed.push_back({{q, n}, file_mappers[n - 1], requesters});
    }
  return cat;
}

long long ClusterRound::total_ivs() const {
  long long t = 0;
  for (const auto& c : cell_ivs) t += static_cast<long long>(c.size());
  return t;
}

std::vector<ClusterRound> enumerate_cluster_rounds(const SystemInstance& inst, const IVCatalog& catalog) {
  // Cells keyed by (cluster, z), then by mapper subset.
  std::map<std::pair<uint32_t, int>, std::map<uint32_t, std::vector<IVKey>>> filled;
  for (const IVInfo& iv : catalog.needed) {
    uint32_t cluster = iv.mappers | iv.requesters;
    int z = popcount_mask(iv.mappers);
    filled[{cluster, z}][iv.mappers].push_back(iv.key);
  }

  int lo = std::max(catalog.r_min + 1, catalog.q_min);
  int hi = std::min(inst.K, catalog.r_min + catalog.q_min);
  auto in_window = [&](uint32_t cluster) {
    int sz = popcount_mask(cluster);
    return sz >= lo && sz <= hi;
  };

  // Every (cluster, z) that either holds IVs or sits inside the nominal
  // window; rounds of a cluster span z in [r_min, |S|-1].
  std::map<std::pair<std::vector<int>, int>, std::pair<uint32_t, int>> keys;
  for (const auto& [key, _] : filled) keys[{mask_to_nodes(key.first), key.second}] = key;
  for (int sz = std::max(lo, 2); sz <= hi; ++sz)
    for (uint32_t cluster : masks_of_size(inst.K, sz))
      for (int z = catalog.r_min; z <= sz - 1; ++z) keys[{mask_to_nodes(cluster), z}] = {cluster, z};

  std::vector<ClusterRound> rounds;
  rounds.reserve(keys.size());
  for (const auto& [_, key] : keys) {
    auto [cluster, z] = key;
    ClusterRound cr;
    cr.cluster = cluster;
    cr.z = z;
    cr.in_window = in_window(cluster);
    cr.cells = submasks_of_size(cluster, z);
    cr.cell_ivs.resize(cr.cells.size());
    auto it = filled.find({cluster, z});
    if (it != filled.end()) {
      for (size_t i = 0; i < cr.cells.size(); ++i) {
        auto jt = it->second.find(cr.cells[i]);
        if (jt != it->second.end()) {
          cr.cell_ivs[i] = jt->second;
          std::sort(cr.cell_ivs[i].begin(), cr.cell_ivs[i].end());
        }
      }
    }
    cr.skippable = cr.total_ivs() == 0;
    rounds.push_back(std::move(cr));
  }
  return rounds;
}

std::map<std::pair<int, int>, long long> a_table(const IVCatalog& catalog) {
  std::map<std::pair<int, int>, long long> table;
  for (const IVInfo& iv : catalog.needed) ++table[{popcount_mask(iv.mappers), popcount_mask(iv.requesters)}];
  return table;
}

Rational lower_bound(const IVCatalog& catalog) {
  Rational total(0);
  for (const auto& [td, count] : a_table(catalog))
    total += Rational(count) * Rational(td.second, td.first + td.second - 1);
  return total / Rational(static_cast<long long>(catalog.Q) * catalog.N);
}

Rational uncoded_load(const IVCatalog& catalog) {
  long long transmissions = 0;
  for (const IVInfo& iv : catalog.needed) transmissions += popcount_mask(iv.requesters);
  return Rational(transmissions, static_cast<long long>(catalog.Q) * catalog.N);
}

const NodeBalance& DeficitProfile::at(int node) const {
  for (const auto& nb : nodes)
    if (nb.node == node) return nb;
  throw std::out_of_range("deficit profile: node not in cluster");
}

DeficitProfile deficit_profile(const ClusterRound& round) {
  DeficitProfile prof;
  prof.cluster = round.cluster;
  prof.z = round.z;
  int size = round.size();
  for (int node : mask_to_nodes(round.cluster)) {
    NodeBalance nb;
    nb.node = node;
    for (size_t i = 0; i < round.cells.size(); ++i) {
      long long c = round.cell_size(static_cast<int>(i));
      if (round.cells[i] & (1u << (node - 1)))
        nb.known_ivs += c;
      else
        nb.requested_ivs += c;
    }
    nb.n_value = static_cast<long long>(size - round.z) * nb.known_ivs -
                 static_cast<long long>(round.z - 1) * nb.requested_ivs;
    if (nb.known_ivs > 0) {
      nb.ratio_defined = true;
      nb.deficit_ratio = Rational(nb.requested_ivs, nb.known_ivs);
    } else if (nb.requested_ivs == 0) {
      nb.ratio_defined = true;  // 0/0 reads as zero by convention
      nb.deficit_ratio = Rational(0);
    }
    prof.nodes.push_back(nb);
  }
  return prof;
}

Analysis analyze(const SystemInstance& inst) {
  Analysis a;
  a.catalog = build_catalog(inst);
  a.rounds = enumerate_cluster_rounds(inst, a.catalog);
  return a;
}

}  // namespace cdc::analysis
