#include "cdc/fsct.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "cdc/combinatorics.hpp"

namespace cdc::fsct {

using algebra::Field;
using analysis::IVKey;

namespace {

constexpr long long kInf = std::numeric_limits<long long>::max() / 4;

struct Dinic {
  struct Edge {
    int to;
    long long cap;
    int rev;
  };
  std::vector<std::vector<Edge>> g;
  std::vector<int> level, iter;

  explicit Dinic(int n) : g(n) {}

  void add_edge(int from, int to, long long cap) {
    g[from].push_back({to, cap, static_cast<int>(g[to].size())});
    g[to].push_back({from, 0, static_cast<int>(g[from].size()) - 1});
  }

  bool bfs(int s, int t) {
    level.assign(g.size(), -1);
    std::vector<int> queue{s};
    level[s] = 0;
    for (size_t h = 0; h < queue.size(); ++h) {
      int v = queue[h];
      for (const Edge& e : g[v])
        if (e.cap > 0 && level[e.to] < 0) {
          level[e.to] = level[v] + 1;
          queue.push_back(e.to);
        }
    }
    return level[t] >= 0;
  }

  long long dfs(int v, int t, long long f) {
    if (v == t) return f;
    for (int& i = iter[v]; i < static_cast<int>(g[v].size()); ++i) {
      Edge& e = g[v][i];
      if (e.cap <= 0 || level[v] + 1 != level[e.to]) continue;
      long long d = dfs(e.to, t, std::min(f, e.cap));
      if (d > 0) {
        e.cap -= d;
        g[e.to][e.rev].cap += d;
        return d;
      }
    }
    return 0;
  }

  long long max_flow(int s, int t) {
    long long flow = 0;
    while (bfs(s, t)) {
      iter.assign(g.size(), 0);
      long long f;
      while ((f = dfs(s, t, kInf)) > 0) flow += f;
    }
    return flow;
  }
};

long long cells_total(const ClusterRound& round, int with_node, int without_node) {
  long long s = 0;
  for (size_t c = 0; c < round.cells.size(); ++c) {
    if (with_node > 0 && !(round.cells[c] & (1u << (with_node - 1)))) continue;
    if (without_node > 0 && (round.cells[c] & (1u << (without_node - 1)))) continue;
    s += round.cell_size(static_cast<int>(c));
  }
  return s;
}

}  // namespace

DeficitCheck check_deficit(const ClusterRound& round) {
  DeficitCheck chk;
  chk.ok = true;
  for (const auto& nb : analysis::deficit_profile(round).nodes)
    if (nb.n_value < 0) {
      chk.ok = false;
      chk.negative_nodes.push_back(nb.node);
    }
  return chk;
}

FeasibilityWitness check_feasible(const ClusterRound& round, int receiver) {
  FeasibilityWitness w;
  int size = round.size();
  std::vector<int> nodes = mask_to_nodes(round.cluster);
  auto profile = analysis::deficit_profile(round);

  std::vector<int> demand_cells;
  long long total_demand = 0;
  for (size_t c = 0; c < round.cells.size(); ++c) {
    if (round.cells[c] & (1u << (receiver - 1))) continue;
    if (round.cell_size(static_cast<int>(c)) == 0) continue;
    demand_cells.push_back(static_cast<int>(c));
    total_demand += static_cast<long long>(size - 1) * round.cell_size(static_cast<int>(c));
  }
  if (demand_cells.empty()) {
    w.feasible = true;
    return w;
  }

  std::vector<int> senders;
  for (int k : nodes)
    if (k != receiver) senders.push_back(k);
  auto sender_index = [&](int k) {
    return static_cast<int>(std::lower_bound(senders.begin(), senders.end(), k) - senders.begin());
  };

  int n_nodes = 2 + static_cast<int>(demand_cells.size()) + static_cast<int>(senders.size());
  int source = 0, sink = n_nodes - 1;
  Dinic flow(n_nodes);
  std::vector<std::vector<std::pair<int, size_t>>> cell_edges(demand_cells.size());
  for (size_t ci = 0; ci < demand_cells.size(); ++ci) {
    int c = demand_cells[ci];
    flow.add_edge(source, 1 + static_cast<int>(ci),
                  static_cast<long long>(size - 1) * round.cell_size(c));
    for (int j : mask_to_nodes(round.cells[c])) {
      int v = 1 + static_cast<int>(demand_cells.size()) + sender_index(j);
      cell_edges[ci].emplace_back(j, flow.g[1 + ci].size());
      flow.add_edge(1 + static_cast<int>(ci), v, kInf);
    }
  }
  for (size_t si = 0; si < senders.size(); ++si)
    flow.add_edge(1 + static_cast<int>(demand_cells.size()) + static_cast<int>(si), sink,
                  std::max(profile.at(senders[si]).n_value, 0LL));

  long long got = flow.max_flow(source, sink);
  w.feasible = (got == total_demand);
  for (size_t ci = 0; ci < demand_cells.size(); ++ci)
    for (auto [j, ei] : cell_edges[ci]) {
      long long sent = kInf - flow.g[1 + ci][ei].cap;
      if (sent > 0) w.beta[{round.cells[demand_cells[ci]], j}] = Rational(sent);
    }
  return w;
}

Rational RoundParameters::cost() const {
  Rational s(0);
  for (const auto& [_, v] : n_bar) s += v;
  return s / Rational(popcount_mask(cluster) - 1);
}

RoundParameters update_parameters(const ClusterRound& round) {
  RoundParameters p;
  p.cluster = round.cluster;
  p.z = round.z;
  std::vector<int> nodes = mask_to_nodes(round.cluster);
  int size = round.size();

  auto profile = analysis::deficit_profile(round);
  p.deficit_ok = true;
  for (const auto& nb : profile.nodes) {
    p.balance[nb.node] = nb.n_value;
    if (nb.n_value < 0) p.deficit_ok = false;
  }
  p.feasible_ok = true;
  for (int i : nodes)
    if (!check_feasible(round, i).feasible) {
      p.feasible_ok = false;
      break;
    }

  if (p.feasible_ok) {
    for (const auto& [k, v] : p.balance) p.n_bar[k] = Rational(std::max(v, 0LL));
  } else {
    p.updated = true;
    for (int k : nodes) {
      long long best = 0;
      for (int j : nodes)
        if (j != k) best = std::max(best, cells_total(round, k, j));
      p.n_bar[k] = Rational(size - 1, round.z) * Rational(best);
    }
  }
  return p;
}

FeasibilityWitness coding_witness(const ClusterRound& round, const RoundParameters& params, int receiver) {
  if (!params.updated) return check_feasible(round, receiver);
  FeasibilityWitness w;
  w.feasible = true;
  int size = round.size();
  for (size_t c = 0; c < round.cells.size(); ++c) {
    if (round.cells[c] & (1u << (receiver - 1))) continue;
    long long sz = round.cell_size(static_cast<int>(c));
    if (sz == 0) continue;
    for (int j : mask_to_nodes(round.cells[c]))
      w.beta[{round.cells[c], j}] = Rational(size - 1, round.z) * Rational(sz);
  }
  return w;
}

Rational fsct_load(const Analysis& a) {
  Rational total(0);
  for (const auto& round : a.rounds) {
    if (round.skippable) continue;
    total += update_parameters(round).cost();
  }
  return total / Rational(static_cast<long long>(a.catalog.Q) * a.catalog.N);
}

Rational fsct_load(const SystemInstance& inst) { return fsct_load(analysis::analyze(inst)); }

OptimalityCheck check_few_shot_optimality(const Analysis& a) {
  OptimalityCheck chk;
  chk.optimal = true;
  for (const auto& round : a.rounds) {
    if (round.skippable) continue;
    if (!check_deficit(round).ok) {
      chk.optimal = false;
      chk.violations.emplace_back(round.cluster, round.z, "deficit");
      continue;
    }
    bool feas = true;
    for (int i : mask_to_nodes(round.cluster))
      if (!check_feasible(round, i).feasible) {
        feas = false;
        break;
      }
    if (!feas) {
      chk.optimal = false;
      chk.violations.emplace_back(round.cluster, round.z, "feasibility");
    }
  }
  return chk;
}

OptimalityCheck check_few_shot_optimality(const SystemInstance& inst) {
  return check_few_shot_optimality(analysis::analyze(inst));
}

namespace {

// Sub-symbols per IV unit for one round: (|S|-1) * T, where T clears every
// denominator in the counts and witnesses.
long long round_scale(const RoundParameters& params, const std::map<int, FeasibilityWitness>& witnesses) {
  algebra::int128 T = 1;
  for (const auto& [_, v] : params.n_bar) T = algebra::lcm128(T, v.den);
  for (const auto& [_, w] : witnesses)
    for (const auto& [__, b] : w.beta) T = algebra::lcm128(T, b.den);
  return static_cast<long long>(T);
}

}  // namespace

bool certify_nonzero_path(const ClusterRound& round, const RoundParameters& params) {
  std::vector<int> nodes = mask_to_nodes(round.cluster);
  int size = round.size();
  std::map<int, FeasibilityWitness> witnesses;
  for (int i : nodes) witnesses[i] = coding_witness(round, params, i);
  long long T = round_scale(params, witnesses);

  std::map<int, long long> row_budget;
  for (const auto& [k, v] : params.n_bar) row_budget[k] = to_int64(v * Rational(T));

  for (int i : nodes) {
    const FeasibilityWitness& w = witnesses.at(i);
    std::map<int, long long> used;
    for (int k : nodes) used[k] = 0;
    for (size_t c = 0; c < round.cells.size(); ++c) {
      if (round.cells[c] & (1u << (i - 1))) continue;
      long long sz = round.cell_size(static_cast<int>(c));
      if (sz == 0) continue;
      long long columns = sz * (size - 1) * T;
      long long covered = 0;
      for (int j : mask_to_nodes(round.cells[c])) {
        auto it = w.beta.find({round.cells[c], j});
        if (it == w.beta.end()) continue;
        long long rows = to_int64(it->second * Rational(T));
        used[j] += rows;
        if (used[j] > row_budget.at(j)) return false;  // sender over-committed
        covered += rows;
      }
      if (covered < columns) return false;  // cell demand not met
    }
  }
  return true;
}

ShuffleOutcome run_shuffle(const SystemInstance& inst, const Analysis& a, const Field& field, uint64_t payload_seed,
                           ShuffleTranscript* transcript) {
  ShuffleOutcome out;
  Rational measured(0);
  uint64_t coeff_master = mix_seed(payload_seed, 0x9e3779b97f4a7c15ULL);

  for (const auto& round : a.rounds) {
    if (round.skippable) continue;
    RoundParameters params = update_parameters(round);
    std::vector<int> nodes = mask_to_nodes(round.cluster);
    int size = round.size();

    std::map<int, FeasibilityWitness> witnesses;
    for (int i : nodes) witnesses[i] = coding_witness(round, params, i);
    long long T = round_scale(params, witnesses);
    long long unit = static_cast<long long>(size - 1) * T;

    // Column layout: live cells in enumeration order, each spanning
    // |V| * unit sub-symbol columns.
    std::vector<int> live;
    std::vector<long long> col_base;
    long long total_cols = 0;
    for (size_t c = 0; c < round.cells.size(); ++c) {
      if (round.cell_size(static_cast<int>(c)) == 0) continue;
      live.push_back(static_cast<int>(c));
      col_base.push_back(total_cols);
      total_cols += round.cell_size(static_cast<int>(c)) * unit;
    }
    std::vector<uint16_t> colval(static_cast<size_t>(total_cols));
    for (size_t li = 0; li < live.size(); ++li) {
      int c = live[li];
      long long pos = col_base[li];
      for (const IVKey& key : round.cell_ivs[c])
        for (long long s = 0; s < unit; ++s) colval[static_cast<size_t>(pos++)] = payload_symbol(payload_seed, key, s, field.bits());
    }

    std::map<int, long long> rows_of;
    long long total_rows = 0;
    for (const auto& [k, v] : params.n_bar) {
      rows_of[k] = to_int64(v * Rational(T));
      total_rows += rows_of[k];
    }

    // Per-sender known column id lists, ascending.
    std::map<int, std::vector<long long>> known_cols;
    for (int k : nodes) {
      auto& lst = known_cols[k];
      for (size_t li = 0; li < live.size(); ++li) {
        if (!(round.cells[live[li]] & (1u << (k - 1)))) continue;
        long long n = round.cell_size(live[li]) * unit;
        for (long long p = 0; p < n; ++p) lst.push_back(col_base[li] + p);
      }
    }

    uint64_t base_seed = mix_seed(mix_seed(coeff_master, round.cluster), static_cast<uint64_t>(round.z));
    bool round_ok = false;
    for (int attempt = 0; attempt < 16 && !round_ok; ++attempt) {
      uint64_t state = mix_seed(base_seed, static_cast<uint64_t>(attempt));
      auto next16 = [&]() {
        state += 0x9e3779b97f4a7c15ULL;
        uint64_t x = state;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        x ^= x >> 31;
        return static_cast<uint16_t>(x & ((1u << field.bits()) - 1));
      };

      // coeffs[k]: rows_of[k] x known_cols[k].size(), row-major; values[k]: transmitted symbols
      std::map<int, std::vector<uint16_t>> coeffs;
      std::map<int, std::vector<uint16_t>> values;
      for (int k : nodes) {
        long long rk = rows_of.at(k);
        const auto& cols = known_cols.at(k);
        auto& mat = coeffs[k];
        mat.resize(static_cast<size_t>(rk * static_cast<long long>(cols.size())));
        for (auto& x : mat) x = next16();
        auto& val = values[k];
        val.assign(static_cast<size_t>(rk), 0);
        for (long long r = 0; r < rk; ++r) {
          uint16_t acc = 0;
          const uint16_t* row = mat.data() + r * static_cast<long long>(cols.size());
          for (size_t ci = 0; ci < cols.size(); ++ci)
            acc ^= field.mul(row[ci], colval[static_cast<size_t>(cols[ci])]);
          val[static_cast<size_t>(r)] = acc;
        }
      }

      bool all_ok = true;
      for (int i : nodes) {
        // Unknown columns for receiver i, with a dense local index.
        std::vector<long long> unknown;
        for (size_t li = 0; li < live.size(); ++li) {
          if (round.cells[live[li]] & (1u << (i - 1))) continue;
          long long n = round.cell_size(live[li]) * unit;
          for (long long p = 0; p < n; ++p) unknown.push_back(col_base[li] + p);
        }
        if (unknown.empty()) continue;
        std::vector<long long> local(static_cast<size_t>(total_cols), -1);
        for (size_t u = 0; u < unknown.size(); ++u) local[static_cast<size_t>(unknown[u])] = static_cast<long long>(u);

        size_t U = unknown.size();
        std::vector<std::vector<uint16_t>> M;
        M.reserve(static_cast<size_t>(total_rows));
        for (int k : nodes) {
          if (k == i) continue;
          long long rk = rows_of.at(k);
          const auto& cols = known_cols.at(k);
          const auto& mat = coeffs.at(k);
          for (long long r = 0; r < rk; ++r) {
            std::vector<uint16_t> row(U + 1, 0);
            uint16_t rhs = values.at(k)[static_cast<size_t>(r)];
            const uint16_t* src = mat.data() + r * static_cast<long long>(cols.size());
            for (size_t ci = 0; ci < cols.size(); ++ci) {
              long long lc = local[static_cast<size_t>(cols[ci])];
              if (lc >= 0)
                row[static_cast<size_t>(lc)] = src[ci];
              else
                rhs ^= field.mul(src[ci], colval[static_cast<size_t>(cols[ci])]);
            }
            row[U] = rhs;
            M.push_back(std::move(row));
          }
        }

        // Gaussian elimination; the system is consistent by construction, so
        // decoding succeeds exactly when the column rank is full.
        size_t rank = 0;
        std::vector<size_t> pivot_row_of(U);
        for (size_t col = 0; col < U && rank < M.size(); ++col) {
          size_t p = rank;
          while (p < M.size() && M[p][col] == 0) ++p;
          if (p == M.size()) {
            all_ok = false;
            break;
          }
          std::swap(M[p], M[rank]);
          uint16_t inv = field.inv(M[rank][col]);
          for (size_t c2 = col; c2 <= U; ++c2) M[rank][c2] = field.mul(M[rank][c2], inv);
          for (size_t r2 = 0; r2 < M.size(); ++r2) {
            if (r2 == rank || M[r2][col] == 0) continue;
            uint16_t f = M[r2][col];
            const uint16_t* prow = M[rank].data();
            uint16_t* trow = M[r2].data();
            for (size_t c2 = col; c2 <= U; ++c2) trow[c2] ^= field.mul(f, prow[c2]);
          }
          pivot_row_of[col] = rank;
          ++rank;
        }
        if (!all_ok || rank < U) {
          all_ok = false;
          break;
        }
        for (size_t u = 0; u < U; ++u)
          if (M[pivot_row_of[u]][U] != colval[static_cast<size_t>(unknown[u])]) {
            out.error = "few-shot recovery mismatch";
            return out;
          }
      }
      round_ok = all_ok;
    }
    if (!round_ok) {
      out.error = "few-shot decode stayed singular after 16 redraws";
      return out;
    }

    if (transcript) {
      transcript->subsymbols_per_unit[{round.cluster, round.z}] = unit;
      for (int k : nodes)
        if (rows_of.at(k) > 0)
          transcript->add({"fsct", round.cluster, round.z, k, rows_of.at(k), field.bits(), rows_of.at(k)});
    }
    measured += Rational(total_rows, unit);
  }
  out.ok = true;
  out.measured_load = measured / Rational(static_cast<long long>(inst.Q) * inst.N);
  return out;
}

}  // namespace cdc::fsct
