#include "cdc/osct.hpp"

#include <algorithm>
#include <stdexcept>

#include "cdc/combinatorics.hpp"

namespace cdc::osct {

using algebra::Field;
using algebra::FieldMatrix;
using algebra::int128;
using analysis::IVKey;

namespace {

// Normal-equation data over the round's nonempty cells: G[a][b] counts the
// nonempty cells containing both nodes, rhs[a] sums their sizes.
struct NormalSystem {
  std::vector<int> nodes;               // cluster members, ascending
  std::vector<std::vector<long long>> G;
  std::vector<long long> rhs;
};

NormalSystem build_normal(const ClusterRound& round) {
  NormalSystem sys;
  sys.nodes = mask_to_nodes(round.cluster);
  int n = static_cast<int>(sys.nodes.size());
  sys.G.assign(n, std::vector<long long>(n, 0));
  sys.rhs.assign(n, 0);
  for (size_t i = 0; i < round.cells.size(); ++i) {
    long long sz = round.cell_size(static_cast<int>(i));
    if (sz == 0) continue;
    for (int a = 0; a < n; ++a) {
      if (!(round.cells[i] & (1u << (sys.nodes[a] - 1)))) continue;
      sys.rhs[a] += sz;
      for (int b = 0; b < n; ++b)
        if (round.cells[i] & (1u << (sys.nodes[b] - 1))) ++sys.G[a][b];
    }
  }
  return sys;
}

// Solve the normal equations restricted to index set `idx`. The system is
// always consistent; when singular, non-pivot variables are set to zero.
std::optional<std::vector<Rational>> solve_restricted(const NormalSystem& sys, const std::vector<int>& idx) {
  int n = static_cast<int>(idx.size());
  std::vector<std::vector<Rational>> M(n, std::vector<Rational>(n + 1));
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) M[a][b] = Rational(sys.G[idx[a]][idx[b]]);
    M[a][n] = Rational(sys.rhs[idx[a]]);
  }
  std::vector<int> pivot_col_of_row;
  int row = 0;
  std::vector<int> col_pivot_row(n, -1);
  for (int col = 0; col < n && row < n; ++col) {
    int p = -1;
    for (int r = row; r < n; ++r)
      if (!M[r][col].is_zero()) {
        p = r;
        break;
      }
    if (p < 0) continue;
    std::swap(M[p], M[row]);
    Rational inv = Rational(1) / M[row][col];
    for (int c = col; c <= n; ++c) M[row][c] *= inv;
    for (int r = 0; r < n; ++r) {
      if (r == row || M[r][col].is_zero()) continue;
      Rational f = M[r][col];
      for (int c = col; c <= n; ++c) M[r][c] -= f * M[row][c];
    }
    col_pivot_row[col] = row;
    ++row;
  }
  for (int r = row; r < n; ++r)
    if (!M[r][n].is_zero()) return std::nullopt;  // cannot happen for true normal equations
  // Reduced row-echelon form with free variables at zero.
  std::vector<Rational> x(n, Rational(0));
  for (int col = 0; col < n; ++col)
    if (col_pivot_row[col] >= 0) x[col] = M[col_pivot_row[col]][n];
  return x;
}

Rational objective_of(const ClusterRound& round, const std::map<int, Rational>& alpha) {
  Rational obj(0);
  for (size_t i = 0; i < round.cells.size(); ++i) {
    Rational s(0);
    for (const auto& [node, a] : alpha)
      if (round.cells[i] & (1u << (node - 1))) s += a;
    Rational res = Rational(round.cell_size(static_cast<int>(i))) - s;
    obj += res * res;
  }
  return obj;
}

std::vector<Rational> taus_of(const ClusterRound& round, const std::map<int, Rational>& alpha) {
  std::vector<Rational> tau(round.cells.size());
  for (size_t i = 0; i < round.cells.size(); ++i) {
    Rational s(0);
    for (const auto& [node, a] : alpha)
      if (round.cells[i] & (1u << (node - 1))) s += a;
    tau[i] = Rational(round.cell_size(static_cast<int>(i))) - s;
  }
  return tau;
}

bool lex_less(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] < b[i]) return true;
    if (b[i] < a[i]) return false;
  }
  return false;
}

}  // namespace

bool closed_form_applicable(const ClusterRound& round, const DeficitProfile& profile) {
  for (size_t i = 0; i < round.cells.size(); ++i)
    if (round.cell_size(static_cast<int>(i)) == 0) return false;
  int size = round.size();
  for (const auto& nb : profile.nodes) {
    if (!nb.ratio_defined) return false;
    if (round.z > 1 && !(nb.deficit_ratio < Rational(size - round.z, round.z - 1))) return false;
  }
  return true;
}

AlphaSolution solve_p_osct(const ClusterRound& round, const DeficitProfile& profile) {
  AlphaSolution sol;
  sol.cluster = round.cluster;
  sol.z = round.z;
  std::vector<int> nodes = mask_to_nodes(round.cluster);
  int size = round.size();

  if (closed_form_applicable(round, profile)) {
    // Balanced round: every node sends its share of what it knows minus a
    // correction for what it requests; positivity follows from the deficit
    // ratios being below threshold.
    Rational denom(binom(size - 1, round.z - 1));
    for (const auto& nb : profile.nodes) {
      Rational a = Rational(nb.known_ivs) / denom -
                   Rational(round.z - 1) * Rational(nb.requested_ivs) / (Rational(size - round.z) * denom);
      sol.alpha[nb.node] = a;
    }
    sol.tau = taus_of(round, sol.alpha);
    sol.objective = objective_of(round, sol.alpha);
    sol.closed_form = true;
    return sol;
  }

  // Nodes touching an empty cell are forced to zero.
  uint32_t pinned = 0;
  for (size_t i = 0; i < round.cells.size(); ++i)
    if (round.cell_size(static_cast<int>(i)) == 0) pinned |= round.cells[i];

  NormalSystem sys = build_normal(round);
  std::vector<int> free_idx;
  for (int a = 0; a < static_cast<int>(nodes.size()); ++a)
    if (!(pinned & (1u << (nodes[a] - 1)))) free_idx.push_back(a);

  bool have = false;
  Rational best_obj(0);
  std::vector<Rational> best_vec;
  std::map<int, Rational> best_alpha;

  int f = static_cast<int>(free_idx.size());
  for (uint32_t sub = 0; sub < (1u << f); ++sub) {
    std::vector<int> active;
    for (int i = 0; i < f; ++i)
      if (sub & (1u << i)) active.push_back(free_idx[i]);
    auto x = solve_restricted(sys, active);
    if (!x) continue;
    bool nonneg = true;
    for (const auto& v : *x)
      if (v.sign() < 0) {
        nonneg = false;
        break;
      }
    if (!nonneg) continue;
    std::map<int, Rational> alpha;
    for (int node : nodes) alpha[node] = Rational(0);
    for (size_t i = 0; i < active.size(); ++i) alpha[nodes[active[i]]] = (*x)[i];
    Rational obj = objective_of(round, alpha);
    std::vector<Rational> vec;
    vec.reserve(nodes.size());
    for (int node : nodes) vec.push_back(alpha[node]);
    if (!have || obj < best_obj || (obj == best_obj && lex_less(vec, best_vec))) {
      have = true;
      best_obj = obj;
      best_vec = vec;
      best_alpha = alpha;
    }
  }
  // sub = 0 (all zeros) is always feasible, so a solution exists.
  sol.alpha = best_alpha;
  sol.tau = taus_of(round, sol.alpha);
  sol.objective = best_obj;
  return sol;
}

AlphaSolution solve_p_osct(const ClusterRound& round) { return solve_p_osct(round, analysis::deficit_profile(round)); }

Rational round_cost(const ClusterRound& round, const AlphaSolution& sol) {
  Rational sum_alpha(0);
  for (const auto& [_, a] : sol.alpha) sum_alpha += a;
  Rational cost = Rational(binom(round.size() - 2, round.z - 1)) * sum_alpha;
  for (const auto& t : sol.tau) cost += algebra::pos_part(t);
  return cost;
}

Rational osct_load(const Analysis& a) {
  Rational total(0);
  for (const auto& round : a.rounds) {
    if (round.skippable) continue;
    total += round_cost(round, solve_p_osct(round));
  }
  return total / Rational(static_cast<long long>(a.catalog.Q) * a.catalog.N);
}

Rational osct_load(const SystemInstance& inst) { return osct_load(analysis::analyze(inst)); }

OptimalityCheck check_one_shot_optimality(const Analysis& a) {
  OptimalityCheck chk;
  chk.optimal = true;
  for (const auto& round : a.rounds) {
    if (round.skippable) continue;
    auto sol = solve_p_osct(round);
    if (!sol.objective.is_zero()) {
      chk.optimal = false;
      chk.violations.emplace_back(round.cluster, round.z, sol.objective);
    }
  }
  return chk;
}

OptimalityCheck check_one_shot_optimality(const SystemInstance& inst) {
  return check_one_shot_optimality(analysis::analyze(inst));
}

namespace {

long long rat_to_subsymbols(const Rational& x, long long D) {
  return to_int64(x * Rational(D));  // exact by construction of D
}

// Per-round coding plan: D sub-symbols per IV unit, per-cell content layout,
// per-node owned slices.
struct RoundPlan {
  long long D = 1;
  std::vector<long long> cell_len;     // |V_cell| * D
  std::vector<long long> cell_padded;  // max(cell_len, sum of owned slices)
  // slice [start, start+len) of cell c owned by node k
  std::map<std::pair<int, int>, std::pair<long long, long long>> slice;  // (cell, node) -> (start, len)
  std::vector<long long> residue_start;  // per cell; residue len = cell_len - residue_start when positive
};

RoundPlan make_plan(const ClusterRound& round, const AlphaSolution& sol) {
  RoundPlan plan;
  plan.D = 1;
  for (const auto& [_, a] : sol.alpha) plan.D = algebra::lcm128(plan.D, a.den);
  for (const auto& t : sol.tau) plan.D = algebra::lcm128(plan.D, t.den);
  int ncells = static_cast<int>(round.cells.size());
  plan.cell_len.resize(ncells);
  plan.cell_padded.resize(ncells);
  plan.residue_start.assign(ncells, -1);
  for (int c = 0; c < ncells; ++c) {
    plan.cell_len[c] = round.cell_size(c) * plan.D;
    long long off = 0;
    for (int node : mask_to_nodes(round.cells[c])) {
      long long len = rat_to_subsymbols(sol.alpha.at(node), plan.D);
      plan.slice[{c, node}] = {off, len};
      off += len;
    }
    plan.cell_padded[c] = std::max(plan.cell_len[c], off);
    if (plan.cell_len[c] > off) plan.residue_start[c] = off;  // positive residue, unicast
  }
  return plan;
}

uint16_t cell_symbol(const ClusterRound& round, const RoundPlan& plan, int cell, long long pos, uint64_t seed,
                     int field_bits) {
  if (pos >= plan.cell_len[cell]) return 0;  // zero padding
  const IVKey& key = round.cell_ivs[cell][static_cast<size_t>(pos / plan.D)];
  return payload_symbol(seed, key, pos % plan.D, field_bits);
}

}  // namespace

ShuffleOutcome run_shuffle(const SystemInstance& inst, const Analysis& a, const Field& field, uint64_t payload_seed,
                           ShuffleTranscript* transcript) {
  ShuffleOutcome out;
  Rational measured(0);
  for (const auto& round : a.rounds) {
    if (round.skippable) continue;
    AlphaSolution sol = solve_p_osct(round);
    RoundPlan plan = make_plan(round, sol);
    int size = round.size();
    long long n_lc = binom(size - 2, round.z - 1);
    std::vector<int> nodes = mask_to_nodes(round.cluster);
    int ncells = static_cast<int>(round.cells.size());
    if (transcript) transcript->subsymbols_per_unit[{round.cluster, round.z}] = plan.D;
    long long round_subsymbols = 0;

    // Sender blocks: rows are powers of per-cell points, one column group per
    // owned cell, each group alpha_k * D wide.
    struct Block {
      int sender;
      std::vector<int> cells;                      // global cell indices, ascending
      std::vector<std::vector<uint16_t>> rows;     // n_lc rows of alpha_k * D symbols
    };
    std::vector<Block> blocks;
    for (int k : nodes) {
      long long width = rat_to_subsymbols(sol.alpha.at(k), plan.D);
      if (width == 0 || n_lc == 0) continue;
      Block blk;
      blk.sender = k;
      for (int c = 0; c < ncells; ++c)
        if (round.cells[c] & (1u << (k - 1))) blk.cells.push_back(c);
      blk.rows.assign(static_cast<size_t>(n_lc), std::vector<uint16_t>(width, 0));
      for (long long t = 0; t < n_lc; ++t) {
        for (int c : blk.cells) {
          uint16_t coeff = field.pow(field.point(static_cast<uint32_t>(c + 1)), static_cast<uint64_t>(t));
          auto [start, len] = plan.slice.at({c, k});
          for (long long p = 0; p < len; ++p)
            blk.rows[t][p] ^= field.mul(coeff, cell_symbol(round, plan, c, start + p, payload_seed, field.bits()));
        }
      }
      round_subsymbols += n_lc * width;
      if (transcript)
        transcript->add({"osct", round.cluster, round.z, k, n_lc * width, field.bits(), -1});
      blocks.push_back(std::move(blk));
    }

    // Positive residues go out uncoded from the lowest-indexed mapper.
    std::vector<std::vector<uint16_t>> residue(ncells);
    for (int c = 0; c < ncells; ++c) {
      if (plan.residue_start[c] < 0) continue;
      long long len = plan.cell_len[c] - plan.residue_start[c];
      residue[c].resize(len);
      for (long long p = 0; p < len; ++p)
        residue[c][p] = cell_symbol(round, plan, c, plan.residue_start[c] + p, payload_seed, field.bits());
      round_subsymbols += len;
      if (transcript)
        transcript->add({"osct", round.cluster, round.z, mask_to_nodes(round.cells[c]).front(), len, field.bits(), -1});
    }
    measured += Rational(round_subsymbols, plan.D);

    // Decode: every receiver handles each block in isolation, subtracting the
    // segments it can rebuild locally and inverting a square Vandermonde on
    // the rest.
    for (int i : nodes) {
      // assembled[c] collects the cell's content as recovered at receiver i
      std::map<int, std::vector<uint16_t>> assembled;
      for (int c = 0; c < ncells; ++c)
        if (!(round.cells[c] & (1u << (i - 1))) && plan.cell_len[c] > 0)
          assembled[c] = std::vector<uint16_t>(plan.cell_len[c], 0);
      if (assembled.empty()) continue;

      for (const Block& blk : blocks) {
        if (blk.sender == i) continue;
        std::vector<int> unknown;
        for (int c : blk.cells)
          if (!(round.cells[c] & (1u << (i - 1)))) unknown.push_back(c);
        if (unknown.empty()) continue;
        if (static_cast<long long>(unknown.size()) != n_lc) {
          out.error = "one-shot block with non-square decode system";
          return out;
        }
        long long width = static_cast<long long>(blk.rows[0].size());
        // Right-hand sides: rows minus locally known cell contributions.
        std::vector<std::vector<uint16_t>> rhs(blk.rows);
        for (long long t = 0; t < n_lc; ++t)
          for (int c : blk.cells) {
            if (!(round.cells[c] & (1u << (i - 1)))) continue;
            uint16_t coeff = field.pow(field.point(static_cast<uint32_t>(c + 1)), static_cast<uint64_t>(t));
            auto [start, len] = plan.slice.at({c, blk.sender});
            for (long long p = 0; p < len; ++p)
              rhs[t][p] ^= field.mul(coeff, cell_symbol(round, plan, c, start + p, payload_seed, field.bits()));
          }
        std::vector<uint16_t> points;
        points.reserve(unknown.size());
        for (int c : unknown) points.push_back(field.point(static_cast<uint32_t>(c + 1)));
        FieldMatrix V = algebra::vandermonde(field, points, static_cast<int>(n_lc));
        for (long long p = 0; p < width; ++p) {
          std::vector<uint16_t> b(static_cast<size_t>(n_lc));
          for (long long t = 0; t < n_lc; ++t) b[t] = rhs[t][p];
          auto x = algebra::solve(V, b);
          if (!x) {
            out.error = "one-shot decode hit a singular Vandermonde system";
            return out;
          }
          for (size_t u = 0; u < unknown.size(); ++u) {
            auto [start, len] = plan.slice.at({unknown[u], blk.sender});
            long long pos = start + p;
            if (pos < plan.cell_len[unknown[u]]) assembled[unknown[u]][pos] = (*x)[u];
          }
        }
      }
      for (auto& [c, buf] : assembled) {
        if (plan.residue_start[c] >= 0)
          for (long long p = 0; p < static_cast<long long>(residue[c].size()); ++p)
            buf[plan.residue_start[c] + p] = residue[c][p];
        for (long long pos = 0; pos < plan.cell_len[c]; ++pos)
          if (buf[pos] != cell_symbol(round, plan, c, pos, payload_seed, field.bits())) {
            out.error = "one-shot recovery mismatch at cluster round";
            return out;
          }
      }
    }
  }
  out.ok = true;
  out.measured_load = measured / Rational(static_cast<long long>(inst.Q) * inst.N);
  return out;
}

}  // namespace cdc::osct
