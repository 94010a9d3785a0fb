#include "cdc/oracles.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <stdexcept>

#include "cdc/combinatorics.hpp"

namespace cdc::oracles {

using analysis::ClusterRound;
using instance::SystemInstance;

ThreeNodePartition three_node_partition(const SystemInstance& inst) {
  if (inst.K != 3) throw std::invalid_argument("three_node_partition requires K = 3");
  ThreeNodePartition p;
  for (int n = 1; n <= inst.N; ++n) {
    int mask = 0;
    for (int k = 0; k < 3; ++k)
      if (std::binary_search(inst.placement[k].begin(), inst.placement[k].end(), n)) mask |= 1 << k;
    switch (mask) {
      case 1: ++p.s1; break;
      case 2: ++p.s2; break;
      case 4: ++p.s3; break;
      case 3: ++p.s12; break;
      case 5: ++p.s13; break;
      case 6: ++p.s23; break;
      case 7: ++p.s123; break;
      default: throw std::invalid_argument("file stored nowhere");
    }
  }
  return p;
}

Rational three_node_load(const ThreeNodePartition& p) {
  Rational mx(std::max({p.s12, p.s13, p.s23}));
  Rational half_sum = Rational(p.s12 + p.s13 + p.s23) / Rational(2);
  Rational g = (algebra::abs(mx + half_sum) + algebra::abs(mx - half_sum)) / Rational(2);
  return Rational(2 * (p.s1 + p.s2 + p.s3)) + g;
}

Rational homogeneous_load(int K, int r, int s) {
  Rational total(0);
  int lo = std::max(r + 1, s), hi = std::min(r + s, K);
  for (int l = lo; l <= hi; ++l)
    total += Rational(l * binom(K, l) * binom(l - 2, r - 1) * binom(r, l - s),
                      static_cast<long long>(r) * binom(K, r) * binom(K, s));
  return total;
}

Rational semi_homogeneous_mixture(int K, int r, const std::map<int, int>& Qs) {
  long long Q = 0;
  for (const auto& [_, qs] : Qs) Q += qs;
  Rational total(0);
  for (const auto& [s, qs] : Qs) total += homogeneous_load(K, r, s) * Rational(qs, Q);
  return total;
}

std::map<std::pair<int, int>, Rational> a_semi_closed_form(int K, int r, const std::map<int, int>& Qs, long long N) {
  std::map<std::pair<int, int>, Rational> out;
  int t = r;
  for (int d = 1; d <= K - t; ++d) {
    Rational v(0);
    for (const auto& [s, qs] : Qs) {
      if (s < d || s > t + d) continue;
      v += Rational(N * qs * binom(t, t + d - s) * binom(K, t + d) * binom(t + d, t), binom(K, t) * binom(K, s));
    }
    if (!v.is_zero()) out[{t, d}] = v;
  }
  return out;
}

Rational brute_force_min_load_tiny(const SystemInstance& inst) {
  std::vector<uint32_t> mappers(inst.N + 1, 0), reducers(inst.Q + 1, 0);
  for (int k = 1; k <= inst.K; ++k) {
    for (int n : inst.placement[k - 1]) mappers[n] |= 1u << (k - 1);
    for (int q : inst.assignment[k - 1]) reducers[q] |= 1u << (k - 1);
  }
  Rational total(0);
  int needed = 0;
  for (int q = 1; q <= inst.Q; ++q)
    for (int n = 1; n <= inst.N; ++n) {
      uint32_t req = reducers[q] & ~mappers[n];
      if (req == 0) continue;
      if (++needed > 6) throw std::invalid_argument("instance too large for the brute-force oracle");
      int t = popcount_mask(mappers[n]);
      int d = popcount_mask(req);
      total += Rational(d, t + d - 1);
    }
  return total / Rational(static_cast<long long>(inst.Q) * inst.N);
}

namespace {

// Self-contained exact linear solver used only by the oracles, kept separate
// from the engines' elimination code on purpose.
std::optional<std::vector<Rational>> solve_square(std::vector<std::vector<Rational>> M) {
  int n = static_cast<int>(M.size());
  for (int col = 0; col < n; ++col) {
    int p = -1;
    for (int r = col; r < n; ++r)
      if (!M[r][col].is_zero()) {
        p = r;
        break;
      }
    if (p < 0) return std::nullopt;
    std::swap(M[p], M[col]);
    Rational inv = Rational(1) / M[col][col];
    for (int c = col; c <= n; ++c) M[col][c] *= inv;
    for (int r = 0; r < n; ++r) {
      if (r == col || M[r][col].is_zero()) continue;
      Rational f = M[r][col];
      for (int c = col; c <= n; ++c) M[r][c] -= f * M[col][c];
    }
  }
  std::vector<Rational> x(n);
  for (int r = 0; r < n; ++r) x[r] = M[r][n];
  return x;
}

}  // namespace

Rational exhaustive_posct_objective(const ClusterRound& round) {
  std::vector<int> nodes = mask_to_nodes(round.cluster);
  std::vector<int> nonempty;
  uint32_t pinned = 0;
  for (size_t c = 0; c < round.cells.size(); ++c) {
    if (round.cell_size(static_cast<int>(c)) > 0)
      nonempty.push_back(static_cast<int>(c));
    else
      pinned |= round.cells[c];
  }
  std::vector<int> free_nodes;
  for (int k : nodes)
    if (!(pinned & (1u << (k - 1)))) free_nodes.push_back(k);

  int f = static_cast<int>(free_nodes.size());
  for (uint32_t support = 0; support < (1u << f); ++support) {
    std::vector<int> sup;
    for (int i = 0; i < f; ++i)
      if (support & (1u << i)) sup.push_back(free_nodes[i]);

    // stationarity restricted to the support; insist on a unique solution
    int n = static_cast<int>(sup.size());
    std::vector<std::vector<Rational>> M(n, std::vector<Rational>(n + 1, Rational(0)));
    for (int a = 0; a < n; ++a)
      for (int c : nonempty) {
        if (!(round.cells[c] & (1u << (sup[a] - 1)))) continue;
        M[a][n] += Rational(round.cell_size(c));
        for (int b = 0; b < n; ++b)
          if (round.cells[c] & (1u << (sup[b] - 1))) M[a][b] += Rational(1);
      }
    auto x = n == 0 ? std::optional<std::vector<Rational>>(std::vector<Rational>{}) : solve_square(M);
    if (!x) continue;
    bool ok = true;
    for (const auto& v : *x)
      if (v.sign() < 0) {
        ok = false;
        break;
      }
    if (!ok) continue;

    std::map<int, Rational> alpha;
    for (int k : nodes) alpha[k] = Rational(0);
    for (int a = 0; a < n; ++a) alpha[sup[a]] = (*x)[a];
    std::map<int, Rational> tau;
    for (int c : nonempty) {
      Rational s(0);
      for (int k : nodes)
        if (round.cells[c] & (1u << (k - 1))) s += alpha[k];
      tau[c] = Rational(round.cell_size(c)) - s;
    }
    // gradient sign condition on the variables held at zero
    for (int i = 0; i < f && ok; ++i) {
      if (support & (1u << i)) continue;
      Rational grad(0);
      for (int c : nonempty)
        if (round.cells[c] & (1u << (free_nodes[i] - 1))) grad += tau[c];
      if (grad.sign() > 0) ok = false;
    }
    if (!ok) continue;

    Rational obj(0);
    for (const auto& [_, t] : tau) obj += t * t;
    return obj;
  }
  throw std::logic_error("no optimality-condition point found");
}

bool feasibility_by_vertex_enumeration(const ClusterRound& round, int receiver) {
  int size = round.size();
  auto profile = analysis::deficit_profile(round);

  // variables: one per (missing nonempty cell, member of that cell)
  struct Var {
    int cell;
    int sender;
  };
  std::vector<Var> vars;
  std::vector<int> demand_cells;
  for (size_t c = 0; c < round.cells.size(); ++c) {
    if (round.cells[c] & (1u << (receiver - 1))) continue;
    if (round.cell_size(static_cast<int>(c)) == 0) continue;
    demand_cells.push_back(static_cast<int>(c));
    for (int j : mask_to_nodes(round.cells[c])) vars.push_back({static_cast<int>(c), j});
  }
  if (vars.empty()) return true;
  if (vars.size() > 6) throw std::invalid_argument("too many supply variables for vertex enumeration");
  int v = static_cast<int>(vars.size());

  // constraints in the form  sum coef * beta  (>= | <=)  bound
  struct Constraint {
    std::vector<Rational> coef;
    Rational bound;
    bool ge;
  };
  std::vector<Constraint> cons;
  for (int c : demand_cells) {
    Constraint cn{std::vector<Rational>(v, Rational(0)), Rational((size - 1) * round.cell_size(c)), true};
    for (int i = 0; i < v; ++i)
      if (vars[i].cell == c) cn.coef[i] = Rational(1);
    cons.push_back(std::move(cn));
  }
  std::map<int, Constraint> by_sender;
  for (int i = 0; i < v; ++i) {
    auto [it, fresh] = by_sender.try_emplace(
        vars[i].sender,
        Constraint{std::vector<Rational>(v, Rational(0)), Rational(std::max(profile.at(vars[i].sender).n_value, 0LL)),
                   false});
    it->second.coef[i] = Rational(1);
  }
  for (auto& [_, cn] : by_sender) cons.push_back(std::move(cn));
  for (int i = 0; i < v; ++i) {
    Constraint cn{std::vector<Rational>(v, Rational(0)), Rational(0), true};
    cn.coef[i] = Rational(1);
    cons.push_back(std::move(cn));
  }

  auto satisfies_all = [&](const std::vector<Rational>& beta) {
    for (const Constraint& cn : cons) {
      Rational lhs(0);
      for (int i = 0; i < v; ++i) lhs += cn.coef[i] * beta[i];
      if (cn.ge ? lhs < cn.bound : lhs > cn.bound) return false;
    }
    return true;
  };

  // every vertex of the (bounded) feasible region is the unique solution of
  // some v active constraints, so scanning all v-subsets decides emptiness
  int m = static_cast<int>(cons.size());
  std::vector<int> pick(v);
  std::function<bool(int, int)> scan = [&](int start, int depth) {
    if (depth == v) {
      std::vector<std::vector<Rational>> M(v, std::vector<Rational>(v + 1));
      for (int r = 0; r < v; ++r) {
        for (int c = 0; c < v; ++c) M[r][c] = cons[pick[r]].coef[c];
        M[r][v] = cons[pick[r]].bound;
      }
      auto x = solve_square(M);
      return x && satisfies_all(*x);
    }
    for (int i = start; i <= m - (v - depth); ++i) {
      pick[depth] = i;
      if (scan(i + 1, depth + 1)) return true;
    }
    return false;
  };
  return scan(0, 0);
}

}  // namespace cdc::oracles
