// One-shot coded transmission. Per cluster-round a small nonnegative
// least-squares problem balances how much of each cell every member node
// sends; senders multicast Vandermonde combinations of their segments and
// each receiver decodes every block in isolation.
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cdc/analysis.hpp"
#include "cdc/gf.hpp"
#include "cdc/transcript.hpp"

namespace cdc::osct {

using algebra::Rational;
using analysis::Analysis;
using analysis::ClusterRound;
using analysis::DeficitProfile;
using instance::SystemInstance;

struct AlphaSolution {
  uint32_t cluster = 0;
  int z = 0;
  std::map<int, Rational> alpha;  // per node of the cluster, >= 0
  std::vector<Rational> tau;      // per cell: |V_cell| - sum of member alphas
  Rational objective;             // sum of squared cell residuals
  bool closed_form = false;       // solved by the balanced-round shortcut
};

// Exact global optimum. Shortcut: when every cell is nonempty and every
// deficit ratio is below (|S|-z)/(z-1), a closed form applies. General path:
// nodes touching an empty cell are pinned to zero, then an exhaustive
// active-set search over the remaining variables; ties on the objective break
// toward the lexicographically smallest alpha vector.
AlphaSolution solve_p_osct(const ClusterRound& round, const DeficitProfile& profile);
AlphaSolution solve_p_osct(const ClusterRound& round);

// Whether the closed-form shortcut applies to this round.
bool closed_form_applicable(const ClusterRound& round, const DeficitProfile& profile);

// Per-round transmitted volume in IV units:
// C(|S|-2, z-1) * sum(alpha) plus all positive cell residuals.
Rational round_cost(const ClusterRound& round, const AlphaSolution& sol);

Rational osct_load(const Analysis& a);
Rational osct_load(const SystemInstance& inst);

struct OptimalityCheck {
  bool optimal = false;
  // rounds with nonzero objective: (cluster, z, objective)
  std::vector<std::tuple<uint32_t, int, Rational>> violations;
};

// The load is provably minimal when every round's objective vanishes.
OptimalityCheck check_one_shot_optimality(const Analysis& a);
OptimalityCheck check_one_shot_optimality(const SystemInstance& inst);

struct ShuffleOutcome {
  bool ok = false;
  Rational measured_load;  // from the transcript, in IV units over QN
  std::string error;
};

// Encode every round, decode at every receiver, and verify payloads
// bit-exactly. Appends one record per message block to the transcript when
// one is supplied.
ShuffleOutcome run_shuffle(const SystemInstance& inst, const Analysis& a, const algebra::Field& field,
                           uint64_t payload_seed, ShuffleTranscript* transcript);

}  // namespace cdc::osct
