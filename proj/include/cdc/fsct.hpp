#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "cdc/analysis.hpp"
#include "cdc/gf.hpp"
#include "cdc/instance.hpp"
#include "cdc/rational.hpp"
#include "cdc/transcript.hpp"

namespace cdc::fsct {

using algebra::Rational;
using analysis::Analysis;
using analysis::ClusterRound;
using instance::SystemInstance;

struct DeficitCheck {
  bool ok = false;
  std::vector<int> negative_nodes;
};

// True when every node's balance (|S|-z)*known - (z-1)*requested is nonnegative.
DeficitCheck check_deficit(const ClusterRound& round);

// Supply witness for one receiver: beta[(cell, sender)] is the share of the
// cell's demand, in transmission units, charged to that sender.
struct FeasibilityWitness {
  bool feasible = false;
  std::map<std::pair<uint32_t, int>, Rational> beta;
};

// Exact max-flow check that the receiver's demand of (|S|-1)*|V| per missing
// cell can be met by the other nodes under their nonnegative-balance caps.
FeasibilityWitness check_feasible(const ClusterRound& round, int receiver);

// Final per-sender transmission counts for one round, in IV units.  When some
// receiver is infeasible under the plain balances, every count is raised to
// the relaxed value that restores feasibility for all receivers at once.
struct RoundParameters {
  uint32_t cluster = 0;
  int z = 0;
  std::map<int, long long> balance;  // raw per-node balance values
  std::map<int, Rational> n_bar;     // transmission counts actually used
  bool deficit_ok = false;
  bool feasible_ok = false;
  bool updated = false;
  Rational cost() const;  // sum of n_bar over (|S|-1)
};

RoundParameters update_parameters(const ClusterRound& round);

// Witness used by the coder for one receiver of one round: the flow witness
// when the plain balances are feasible, the closed-form relaxed witness
// otherwise.
FeasibilityWitness coding_witness(const ClusterRound& round, const RoundParameters& params, int receiver);

Rational fsct_load(const Analysis& a);
Rational fsct_load(const SystemInstance& inst);

struct OptimalityCheck {
  bool optimal = false;
  // cluster, round size, failed condition ("deficit" or "feasibility")
  std::vector<std::tuple<uint32_t, int, std::string>> violations;
};

// The few-shot scheme meets the lower bound exactly iff every round passes
// both the balance and the feasibility condition.
OptimalityCheck check_few_shot_optimality(const Analysis& a);
OptimalityCheck check_few_shot_optimality(const SystemInstance& inst);

// Decodability certificate at sub-symbol granularity: assigns every unknown
// sub-symbol of every receiver to a distinct transmission row of a sender
// that knows it, following the witness amounts.  Returns false when any
// receiver cannot be covered.
bool certify_nonzero_path(const ClusterRound& round, const RoundParameters& params);

struct ShuffleOutcome {
  bool ok = false;
  Rational measured_load;
  std::string error;
};

// Runs the few-shot shuffle end to end: every sender broadcasts random linear
// combinations of everything it knows in the round, every receiver solves for
// the sub-symbols it misses, and the recovered values are compared against
// the originals.  Rounds whose random draw turns out singular are redrawn, up
// to a small retry budget.
ShuffleOutcome run_shuffle(const SystemInstance& inst, const Analysis& a, const algebra::Field& field,
                           uint64_t payload_seed, ShuffleTranscript* transcript);

}  // namespace cdc::fsct
