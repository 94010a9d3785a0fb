#pragma once

#include <map>
#include <utility>

#include "cdc/analysis.hpp"
#include "cdc/instance.hpp"
#include "cdc/rational.hpp"

namespace cdc::oracles {

using algebra::Rational;

// Exclusive storage cells of a 3-node placement: files held by exactly the
// listed nodes.
struct ThreeNodePartition {
  long long s1 = 0, s2 = 0, s3 = 0;
  long long s12 = 0, s13 = 0, s23 = 0;
  long long s123 = 0;
};

ThreeNodePartition three_node_partition(const instance::SystemInstance& inst);

// Closed-form optimal shuffle size for 3 nodes under the symmetric one-
// function-per-node assignment, in IV counts (caller divides by Q*N).
Rational three_node_load(const ThreeNodePartition& p);

// Closed-form load for the homogeneous design where every r-subset stores an
// equal share of files and every s-subset computes an equal share of
// functions.
Rational homogeneous_load(int K, int r, int s);

// Mixture load when reduce assignments are spread over several subset sizes s
// with Q_s functions each.
Rational semi_homogeneous_mixture(int K, int r, const std::map<int, int>& Qs);

// Closed form for the per-(t,d) IV counts of the same design.
std::map<std::pair<int, int>, Rational> a_semi_closed_form(int K, int r, const std::map<int, int>& Qs, long long N);

// Independent per-IV recount of the minimum load for instances with at most
// 6 needed IVs.  Throws std::invalid_argument on larger instances.
Rational brute_force_min_load_tiny(const instance::SystemInstance& inst);

// Independent optimality-condition enumerator for the per-round quadratic
// program: scans variable supports, accepts the first one satisfying
// stationarity, nonnegativity, and the sign condition on the pinned
// gradients, and returns its objective.
Rational exhaustive_posct_objective(const analysis::ClusterRound& round);

// Independent feasibility decision for one receiver's supply system by
// exhaustive rational vertex enumeration.  Only defined for rounds with at
// most 6 supply variables for that receiver; throws otherwise.
bool feasibility_by_vertex_enumeration(const analysis::ClusterRound& round, int receiver);

}  // namespace cdc::oracles
