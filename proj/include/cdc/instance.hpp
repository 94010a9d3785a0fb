// System instances: K nodes with pre-set file placement and reduce-function
// assignment. Validation, deterministic generators, JSON round-trip.
#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "cdc/rational.hpp"

namespace cdc::instance {

using algebra::Rational;

// Indices are 1-based externally (files 1..N, functions 1..Q, nodes 1..K).
// placement[k-1] and assignment[k-1] are sorted ascending without duplicates.
struct SystemInstance {
  int K = 0;
  int N = 0;
  int Q = 0;
  std::vector<std::vector<int>> placement;   // M_k: files mapped by node k
  std::vector<std::vector<int>> assignment;  // W_k: functions reduced by node k

  Rational mapping_load(int k) const;    // |M_k| / N
  Rational reducing_load(int k) const;   // |W_k| / Q
  Rational computation_load() const;     // sum |M_k| / N
};

struct ValidationReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

// Reports every violated model constraint; an empty report means admissible.
ValidationReport validate(const SystemInstance& inst);

struct ExplicitDesc {
  SystemInstance inst;
};
// Every r-subset of nodes maps N/C(K,r) files; every s-subset reduces
// Q/C(K,s) functions. Subsets are taken in lexicographic order.
struct HomogeneousDesc {
  int K, r, s, N, Q;
};
// Homogeneous placement with one file per r-subset; functions arrive in
// levels: for each level s, Q_s functions are dealt round-robin across the
// lexicographically ordered s-subsets (exactly even when C(K,s) divides Q_s).
struct SemiHomogeneousDesc {
  int K, r;
  std::map<int, int> Qs;  // level s -> number of functions reduced by s nodes
};
// Uniform placement/assignment with |M_k| = round(m_k * N), |W_k| = round(w_k * Q).
// Coverage is repaired deterministically: an unmapped file (unreduced function)
// takes a slot from one covered at least twice, so the set sizes are exact.
struct RandomByLoadDesc {
  int K, N, Q;
  std::vector<Rational> m;  // mapping loads, one per node
  std::vector<Rational> w;  // reducing loads, one per node
  uint64_t seed = 0;
};
// Three nodes with the symmetric assignment W = {1},{2},{3}; placement given.
struct ThreeNodeDesc {
  std::vector<std::vector<int>> placement;
  int N;
};

using InstanceDescriptor =
    std::variant<ExplicitDesc, HomogeneousDesc, SemiHomogeneousDesc, RandomByLoadDesc, ThreeNodeDesc>;

// Deterministic: equal descriptors (and seeds) yield identical instances.
// Throws std::invalid_argument on divisibility violations.
SystemInstance generate(const InstanceDescriptor& desc);

SystemInstance from_json_text(const std::string& text);
std::string to_json_text(const SystemInstance& inst);
SystemInstance load_json(const std::string& path);
void save_json(const SystemInstance& inst, const std::string& path);

}  // namespace cdc::instance
