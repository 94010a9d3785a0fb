#pragma once

#include "cdc/instance.hpp"

namespace cdc::examples {

// 4-node instance whose one-shot scheme meets the lower bound (35/56).
inline instance::SystemInstance example1() {
  instance::SystemInstance inst;
  inst.K = 4;
  inst.N = 8;
  inst.Q = 7;
  inst.placement = {{1, 2, 3, 6}, {1, 4, 5, 8}, {3, 4}, {2, 5, 7}};
  inst.assignment = {{1, 2, 7}, {3, 4}, {1, 3, 5, 6}, {2, 4, 5, 6}};
  return inst;
}

// 4-node instance where one-shot transmission is strictly suboptimal (2/3)
// while the few-shot scheme still meets the bound (40/63).
inline instance::SystemInstance example2() {
  instance::SystemInstance inst;
  inst.K = 4;
  inst.N = 7;
  inst.Q = 6;
  inst.placement = {{1, 2, 5, 6}, {3, 4, 7}, {1, 4}, {2, 3}};
  inst.assignment = {{1, 2}, {4, 5}, {1, 3, 4}, {2, 5, 6}};
  return inst;
}

// Minimal instance where the per-node balances are all nonnegative yet two
// receivers cannot be served, forcing the relaxed transmission counts.
inline instance::SystemInstance update_rule_counterexample() {
  instance::SystemInstance inst;
  inst.K = 4;
  inst.N = 3;
  inst.Q = 2;
  inst.placement = {{1, 2}, {3}, {3}, {1, 2}};
  inst.assignment = {{2}, {1}, {1}, {2}};
  return inst;
}

}  // namespace cdc::examples
