#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace cdc::cli {

// Exit codes shared by all commands.
inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitDecode = 3;

struct RunOptions {
  std::string instance_path;
  std::vector<std::string> schemes;  // subset of {uncoded, osct, fsct}; empty means all
  uint64_t seed = 1;
  bool verify = true;
  std::string transcript_path;  // empty: no transcript
  int field_bits = 16;
};

// Loads an instance, reports the bound and the requested loads as JSON, and
// verifies end-to-end recovery unless told not to.
int cmd_run(const RunOptions& opt, std::ostream& out, std::ostream& err);

struct SweepOptions {
  std::string config_path;  // empty: all defaults
  bool seed_override = false;
  uint64_t seed = 1;
};

// Reproduces the load-bias experiment: random 4-node instances over a grid of
// bias values, loads per sample plus per-bias means, CSV on stdout.
int cmd_sweep(const SweepOptions& opt, std::ostream& out, std::ostream& err);

// Runs the built-in golden suite (worked examples, closed forms, the update
// rule edge case).  Returns 1 on any mismatch.
int cmd_goldens(bool list_only, std::ostream& out, std::ostream& err);

struct GenOptions {
  std::string kind;  // homogeneous | semi_homogeneous | random_by_load | three_node
  int K = 0, r = 0, s = 0, N = 0, Q = 0;
  std::string levels;     // semi_homogeneous: "s:count,s:count"
  std::string m_loads;    // random_by_load: comma-separated rationals
  std::string w_loads;
  std::string placement;  // three_node: per-node file lists, e.g. "1,2;2,3;1,3"
  uint64_t seed = 1;
  std::string out_path;  // empty: stdout
};

// Generates an instance from a named family and writes its JSON.
int cmd_gen(const GenOptions& opt, std::ostream& out, std::ostream& err);

}  // namespace cdc::cli
