// Shuffle transcripts and synthetic payloads. Every message block a scheme
// emits lands here with its size in sub-symbols, which lets tests check that
// the analytic load and the bytes actually sent agree exactly.
#pragma once

#include <cstdint>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "cdc/analysis.hpp"
#include "cdc/rational.hpp"

namespace cdc {

struct BlockRecord {
  std::string scheme;       // "osct" or "fsct"
  uint32_t cluster = 0;
  int round_z = 0;
  int sender = 0;
  long long n_symbols = 0;  // sub-symbols in this block
  int sub_symbol_bits = 0;
  long long n_lcs = -1;     // random linear combinations (fsct only)
};

struct ShuffleTranscript {
  std::vector<BlockRecord> blocks;
  // Sub-symbols that make up one IV unit, per (cluster, z); needed to convert
  // transmitted sub-symbol counts back into IV units.
  std::map<std::pair<uint32_t, int>, long long> subsymbols_per_unit;

  void add(const BlockRecord& rec) { blocks.push_back(rec); }

  // Total transmitted volume in IV units divided by QN.
  algebra::Rational measured_load(long long Q, long long N) const;

  // One JSON object per line, in emission order.
  void write_jsonl(std::ostream& out) const;
};

// Deterministic synthetic sub-symbol for IV (q, n) at position pos; the
// encoder and the verifier both derive payloads from this.
uint16_t payload_symbol(uint64_t seed, analysis::IVKey key, long long pos, int field_bits);

// Seed mixing for per-round and per-attempt random streams.
uint64_t mix_seed(uint64_t a, uint64_t b);

}  // namespace cdc
