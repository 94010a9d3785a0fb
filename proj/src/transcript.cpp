#include "cdc/transcript.hpp"

#include <stdexcept>

#include <json.hpp>

#include "cdc/combinatorics.hpp"

namespace cdc {

using algebra::Rational;

Rational ShuffleTranscript::measured_load(long long Q, long long N) const {
  std::map<std::pair<uint32_t, int>, long long> sent;
  for (const auto& b : blocks) sent[{b.cluster, b.round_z}] += b.n_symbols;
  Rational total(0);
  for (const auto& [key, count] : sent) {
    auto it = subsymbols_per_unit.find(key);
    if (it == subsymbols_per_unit.end() || it->second <= 0)
      throw std::logic_error("transcript: round without a sub-symbol scale");
    total += Rational(count, it->second);
  }
  return total / Rational(Q * N);
}

void ShuffleTranscript::write_jsonl(std::ostream& out) const {
  for (const auto& b : blocks) {
    nlohmann::json j;
    j["scheme"] = b.scheme;
    j["cluster"] = mask_to_nodes(b.cluster);
    j["round"] = b.round_z;
    j["sender"] = b.sender;
    j["n_symbols"] = b.n_symbols;
    j["sub_symbol_bits"] = b.sub_symbol_bits;
    if (b.n_lcs >= 0) j["n_lcs"] = b.n_lcs;
    out << j.dump() << "\n";
  }
}

uint64_t mix_seed(uint64_t a, uint64_t b) {
  uint64_t x = a ^ (b + 0x9E3779B97F4A7C15ULL + (a << 6) + (a >> 2));
  x ^= x >> 30;
  x *= 0xBF58476D1CE4E5B9ULL;
  x ^= x >> 27;
  x *= 0x94D049BB133111EBULL;
  x ^= x >> 31;
  return x;
}

uint16_t payload_symbol(uint64_t seed, analysis::IVKey key, long long pos, int field_bits) {
  uint64_t h = mix_seed(seed, static_cast<uint64_t>(key.q) << 32 | static_cast<uint32_t>(key.n));
  h = mix_seed(h, static_cast<uint64_t>(pos));
  return static_cast<uint16_t>(h & ((1u << field_bits) - 1));
}

}  // namespace cdc
