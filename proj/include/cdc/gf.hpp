// GF(2^m) arithmetic and dense exact linear algebra over the field.
// Multiplication runs on log/exp tables built once per field; the generator is
// found by search at construction, so any irreducible modulus works.
#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace cdc::algebra {

// Default modulus per field size, primitive over GF(2). Index by m; entry
// includes the leading bit (e.g. m=16 -> x^16+x^12+x^3+x+1).
uint32_t default_field_poly(int m);

class Field {
 public:
  explicit Field(int m);
  Field(int m, uint32_t poly);

  int bits() const { return m_; }
  uint32_t modulus() const { return poly_; }
  uint32_t order() const { return (1u << m_) - 1; }  // size of the multiplicative group
  uint16_t generator() const { return gen_; }

  uint16_t add(uint16_t a, uint16_t b) const { return a ^ b; }
  uint16_t mul(uint16_t a, uint16_t b) const {
    if (a == 0 || b == 0) return 0;
    return exp_[(log_[a] + log_[b]) % order()];
  }
  uint16_t inv(uint16_t a) const;
  uint16_t div(uint16_t a, uint16_t b) const { return mul(a, inv(b)); }
  uint16_t pow(uint16_t a, uint64_t e) const;

  // k-th nonzero element in a fixed order (k in [1, order()]): distinct
  // evaluation points for coded blocks.
  uint16_t point(uint32_t k) const;

 private:
  int m_;
  uint32_t poly_;
  uint16_t gen_ = 0;
  std::vector<uint16_t> exp_;   // exp_[i] = gen^i, i in [0, order)
  std::vector<uint32_t> log_;   // log_[exp_[i]] = i
  void build_tables();
};

struct FieldMatrix {
  const Field* field = nullptr;
  int rows = 0;
  int cols = 0;
  std::vector<uint16_t> a;  // row-major

  FieldMatrix() = default;
  FieldMatrix(const Field& f, int r, int c) : field(&f), rows(r), cols(c), a(static_cast<size_t>(r) * c, 0) {}
  uint16_t& at(int r, int c) { return a[static_cast<size_t>(r) * cols + c]; }
  uint16_t at(int r, int c) const { return a[static_cast<size_t>(r) * cols + c]; }
};

// Entry (i, j) = points[j]^i. Any square selection of distinct columns is
// invertible, which is what one-shot decoding leans on. Throws on duplicates.
FieldMatrix vandermonde(const Field& f, const std::vector<uint16_t>& points, int rows);

FieldMatrix matmul(const FieldMatrix& A, const FieldMatrix& B);
std::vector<uint16_t> matvec(const FieldMatrix& A, const std::vector<uint16_t>& x);

// Gaussian elimination. For square or overdetermined consistent systems
// returns the unique solution; returns nullopt when the column rank is
// deficient or the system is inconsistent.
std::optional<std::vector<uint16_t>> solve(const FieldMatrix& A, const std::vector<uint16_t>& b);

int rank(FieldMatrix A);  // by value: elimination scratches the copy

}  // namespace cdc::algebra
