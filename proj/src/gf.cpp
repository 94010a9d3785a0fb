#include "cdc/gf.hpp"

#include <stdexcept>

namespace cdc::algebra {

uint32_t default_field_poly(int m) {
  switch (m) {
    case 2: return 0x7;
    case 3: return 0xB;
    case 4: return 0x13;
    case 5: return 0x25;
    case 6: return 0x43;
    case 7: return 0x83;
    case 8: return 0x11D;
    case 9: return 0x211;
    case 10: return 0x409;
    case 11: return 0x805;
    case 12: return 0x1053;
    case 13: return 0x201B;
    case 14: return 0x4443;
    case 15: return 0x8003;
    case 16: return 0x1100B;
    default: throw std::invalid_argument("field size must be between 2 and 16 bits");
  }
}

namespace {

// Carry-less multiply with reduction; used only to bootstrap the tables.
uint16_t slow_mul(uint16_t a, uint16_t b, int m, uint32_t poly) {
  uint32_t r = 0;
  uint32_t x = a;
  for (int i = 0; i < m; ++i) {
    if ((b >> i) & 1u) r ^= x << i;
  }
  for (int i = 2 * m - 2; i >= m; --i) {
    if ((r >> i) & 1u) r ^= poly << (i - m);
  }
  return static_cast<uint16_t>(r & ((1u << m) - 1));
}

}  // namespace

Field::Field(int m) : Field(m, default_field_poly(m)) {}

Field::Field(int m, uint32_t poly) : m_(m), poly_(poly) {
  if (m < 2 || m > 16) throw std::invalid_argument("field size must be between 2 and 16 bits");
  if ((poly >> m) != 1u) throw std::invalid_argument("modulus must have degree equal to the field size");
  build_tables();
}

void Field::build_tables() {
  const uint32_t n = order();
  exp_.assign(n, 0);
  log_.assign(n + 1, 0);
  // Find a generator: an element whose powers enumerate every nonzero value
  // exactly once. x itself works for all default moduli; the search keeps the
  // construction correct for any irreducible modulus a caller supplies.
  for (uint32_t cand = 2; cand <= n; ++cand) {
    uint16_t v = 1;
    bool ok = true;
    std::vector<bool> seen(n + 1, false);
    for (uint32_t i = 0; i < n; ++i) {
      if (v == 0 || seen[v]) {
        ok = false;
        break;
      }
      seen[v] = true;
      exp_[i] = v;
      log_[v] = i;
      v = slow_mul(v, static_cast<uint16_t>(cand), m_, poly_);
    }
    if (ok && v == 1) {
      gen_ = static_cast<uint16_t>(cand);
      return;
    }
  }
  throw std::invalid_argument("modulus is not irreducible: no generator found");
}

uint16_t Field::inv(uint16_t a) const {
  if (a == 0) throw std::domain_error("field: inverse of zero");
  return exp_[(order() - log_[a]) % order()];
}

uint16_t Field::pow(uint16_t a, uint64_t e) const {
  if (a == 0) return e == 0 ? 1 : 0;
  return exp_[(log_[a] * (e % order())) % order()];
}

uint16_t Field::point(uint32_t k) const {
  if (k == 0 || k > order()) throw std::out_of_range("field: point index out of range");
  return exp_[k - 1];  // 1, g, g^2, ... pairwise distinct
}

FieldMatrix vandermonde(const Field& f, const std::vector<uint16_t>& points, int rows) {
  for (size_t i = 0; i < points.size(); ++i)
    for (size_t j = i + 1; j < points.size(); ++j)
      if (points[i] == points[j]) throw std::invalid_argument("vandermonde: duplicate points");
  FieldMatrix M(f, rows, static_cast<int>(points.size()));
  for (int j = 0; j < M.cols; ++j) {
    uint16_t p = 1;
    for (int i = 0; i < rows; ++i) {
      M.at(i, j) = p;
      p = f.mul(p, points[j]);
    }
  }
  return M;
}

FieldMatrix matmul(const FieldMatrix& A, const FieldMatrix& B) {
  if (A.cols != B.rows) throw std::invalid_argument("matmul: dimension mismatch");
  FieldMatrix C(*A.field, A.rows, B.cols);
  for (int i = 0; i < A.rows; ++i)
    for (int k = 0; k < A.cols; ++k) {
      uint16_t aik = A.at(i, k);
      if (aik == 0) continue;
      for (int j = 0; j < B.cols; ++j) C.at(i, j) ^= A.field->mul(aik, B.at(k, j));
    }
  return C;
}

std::vector<uint16_t> matvec(const FieldMatrix& A, const std::vector<uint16_t>& x) {
  if (static_cast<int>(x.size()) != A.cols) throw std::invalid_argument("matvec: dimension mismatch");
  std::vector<uint16_t> y(A.rows, 0);
  for (int i = 0; i < A.rows; ++i) {
    uint16_t acc = 0;
    for (int j = 0; j < A.cols; ++j) acc ^= A.field->mul(A.at(i, j), x[j]);
    y[i] = acc;
  }
  return y;
}

std::optional<std::vector<uint16_t>> solve(const FieldMatrix& A, const std::vector<uint16_t>& b) {
  if (static_cast<int>(b.size()) != A.rows) throw std::invalid_argument("solve: dimension mismatch");
  if (A.rows < A.cols) return std::nullopt;
  const Field& f = *A.field;
  FieldMatrix M = A;
  std::vector<uint16_t> rhs = b;
  int row = 0;
  std::vector<int> pivot_row(A.cols, -1);
  for (int col = 0; col < A.cols && row < A.rows; ++col) {
    int p = -1;
    for (int r = row; r < A.rows; ++r)
      if (M.at(r, col) != 0) {
        p = r;
        break;
      }
    if (p < 0) return std::nullopt;  // column rank deficient
    for (int c = col; c < A.cols; ++c) std::swap(M.at(p, c), M.at(row, c));
    std::swap(rhs[p], rhs[row]);
    uint16_t piv_inv = f.inv(M.at(row, col));
    for (int c = col; c < A.cols; ++c) M.at(row, c) = f.mul(M.at(row, c), piv_inv);
    rhs[row] = f.mul(rhs[row], piv_inv);
    for (int r = 0; r < A.rows; ++r) {
      if (r == row) continue;
      uint16_t factor = M.at(r, col);
      if (factor == 0) continue;
      for (int c = col; c < A.cols; ++c) M.at(r, c) ^= f.mul(factor, M.at(row, c));
      rhs[r] ^= f.mul(factor, rhs[row]);
    }
    pivot_row[col] = row;
    ++row;
  }
  // Extra rows must have been reduced to 0 = 0, otherwise inconsistent.
  for (int r = row; r < A.rows; ++r)
    if (rhs[r] != 0) return std::nullopt;
  std::vector<uint16_t> x(A.cols, 0);
  for (int col = 0; col < A.cols; ++col) x[col] = rhs[pivot_row[col]];
  return x;
}

int rank(FieldMatrix M) {
  const Field& f = *M.field;
  int r = 0;
  for (int col = 0; col < M.cols && r < M.rows; ++col) {
    int p = -1;
    for (int i = r; i < M.rows; ++i)
      if (M.at(i, col) != 0) {
        p = i;
        break;
      }
    if (p < 0) continue;
    for (int c = col; c < M.cols; ++c) std::swap(M.at(p, c), M.at(r, c));
    uint16_t inv = f.inv(M.at(r, col));
    for (int c = col; c < M.cols; ++c) M.at(r, c) = f.mul(M.at(r, c), inv);
    for (int i = 0; i < M.rows; ++i) {
      if (i == r) continue;
      uint16_t factor = M.at(i, col);
      if (factor == 0) continue;
      for (int c = col; c < M.cols; ++c) M.at(i, c) ^= f.mul(factor, M.at(r, c));
    }
    ++r;
  }
  return r;
}

}  // namespace cdc::algebra
