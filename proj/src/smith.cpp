#include "topsurg/smith.hpp"

#include <utility>

#include "topsurg/error.hpp"

namespace topsurg {

IntegerMatrix::IntegerMatrix(std::initializer_list<std::initializer_list<long long>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
  data_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw Error(ErrorKind::InvalidArgument, "ragged matrix literal");
    for (long long v : row) data_.emplace_back(v);
  }
}

namespace {

void swap_rows(IntegerMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(a, c), m(b, c));
}

void swap_cols(IntegerMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t r = 0; r < m.rows(); ++r) std::swap(m(r, a), m(r, b));
}

// row[dst] -= q * row[src]
void sub_row(IntegerMatrix& m, std::size_t dst, std::size_t src, const BigInt& q) {
  for (std::size_t c = 0; c < m.cols(); ++c) m(dst, c) -= q * m(src, c);
}

void sub_col(IntegerMatrix& m, std::size_t dst, std::size_t src, const BigInt& q) {
  for (std::size_t r = 0; r < m.rows(); ++r) m(r, dst) -= q * m(r, src);
}

// Moves the smallest nonzero entry of the trailing block to (t, t).
bool place_pivot(IntegerMatrix& m, std::size_t t) {
  bool found = false;
  std::size_t br = 0, bc = 0;
  BigInt best;
  for (std::size_t r = t; r < m.rows(); ++r) {
    for (std::size_t c = t; c < m.cols(); ++c) {
      if (m(r, c) == 0) continue;
      BigInt a = abs(m(r, c));
      if (!found || a < best) {
        found = true;
        best = a;
        br = r;
        bc = c;
      }
    }
  }
  if (!found) return false;
  swap_rows(m, t, br);
  swap_cols(m, t, bc);
  return true;
}

}  // namespace

SmithForm smith_normal_form(IntegerMatrix m) {
  SmithForm out;
  const std::size_t limit = std::min(m.rows(), m.cols());
  for (std::size_t t = 0; t < limit; ++t) {
    if (!place_pivot(m, t)) break;
    while (true) {
      bool dirty = false;
      for (std::size_t r = t + 1; r < m.rows(); ++r) {
        if (m(r, t) == 0) continue;
        sub_row(m, r, t, m(r, t) / m(t, t));
        if (m(r, t) != 0) dirty = true;
      }
      for (std::size_t c = t + 1; c < m.cols(); ++c) {
        if (m(t, c) == 0) continue;
        sub_col(m, c, t, m(t, c) / m(t, t));
        if (m(t, c) != 0) dirty = true;
      }
      if (dirty) {
        place_pivot(m, t);
        continue;
      }
      // Row and column are clear; enforce that the pivot divides the rest.
      bool fixed = true;
      for (std::size_t r = t + 1; r < m.rows() && fixed; ++r) {
        for (std::size_t c = t + 1; c < m.cols(); ++c) {
          if (m(r, c) % m(t, t) != 0) {
            for (std::size_t k = t; k < m.cols(); ++k) m(t, k) += m(r, k);
            fixed = false;
            break;
          }
        }
      }
      if (fixed) break;
    }
    out.factors.push_back(abs(m(t, t)));
    ++out.rank;
  }
  return out;
}

}  // namespace topsurg
