// Copyright 2026 The seqcfr Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "seqcfr/backend.hpp"
#include "seqcfr/errors.hpp"

namespace seqcfr {

using Vector = std::vector<double>;

struct Triplet {
  int row;
  int col;
  double value;
};

// Compressed sparse row matrix with double values.
class SparseMatrix {
 public:
  SparseMatrix() : row_offsets_(1, 0) {}

  // Takes ownership of raw CSR arrays and checks them.
  SparseMatrix(int rows, int cols, std::vector<int64_t> row_offsets,
               std::vector<int> col_indices, std::vector<double> values)
      : rows_(rows),
        cols_(cols),
        row_offsets_(std::move(row_offsets)),
        col_indices_(std::move(col_indices)),
        values_(std::move(values)) {
    Validate();
  }

  // Builds from unordered triplets; duplicate coordinates are summed.
  static SparseMatrix FromTriplets(int rows, int cols, std::vector<Triplet> triplets) {
    for (const Triplet& t : triplets) {
      if (t.row < 0 || t.row >= rows || t.col < 0 || t.col >= cols) {
        throw DimensionError("triplet (" + std::to_string(t.row) + ", " +
                             std::to_string(t.col) + ") outside " + std::to_string(rows) +
                             "x" + std::to_string(cols));
      }
    }
    // Stable, so duplicates are summed in insertion order.
    std::stable_sort(triplets.begin(), triplets.end(), [](const Triplet& a, const Triplet& b) {
      return std::tie(a.row, a.col) < std::tie(b.row, b.col);
    });
    std::vector<int64_t> offsets(rows + 1, 0);
    std::vector<int> cols_out;
    std::vector<double> vals;
    cols_out.reserve(triplets.size());
    vals.reserve(triplets.size());
    for (size_t i = 0; i < triplets.size(); ++i) {
      const Triplet& t = triplets[i];
      if (i > 0 && triplets[i - 1].row == t.row && triplets[i - 1].col == t.col) {
        vals.back() += t.value;
        continue;
      }
      cols_out.push_back(t.col);
      vals.push_back(t.value);
      ++offsets[t.row + 1];
    }
    std::partial_sum(offsets.begin(), offsets.end(), offsets.begin());
    return SparseMatrix(rows, cols, std::move(offsets), std::move(cols_out), std::move(vals));
  }

  static SparseMatrix Identity(int n) {
    std::vector<int64_t> offsets(n + 1);
    std::iota(offsets.begin(), offsets.end(), 0);
    std::vector<int> cols(n);
    std::iota(cols.begin(), cols.end(), 0);
    return SparseMatrix(n, n, std::move(offsets), std::move(cols), std::vector<double>(n, 1.0));
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int64_t nnz() const { return static_cast<int64_t>(values_.size()); }

  std::span<const int64_t> row_offsets() const { return row_offsets_; }
  std::span<const int> col_indices() const { return col_indices_; }
  std::span<const double> values() const { return values_; }
  std::span<double> mutable_values() { return values_; }

  double at(int r, int c) const {
    const auto begin = col_indices_.begin() + row_offsets_[r];
    const auto end = col_indices_.begin() + row_offsets_[r + 1];
    const auto it = std::lower_bound(begin, end, c);
    return it != end && *it == c ? values_[it - col_indices_.begin()] : 0.0;
  }

  // Explicit transpose. Within each output row, entries keep the order of
  // their source rows, so column indices stay strictly increasing.
  SparseMatrix Transpose() const {
    std::vector<int64_t> offsets(cols_ + 1, 0);
    for (int c : col_indices_) ++offsets[c + 1];
    std::partial_sum(offsets.begin(), offsets.end(), offsets.begin());
    std::vector<int64_t> cursor(offsets.begin(), offsets.end() - 1);
    std::vector<int> cols(col_indices_.size());
    std::vector<double> vals(values_.size());
    for (int r = 0; r < rows_; ++r) {
      for (int64_t k = row_offsets_[r]; k < row_offsets_[r + 1]; ++k) {
        const int64_t dst = cursor[col_indices_[k]]++;
        cols[dst] = r;
        vals[dst] = values_[k];
      }
    }
    return SparseMatrix(cols_, rows_, std::move(offsets), std::move(cols), std::move(vals));
  }

  // For each stored entry of Transpose(), the index of the same entry here.
  std::vector<int64_t> TransposePermutation() const {
    std::vector<int64_t> offsets(cols_ + 1, 0);
    for (int c : col_indices_) ++offsets[c + 1];
    std::partial_sum(offsets.begin(), offsets.end(), offsets.begin());
    std::vector<int64_t> perm(values_.size());
    for (int r = 0; r < rows_; ++r) {
      for (int64_t k = row_offsets_[r]; k < row_offsets_[r + 1]; ++k) {
        perm[offsets[col_indices_[k]]++] = k;
      }
    }
    return perm;
  }

  size_t bytes() const {
    return row_offsets_.capacity() * sizeof(int64_t) + col_indices_.capacity() * sizeof(int) +
           values_.capacity() * sizeof(double);
  }

  bool operator==(const SparseMatrix&) const = default;

 private:
  void Validate() const {
    if (rows_ < 0 || cols_ < 0) throw DimensionError("negative matrix dimension");
    if (static_cast<int64_t>(row_offsets_.size()) != int64_t{rows_} + 1) {
      throw std::invalid_argument("CSR: row offsets must have rows + 1 entries");
    }
    if (row_offsets_.front() != 0 || row_offsets_.back() != nnz() ||
        col_indices_.size() != values_.size()) {
      throw std::invalid_argument("CSR: offsets do not match the stored entries");
    }
    for (int r = 0; r < rows_; ++r) {
      if (row_offsets_[r] > row_offsets_[r + 1]) {
        throw std::invalid_argument("CSR: row offsets must be non-decreasing");
      }
      for (int64_t k = row_offsets_[r]; k < row_offsets_[r + 1]; ++k) {
        if (col_indices_[k] < 0 || col_indices_[k] >= cols_) {
          throw std::invalid_argument("CSR: column index out of range");
        }
        if (k > row_offsets_[r] && col_indices_[k] <= col_indices_[k - 1]) {
          throw std::invalid_argument("CSR: column indices must increase within a row");
        }
      }
    }
  }

  int rows_ = 0;
  int cols_ = 0;
  std::vector<int64_t> row_offsets_;
  std::vector<int> col_indices_;
  std::vector<double> values_;
};

// A matrix stored together with its explicit transpose so that products in
// both directions are row-parallel.
class SparseOperator {
 public:
  SparseOperator() = default;
  explicit SparseOperator(SparseMatrix m) : forward_(std::move(m)), transpose_(forward_.Transpose()) {}

  const SparseMatrix& matrix() const { return forward_; }
  const SparseMatrix& transpose() const { return transpose_; }
  int rows() const { return forward_.rows(); }
  int cols() const { return forward_.cols(); }
  int64_t nnz() const { return forward_.nnz(); }
  size_t bytes() const { return forward_.bytes() + transpose_.bytes(); }

 private:
  SparseMatrix forward_;
  SparseMatrix transpose_;
};

namespace internal {

inline void CheckSize(size_t got, size_t want, const char* what) {
  if (got != want) {
    throw DimensionError(std::string(what) + ": length " + std::to_string(got) +
                         ", expected " + std::to_string(want));
  }
}

}  // namespace internal

// y = M x (accumulate = false) or y += M x (accumulate = true). `x` and `y`
// must not alias.
inline void SpmvInto(const SparseMatrix& m, std::span<const double> x, std::span<double> y,
                     Backend& backend, bool accumulate = false) {
  internal::CheckSize(x.size(), m.cols(), "spmv input");
  internal::CheckSize(y.size(), m.rows(), "spmv output");
  const int64_t* offsets = m.row_offsets().data();
  const int* cols = m.col_indices().data();
  const double* vals = m.values().data();
  const double* xs = x.data();
  double* ys = y.data();
  backend.For(m.rows(), [=](int64_t begin, int64_t end) {
    for (int64_t r = begin; r < end; ++r) {
      double sum = accumulate ? ys[r] : 0.0;
      for (int64_t k = offsets[r]; k < offsets[r + 1]; ++k) sum += vals[k] * xs[cols[k]];
      ys[r] = sum;
    }
  });
  backend.add_work(static_cast<uint64_t>(m.nnz()));
}

inline Vector Spmv(const SparseMatrix& m, std::span<const double> x, Backend& backend) {
  internal::CheckSize(x.size(), m.cols(), "spmv input");
  Vector y(m.rows());
  SpmvInto(m, x, y, backend);
  return y;
}

// Mᵀ x through the stored transpose.
inline Vector SpmvT(const SparseOperator& m, std::span<const double> x, Backend& backend) {
  return Spmv(m.transpose(), x, backend);
}

// Mᵀ x for a bare matrix; builds the transpose on the fly.
inline Vector SpmvT(const SparseMatrix& m, std::span<const double> x, Backend& backend) {
  internal::CheckSize(x.size(), m.rows(), "spmv_t input");
  return Spmv(m.Transpose(), x, backend);
}

inline Vector Spmv(const SparseOperator& m, std::span<const double> x, Backend& backend) {
  return Spmv(m.matrix(), x, backend);
}

// Elementwise kernels. The *Into forms write into `out`, which may alias an
// input; the value-returning forms allocate.

template <typename Op>
inline void Elementwise(std::span<const double> x, std::span<const double> y,
                        std::span<double> out, Backend& backend, Op op) {
  internal::CheckSize(y.size(), x.size(), "elementwise operand");
  internal::CheckSize(out.size(), x.size(), "elementwise output");
  const double* xs = x.data();
  const double* ys = y.data();
  double* os = out.data();
  backend.For(static_cast<int64_t>(x.size()), [=](int64_t begin, int64_t end) {
    for (int64_t i = begin; i < end; ++i) os[i] = op(xs[i], ys[i]);
  });
  backend.add_work(x.size());
}

template <typename Op>
inline void Elementwise(std::span<const double> x, std::span<double> out, Backend& backend, Op op) {
  internal::CheckSize(out.size(), x.size(), "elementwise output");
  const double* xs = x.data();
  double* os = out.data();
  backend.For(static_cast<int64_t>(x.size()), [=](int64_t begin, int64_t end) {
    for (int64_t i = begin; i < end; ++i) os[i] = op(xs[i]);
  });
  backend.add_work(x.size());
}

inline void AddInto(std::span<const double> x, std::span<const double> y, std::span<double> out,
                    Backend& backend) {
  Elementwise(x, y, out, backend, [](double a, double b) { return a + b; });
}

inline void SubtractInto(std::span<const double> x, std::span<const double> y,
                         std::span<double> out, Backend& backend) {
  Elementwise(x, y, out, backend, [](double a, double b) { return a - b; });
}

// out = a * x + y
inline void AxpyInto(double a, std::span<const double> x, std::span<const double> y,
                     std::span<double> out, Backend& backend) {
  Elementwise(x, y, out, backend, [a](double p, double q) { return a * p + q; });
}

inline void HadamardMulInto(std::span<const double> x, std::span<const double> y,
                            std::span<double> out, Backend& backend) {
  Elementwise(x, y, out, backend, [](double a, double b) { return a * b; });
}

inline void PositivePartInto(std::span<const double> x, std::span<double> out, Backend& backend) {
  Elementwise(x, out, backend, [](double a) { return a > 0.0 ? a : 0.0; });
}

inline void ScaleInto(double a, std::span<const double> x, std::span<double> out, Backend& backend) {
  Elementwise(x, out, backend, [a](double v) { return a * v; });
}

// out[i] = x[i] / y[i], or defaults[i] where y[i] == 0.
inline void HadamardDivOrDefaultInto(std::span<const double> x, std::span<const double> y,
                                     std::span<const double> defaults, std::span<double> out,
                                     Backend& backend) {
  internal::CheckSize(y.size(), x.size(), "hadamard_div denominator");
  internal::CheckSize(defaults.size(), x.size(), "hadamard_div defaults");
  internal::CheckSize(out.size(), x.size(), "hadamard_div output");
  const double* xs = x.data();
  const double* ys = y.data();
  const double* ds = defaults.data();
  double* os = out.data();
  backend.For(static_cast<int64_t>(x.size()), [=](int64_t begin, int64_t end) {
    for (int64_t i = begin; i < end; ++i) os[i] = ys[i] == 0.0 ? ds[i] : xs[i] / ys[i];
  });
  backend.add_work(x.size());
}

inline Vector Add(std::span<const double> x, std::span<const double> y, Backend& backend) {
  Vector out(x.size());
  AddInto(x, y, out, backend);
  return out;
}

inline Vector Subtract(std::span<const double> x, std::span<const double> y, Backend& backend) {
  Vector out(x.size());
  SubtractInto(x, y, out, backend);
  return out;
}

inline Vector Axpy(double a, std::span<const double> x, std::span<const double> y, Backend& backend) {
  Vector out(x.size());
  AxpyInto(a, x, y, out, backend);
  return out;
}

inline Vector HadamardMul(std::span<const double> x, std::span<const double> y, Backend& backend) {
  Vector out(x.size());
  HadamardMulInto(x, y, out, backend);
  return out;
}

inline Vector HadamardDivOrDefault(std::span<const double> x, std::span<const double> y,
                                   std::span<const double> defaults, Backend& backend) {
  Vector out(x.size());
  HadamardDivOrDefaultInto(x, y, defaults, out, backend);
  return out;
}

inline Vector PositivePart(std::span<const double> x, Backend& backend) {
  Vector out(x.size());
  PositivePartInto(x, out, backend);
  return out;
}

inline Vector Scale(double a, std::span<const double> x, Backend& backend) {
  Vector out(x.size());
  ScaleInto(a, x, out, backend);
  return out;
}

inline bool AllFinite(std::span<const double> x) {
  return std::all_of(x.begin(), x.end(), [](double v) { return std::isfinite(v); });
}

inline double MaxAbsDiff(std::span<const double> a, std::span<const double> b) {
  internal::CheckSize(b.size(), a.size(), "max_abs_diff");
  double m = 0.0;
  for (size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace seqcfr
