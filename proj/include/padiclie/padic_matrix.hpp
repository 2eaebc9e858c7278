#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "padiclie/padic_int.hpp"

namespace padiclie {

/// Dense row-major matrix of residues modulo p^prec.
class PadicMatrix {
 public:
  PadicMatrix() = default;
  PadicMatrix(PadicContext ctx, std::size_t rows, std::size_t cols);

  static PadicMatrix identity(PadicContext ctx, std::size_t n);
  static PadicMatrix from_integers(PadicContext ctx,
                                   const std::vector<std::vector<std::int64_t>>& rows);

  const PadicContext& ctx() const noexcept { return ctx_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  std::uint64_t operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  std::uint64_t& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  PadicInt at(std::size_t r, std::size_t c) const { return PadicInt(ctx_, (*this)(r, c)); }
  void set(std::size_t r, std::size_t c, const PadicInt& v);

  std::span<const std::uint64_t> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }
  std::span<std::uint64_t> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  void append_row(std::span<const std::uint64_t> values);
  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);

  PadicMatrix operator*(const PadicMatrix& o) const;
  PadicMatrix transposed() const;
  // Same integer entries read modulo p^prec' (lifting keeps the residues).
  PadicMatrix with_precision(int prec) const;
  // Every entry multiplied by p^k.
  PadicMatrix scaled_by_power(int k) const;
  bool is_zero() const;

  bool operator==(const PadicMatrix& o) const = default;

 private:
  PadicContext ctx_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::uint64_t> data_;
};

std::vector<std::uint64_t> row_times_matrix(std::span<const std::uint64_t> v, const PadicMatrix& m);

struct HermiteForm {
  PadicMatrix hnf;
  PadicMatrix transform;  // hnf = transform * input
};

/// Row-style Hermite form: pivots p^k, minimal valuation pivot per column
/// (ties to the smallest row), entries above a pivot reduced into [0, p^k).
/// Throws PrecisionError when some column has no pivot.
HermiteForm hermite_normal_form(const PadicMatrix& m);
PadicMatrix hermite_basis(PadicMatrix m);

/// Echelon form that skips columns without a pivot; used for spans that may
/// not have full rank. Zero rows are dropped.
struct EchelonForm {
  PadicMatrix rows;
  std::vector<std::size_t> pivot_cols;
};
EchelonForm echelon_form(PadicMatrix m);

struct SmithForm {
  std::vector<int> valuations;  // ascending; prec marks a zero diagonal entry
  PadicMatrix left;
  PadicMatrix right;  // left * input * right = diag(p^valuations)
};

/// Throws PrecisionError if the input is rank deficient at precision.
SmithForm smith_normal_form(const PadicMatrix& m);
/// Same elimination, never throws; missing pivots report valuation prec.
SmithForm smith_decomposition(const PadicMatrix& m);
std::vector<int> elementary_divisors(PadicMatrix m);

// Sum of elementary divisors, or prec if the matrix is singular at precision.
int determinant_valuation(const PadicMatrix& m);

/// Inverse of a matrix invertible over Z_p; throws NotInvertibleError.
PadicMatrix inverse(const PadicMatrix& m);

/// For an upper triangular basis A with pivots p^{k_i}, the matrix X with
/// A X = p^K I where K = sum k_i. X is exact modulo p^prec because the
/// back-substitution runs at precision prec + K.
struct ScaledInverse {
  PadicMatrix adjugate;
  int shift = 0;  // K
};
ScaledInverse triangular_scaled_inverse(const PadicMatrix& upper);

}  // namespace padiclie
