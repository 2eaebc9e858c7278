#include "padiclie/padic_matrix.hpp"

#include <algorithm>
#include <utility>

#include "padiclie/errors.hpp"

namespace padiclie {

PadicMatrix::PadicMatrix(PadicContext ctx, std::size_t rows, std::size_t cols)
    : ctx_(ctx), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

PadicMatrix PadicMatrix::identity(PadicContext ctx, std::size_t n) {
  PadicMatrix m(ctx, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1 % ctx.modulus();
  return m;
}

PadicMatrix PadicMatrix::from_integers(PadicContext ctx,
                                       const std::vector<std::vector<std::int64_t>>& rows) {
  std::size_t cols = rows.empty() ? 0 : rows.front().size();
  PadicMatrix m(ctx, rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw StructuralError("ragged matrix rows");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = ctx.from_signed(rows[r][c]);
  }
  return m;
}

void PadicMatrix::set(std::size_t r, std::size_t c, const PadicInt& v) {
  if (!(v.context() == ctx_)) throw StructuralError("entry has different (p, prec)");
  (*this)(r, c) = v.residue();
}

void PadicMatrix::append_row(std::span<const std::uint64_t> values) {
  if (rows_ == 0 && cols_ == 0) cols_ = values.size();
  if (values.size() != cols_) throw StructuralError("row length mismatch");
  for (auto v : values) data_.push_back(v % ctx_.modulus());
  ++rows_;
}

void PadicMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  std::swap_ranges(data_.begin() + a * cols_, data_.begin() + (a + 1) * cols_,
                   data_.begin() + b * cols_);
}

void PadicMatrix::swap_cols(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, a), (*this)(r, b));
}

PadicMatrix PadicMatrix::operator*(const PadicMatrix& o) const {
  if (!(ctx_ == o.ctx_)) throw StructuralError("matrix contexts differ");
  if (cols_ != o.rows_) throw StructuralError("matrix shapes do not compose");
  PadicMatrix out(ctx_, rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      std::uint64_t a = (*this)(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < o.cols_; ++j)
        out(i, j) = ctx_.add(out(i, j), ctx_.mul(a, o(k, j)));
    }
  return out;
}

PadicMatrix PadicMatrix::transposed() const {
  PadicMatrix t(ctx_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

PadicMatrix PadicMatrix::with_precision(int prec) const {
  PadicMatrix out(ctx_.with_precision(prec), rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = data_[i] % out.ctx_.modulus();
  return out;
}

PadicMatrix PadicMatrix::scaled_by_power(int k) const {
  PadicMatrix out = *this;
  if (k >= ctx_.prec()) {
    std::fill(out.data_.begin(), out.data_.end(), 0);
    return out;
  }
  std::uint64_t f = ctx_.power(k);
  for (auto& v : out.data_) v = ctx_.mul(v, f);
  return out;
}

bool PadicMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](std::uint64_t v) { return v == 0; });
}

std::vector<std::uint64_t> row_times_matrix(std::span<const std::uint64_t> v, const PadicMatrix& m) {
  if (v.size() != m.rows()) throw StructuralError("vector length does not match matrix rows");
  const auto& ctx = m.ctx();
  std::vector<std::uint64_t> out(m.cols(), 0);
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (v[k] == 0) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) out[j] = ctx.add(out[j], ctx.mul(v[k], m(k, j)));
  }
  return out;
}

namespace {

// row[dst] -= q * row[src]
void row_submul(PadicMatrix& m, std::size_t dst, std::size_t src, std::uint64_t q) {
  if (q == 0) return;
  const auto& ctx = m.ctx();
  for (std::size_t c = 0; c < m.cols(); ++c) {
    std::uint64_t s = m(src, c);
    if (s != 0) m(dst, c) = ctx.sub(m(dst, c), ctx.mul(q, s));
  }
}

void col_submul(PadicMatrix& m, std::size_t dst, std::size_t src, std::uint64_t q) {
  if (q == 0) return;
  const auto& ctx = m.ctx();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    std::uint64_t s = m(r, src);
    if (s != 0) m(r, dst) = ctx.sub(m(r, dst), ctx.mul(q, s));
  }
}

void row_scale(PadicMatrix& m, std::size_t r, std::uint64_t u) {
  const auto& ctx = m.ctx();
  for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = ctx.mul(m(r, c), u);
}

// Normalizes m(r, c) = p^v * unit to exactly p^v, mirroring the row scaling in t.
void normalize_pivot(PadicMatrix& m, PadicMatrix* t, std::size_t r, std::size_t c, int v) {
  const auto& ctx = m.ctx();
  std::uint64_t unit = m(r, c) / ctx.power(v);
  std::uint64_t inv = ctx.inverse(unit);
  if (inv == 1) return;
  row_scale(m, r, inv);
  if (t) row_scale(*t, r, inv);
}

// Shared Hermite elimination. With allow_skips, pivotless columns are skipped
// instead of raising.
std::vector<std::size_t> hermite_impl(PadicMatrix& m, PadicMatrix* t, bool allow_skips) {
  const auto& ctx = m.ctx();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols(); ++c) {
    if (r == m.rows()) {
      if (allow_skips) break;
      throw PrecisionError("insufficient precision or degenerate generators: fewer rows than columns");
    }
    std::size_t best = m.rows();
    int best_v = ctx.prec();
    for (std::size_t i = r; i < m.rows(); ++i) {
      int v = ctx.valuation(m(i, c));
      if (v < best_v) {
        best_v = v;
        best = i;
      }
    }
    if (best == m.rows()) {
      if (allow_skips) continue;
      throw PrecisionError("insufficient precision or degenerate generators: column " +
                           std::to_string(c) + " has no pivot");
    }
    m.swap_rows(r, best);
    if (t) t->swap_rows(r, best);
    normalize_pivot(m, t, r, c, best_v);
    std::uint64_t pk = ctx.power(best_v);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r) continue;
      std::uint64_t a = m(i, c);
      if (a == 0) continue;
      std::uint64_t q = a / pk;  // below: exact; above: leaves a mod p^k
      if (q == 0) continue;
      row_submul(m, i, r, q);
      if (t) row_submul(*t, i, r, q);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

SmithForm smith_impl(const PadicMatrix& input, bool with_transforms) {
  PadicMatrix m = input;
  const auto& ctx = m.ctx();
  SmithForm out;
  if (with_transforms) {
    out.left = PadicMatrix::identity(ctx, m.rows());
    out.right = PadicMatrix::identity(ctx, m.cols());
  }
  PadicMatrix* left = with_transforms ? &out.left : nullptr;
  std::size_t steps = std::min(m.rows(), m.cols());
  for (std::size_t t = 0; t < steps; ++t) {
    std::size_t br = 0, bc = 0;
    int best_v = ctx.prec();
    for (std::size_t i = t; i < m.rows(); ++i)
      for (std::size_t j = t; j < m.cols(); ++j) {
        std::uint64_t a = m(i, j);
        if (a == 0) continue;
        int v = ctx.valuation(a);
        if (v < best_v) {
          best_v = v;
          br = i;
          bc = j;
        }
      }
    if (best_v == ctx.prec()) {
      for (; t < steps; ++t) out.valuations.push_back(ctx.prec());
      break;
    }
    m.swap_rows(t, br);
    m.swap_cols(t, bc);
    if (with_transforms) {
      out.left.swap_rows(t, br);
      out.right.swap_cols(t, bc);
    }
    normalize_pivot(m, left, t, t, best_v);
    std::uint64_t pk = ctx.power(best_v);
    for (std::size_t i = t + 1; i < m.rows(); ++i) {
      std::uint64_t a = m(i, t);
      if (a == 0) continue;
      std::uint64_t q = a / pk;
      row_submul(m, i, t, q);
      if (left) row_submul(*left, i, t, q);
    }
    for (std::size_t j = t + 1; j < m.cols(); ++j) {
      std::uint64_t a = m(t, j);
      if (a == 0) continue;
      std::uint64_t q = a / pk;
      col_submul(m, j, t, q);
      if (with_transforms) col_submul(out.right, j, t, q);
    }
    out.valuations.push_back(best_v);
  }
  return out;
}

}  // namespace

HermiteForm hermite_normal_form(const PadicMatrix& m) {
  HermiteForm out{m, PadicMatrix::identity(m.ctx(), m.rows())};
  hermite_impl(out.hnf, &out.transform, false);
  return out;
}

PadicMatrix hermite_basis(PadicMatrix m) {
  hermite_impl(m, nullptr, false);
  return m;
}

EchelonForm echelon_form(PadicMatrix m) {
  auto pivots = hermite_impl(m, nullptr, true);
  PadicMatrix rows(m.ctx(), pivots.size(), m.cols());
  for (std::size_t i = 0; i < pivots.size(); ++i)
    std::copy(m.row(i).begin(), m.row(i).end(), rows.row(i).begin());
  return {std::move(rows), std::move(pivots)};
}

SmithForm smith_decomposition(const PadicMatrix& m) { return smith_impl(m, true); }

SmithForm smith_normal_form(const PadicMatrix& m) {
  SmithForm s = smith_impl(m, true);
  if (m.rows() < m.cols() ||
      std::any_of(s.valuations.begin(), s.valuations.end(),
                  [&](int v) { return v >= m.ctx().prec(); }))
    throw PrecisionError("insufficient precision: matrix is rank deficient at precision");
  return s;
}

std::vector<int> elementary_divisors(PadicMatrix m) { return smith_impl(m, false).valuations; }

int determinant_valuation(const PadicMatrix& m) {
  if (m.rows() != m.cols()) throw StructuralError("determinant of a non-square matrix");
  int total = 0;
  for (int v : elementary_divisors(m)) {
    if (v >= m.ctx().prec()) return m.ctx().prec();
    total += v;
  }
  return std::min(total, m.ctx().prec());
}

PadicMatrix inverse(const PadicMatrix& m) {
  if (m.rows() != m.cols()) throw StructuralError("inverse of a non-square matrix");
  const auto& ctx = m.ctx();
  std::size_t n = m.rows();
  PadicMatrix a = m;
  PadicMatrix inv = PadicMatrix::identity(ctx, n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = n;
    for (std::size_t r = c; r < n; ++r)
      if (a(r, c) % ctx.p() != 0) {
        piv = r;
        break;
      }
    if (piv == n) throw NotInvertibleError("not invertible at this precision");
    a.swap_rows(c, piv);
    inv.swap_rows(c, piv);
    std::uint64_t u = ctx.inverse(a(c, c));
    row_scale(a, c, u);
    row_scale(inv, c, u);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a(r, c) == 0) continue;
      std::uint64_t q = a(r, c);
      row_submul(a, r, c, q);
      row_submul(inv, r, c, q);
    }
  }
  return inv;
}

ScaledInverse triangular_scaled_inverse(const PadicMatrix& upper) {
  const auto& ctx = upper.ctx();
  std::size_t n = upper.rows();
  if (upper.cols() != n) throw StructuralError("scaled inverse of a non-square matrix");
  std::vector<int> k(n);
  int total = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j)
      if (upper(i, j) != 0) throw StructuralError("matrix is not upper triangular");
    k[i] = ctx.valuation(upper(i, i));
    if (k[i] >= ctx.prec()) throw PrecisionError("insufficient precision: singular basis");
    total += k[i];
  }
  if (!PadicContext::fits(ctx.p(), ctx.prec() + total))
    throw PrecisionError("insufficient precision: adjugate needs p^" +
                         std::to_string(ctx.prec() + total));
  PadicContext hi = ctx.with_precision(ctx.prec() + total);
  PadicMatrix a = upper.with_precision(hi.prec());
  PadicMatrix x(hi, n, n);
  std::uint64_t pK = hi.power(total);
  for (std::size_t col = 0; col < n; ++col) {
    for (std::size_t ii = n; ii-- > 0;) {
      std::uint64_t num = ii == col ? pK : 0;
      for (std::size_t l = ii + 1; l < n; ++l)
        if (a(ii, l) != 0 && x(l, col) != 0) num = hi.sub(num, hi.mul(a(ii, l), x(l, col)));
      std::uint64_t pivot = a(ii, ii);
      std::uint64_t pk = hi.power(k[ii]);
      std::uint64_t unit_inv = hi.inverse(pivot / pk);
      if (num % pk != 0) throw PrecisionError("insufficient precision in adjugate back-substitution");
      x(ii, col) = hi.mul(num / pk, unit_inv);
    }
  }
  // p^total T^{-1} is usually divisible by more than p^0; strip the common
  // power so the shift is the exponent of the quotient, not its order.
  int common = hi.prec();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (x(i, j) != 0) common = std::min(common, hi.valuation(x(i, j)));
  std::uint64_t pc = hi.power(common);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) x(i, j) /= pc;
  return {x.with_precision(ctx.prec()), total - common};
}

}  // namespace padiclie
