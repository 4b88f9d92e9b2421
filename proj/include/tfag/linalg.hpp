#pragma once

// Exact rational and integer linear algebra: dense matrices, row echelon
// forms, kernels, Hermite and Smith normal forms, and canonical subspaces.
//
// Vectors are row vectors throughout; a matrix acts on the right (x * M).

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace tfag {

using Integer = mpz_class;
using Rational = mpq_class;
using RationalVector = std::vector<Rational>;
using IntegerVector = std::vector<Integer>;

// num/den in lowest terms
inline Rational frac(const Integer& num, const Integer& den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

class dimension_error : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

template <class T>
class Matrix {
public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static Matrix from_rows(const std::vector<std::vector<T>>& rows,
                          std::size_t cols) {
    Matrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols)
        throw dimension_error("matrix rows have inconsistent lengths");
      std::copy(rows[i].begin(), rows[i].end(), m.row(i).begin());
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  std::span<T> row(std::size_t i) {
    return {data_.data() + i * cols_, cols_};
  }
  std::span<const T> row(std::size_t i) const {
    return {data_.data() + i * cols_, cols_};
  }
  std::vector<T> row_vector(std::size_t i) const {
    auto r = row(i);
    return {r.begin(), r.end()};
  }
  std::vector<std::vector<T>> row_vectors() const {
    std::vector<std::vector<T>> out;
    out.reserve(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out.push_back(row_vector(i));
    return out;
  }

  void append_row(std::span<const T> r) {
    if (rows_ == 0 && cols_ == 0) cols_ = r.size();
    if (r.size() != cols_) throw dimension_error("appended row has wrong length");
    data_.insert(data_.end(), r.begin(), r.end());
    ++rows_;
  }
  void append_row(const std::vector<T>& r) {
    append_row(std::span<const T>(r.data(), r.size()));
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j)
      std::swap((*this)(a, j), (*this)(b, j));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i)
      std::swap((*this)(i, a), (*this)(i, b));
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Matrix select_rows(const std::vector<std::size_t>& idx) const {
    Matrix m(idx.size(), cols_);
    for (std::size_t i = 0; i < idx.size(); ++i)
      std::copy(row(idx[i]).begin(), row(idx[i]).end(), m.row(i).begin());
    return m;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw dimension_error("matrix product shape mismatch");
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T& aik = a(i, k);
        if (aik == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }

  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
      throw dimension_error("matrix difference shape mismatch");
    Matrix c = a;
    for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] -= b.data_[i];
    return c;
  }

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using RationalMatrix = Matrix<Rational>;
using IntegerMatrix = Matrix<Integer>;

// ---------------------------------------------------------------------------
// small helpers

inline RationalVector zero_vector(std::size_t n) { return RationalVector(n); }

inline bool is_zero(std::span<const Rational> v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& q) { return q == 0; });
}
inline bool is_zero(const RationalVector& v) {
  return is_zero(std::span<const Rational>(v));
}

inline RationalVector operator*(const RationalVector& x, const RationalMatrix& m) {
  if (x.size() != m.rows()) throw dimension_error("vector-matrix shape mismatch");
  RationalVector y(m.cols());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) y[j] += x[i] * m(i, j);
  }
  return y;
}

inline RationalVector operator+(RationalVector a, const RationalVector& b) {
  if (a.size() != b.size()) throw dimension_error("vector sum length mismatch");
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}
inline RationalVector operator-(RationalVector a, const RationalVector& b) {
  if (a.size() != b.size()) throw dimension_error("vector difference length mismatch");
  for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
  return a;
}
inline RationalVector operator*(const Rational& s, RationalVector a) {
  for (auto& q : a) q *= s;
  return a;
}

inline RationalMatrix to_rational(const IntegerMatrix& m) {
  RationalMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = m(i, j);
  return r;
}

inline RationalMatrix matrix_from_rows(const std::vector<RationalVector>& rows,
                                       std::size_t cols) {
  return RationalMatrix::from_rows(rows, cols);
}

inline Integer lcm(const Integer& a, const Integer& b) {
  Integer r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}
inline Integer gcd(const Integer& a, const Integer& b) {
  Integer r;
  mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

// Floor division for integers (rounds towards negative infinity).
inline Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

inline Integer common_denominator(std::span<const Rational> v) {
  Integer d = 1;
  for (const auto& q : v) d = lcm(d, q.get_den());
  return d;
}
inline Integer common_denominator(const RationalVector& v) {
  return common_denominator(std::span<const Rational>(v));
}
inline Integer common_denominator(const RationalMatrix& m) {
  Integer d = 1;
  for (std::size_t i = 0; i < m.rows(); ++i) d = lcm(d, common_denominator(m.row(i)));
  return d;
}

// Returns (den * m) as an integer matrix, where den is the least common
// denominator of m.
inline std::pair<IntegerMatrix, Integer> clear_denominators(const RationalMatrix& m) {
  Integer den = common_denominator(m);
  IntegerMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      Rational q = m(i, j) * den;
      out(i, j) = q.get_num();
    }
  return {out, den};
}

// ---------------------------------------------------------------------------
// row echelon form over Q

struct Echelon {
  RationalMatrix reduced;            // nonzero rows of the RREF
  std::vector<std::size_t> pivots;   // pivot column of each row
};

inline Echelon rref(RationalMatrix m) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t piv = r;
    while (piv < m.rows() && m(piv, c) == 0) ++piv;
    if (piv == m.rows()) continue;
    m.swap_rows(r, piv);
    Rational inv = 1 / m(r, c);
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c) == 0) continue;
      Rational f = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  RationalMatrix reduced(r, m.cols());
  for (std::size_t i = 0; i < r; ++i)
    std::copy(m.row(i).begin(), m.row(i).end(), reduced.row(i).begin());
  return {std::move(reduced), std::move(pivots)};
}

inline std::size_t rank(const RationalMatrix& m) { return rref(m).pivots.size(); }

// Basis (as rows) of {x : m * x^T = 0}.
inline RationalMatrix nullspace_rows(const RationalMatrix& m, std::size_t cols) {
  Echelon e = rref(m);
  std::vector<bool> is_pivot(cols, false);
  for (auto p : e.pivots) is_pivot[p] = true;
  RationalMatrix out(0, cols);
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    RationalVector v(cols);
    v[f] = 1;
    for (std::size_t i = 0; i < e.pivots.size(); ++i) v[e.pivots[i]] = -e.reduced(i, f);
    out.append_row(v);
  }
  return out;
}

// Basis (as rows) of {y : y * m = 0}.
inline RationalMatrix left_kernel(const RationalMatrix& m) {
  return nullspace_rows(m.transpose(), m.rows());
}

inline std::optional<RationalMatrix> inverse(const RationalMatrix& m) {
  const std::size_t n = m.rows();
  if (m.cols() != n) throw dimension_error("inverse of a non-square matrix");
  RationalMatrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = 1;
  }
  Echelon e = rref(aug);
  if (e.pivots.size() < n || (n > 0 && e.pivots[n - 1] != n - 1)) return std::nullopt;
  RationalMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = e.reduced(i, n + j);
  return inv;
}

inline Rational determinant(RationalMatrix m) {
  const std::size_t n = m.rows();
  if (m.cols() != n) throw dimension_error("determinant of a non-square matrix");
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && m(piv, c) == 0) ++piv;
    if (piv == n) return 0;
    if (piv != c) {
      m.swap_rows(piv, c);
      det = -det;
    }
    det *= m(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (m(i, c) == 0) continue;
      Rational f = m(i, c) / m(c, c);
      for (std::size_t j = c; j < n; ++j) m(i, j) -= f * m(c, j);
    }
  }
  return det;
}

// Right inverse of a full-row-rank matrix b (r x k): returns p (k x r) with
// b * p = I. For y in the row space of b, y * p are its coordinates.
inline RationalMatrix right_inverse(const RationalMatrix& b) {
  if (b.rows() == 0) return RationalMatrix(b.cols(), 0);
  RationalMatrix bt = b.transpose();
  auto gram_inv = inverse(b * bt);
  if (!gram_inv) throw std::invalid_argument("right_inverse: rows are dependent");
  return bt * *gram_inv;
}

// Coefficients c with c * b = y, if any. Rows of b need not be independent;
// a particular solution is returned.
inline std::optional<RationalVector> solve_left(const RationalMatrix& b,
                                                const RationalVector& y) {
  if (y.size() != b.cols()) throw dimension_error("solve_left length mismatch");
  const std::size_t r = b.rows();
  const std::size_t k = b.cols();
  // Solve b^T c^T = y^T via the augmented system.
  RationalMatrix aug(k, r + 1);
  for (std::size_t j = 0; j < k; ++j) {
    for (std::size_t i = 0; i < r; ++i) aug(j, i) = b(i, j);
    aug(j, r) = y[j];
  }
  Echelon e = rref(aug);
  RationalVector c(r);
  for (std::size_t i = 0; i < e.pivots.size(); ++i) {
    if (e.pivots[i] == r) return std::nullopt;
    c[e.pivots[i]] = e.reduced(i, r);
  }
  return c;
}

// ---------------------------------------------------------------------------
// Hermite normal form (row style) with unimodular transform

struct HermiteForm {
  IntegerMatrix h;     // h = u * m; nonzero rows first, upper echelon
  IntegerMatrix u;     // unimodular
  std::size_t rank = 0;
  std::vector<std::size_t> pivots;
};

namespace detail {

// g = gcd(x, y) = s*x + t*y, with (s, t) = (sign x, 0) whenever x divides y so
// that an elimination step leaves the pivot row alone.
inline void bezout(const Integer& x, const Integer& y, Integer& g, Integer& s, Integer& t) {
  if (x != 0 && mpz_divisible_p(y.get_mpz_t(), x.get_mpz_t())) {
    g = abs(x);
    s = x > 0 ? 1 : -1;
    t = 0;
    return;
  }
  mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
}

// Replaces rows (a, b) by (s*a + t*b, (x/g)*b - (y/g)*a), a unimodular step
// that zeroes column c of row b.
inline void gcd_row_step(IntegerMatrix& m, IntegerMatrix& u, std::size_t a,
                         std::size_t b, std::size_t c) {
  Integer g, s, t;
  Integer x = m(a, c), y = m(b, c);
  bezout(x, y, g, s, t);
  Integer xg = x / g, yg = y / g;
  auto combine = [&](IntegerMatrix& mat) {
    for (std::size_t j = 0; j < mat.cols(); ++j) {
      Integer ra = mat(a, j), rb = mat(b, j);
      mat(a, j) = s * ra + t * rb;
      mat(b, j) = xg * rb - yg * ra;
    }
  };
  combine(m);
  combine(u);
}

}  // namespace detail

inline HermiteForm hermite_normal_form(IntegerMatrix m) {
  const std::size_t rows = m.rows();
  IntegerMatrix u = IntegerMatrix::identity(rows);
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && m(piv, c) == 0) ++piv;
    if (piv == rows) continue;
    m.swap_rows(r, piv);
    u.swap_rows(r, piv);
    for (std::size_t i = r + 1; i < rows; ++i)
      if (m(i, c) != 0) detail::gcd_row_step(m, u, r, i, c);
    if (m(r, c) < 0) {
      for (std::size_t j = 0; j < m.cols(); ++j) m(r, j) = -m(r, j);
      for (std::size_t j = 0; j < rows; ++j) u(r, j) = -u(r, j);
    }
    for (std::size_t i = 0; i < r; ++i) {
      Integer q = floor_div(m(i, c), m(r, c));
      if (q == 0) continue;
      for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) -= q * m(r, j);
      for (std::size_t j = 0; j < rows; ++j) u(i, j) -= q * u(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return {std::move(m), std::move(u), r, std::move(pivots)};
}

// Basis (as rows) of the integer left kernel {z in Z^rows : z * m = 0}.
inline IntegerMatrix integer_left_kernel(const IntegerMatrix& m) {
  HermiteForm hf = hermite_normal_form(m);
  IntegerMatrix out(0, m.rows());
  for (std::size_t i = hf.rank; i < m.rows(); ++i) out.append_row(hf.u.row_vector(i));
  if (out.rows() == 0) return out;
  return hermite_normal_form(out).h.select_rows([&] {
    std::vector<std::size_t> idx(out.rows());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    return idx;
  }());
}

// ---------------------------------------------------------------------------
// Smith normal form

struct SmithForm {
  IntegerMatrix d;                       // u * m * v
  IntegerMatrix u;                       // unimodular, rows x rows
  IntegerMatrix v;                       // unimodular, cols x cols
  std::vector<Integer> invariant_factors;  // nonzero diagonal, d_i | d_{i+1}
};

inline SmithForm smith_normal_form(IntegerMatrix m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  IntegerMatrix u = IntegerMatrix::identity(rows);
  IntegerMatrix v = IntegerMatrix::identity(cols);

  auto col_step = [&](std::size_t a, std::size_t b, std::size_t r) {
    // zero entry (r, b) using column a
    Integer g, s, t;
    Integer x = m(r, a), y = m(r, b);
    detail::bezout(x, y, g, s, t);
    Integer xg = x / g, yg = y / g;
    auto combine = [&](IntegerMatrix& mat) {
      for (std::size_t i = 0; i < mat.rows(); ++i) {
        Integer ca = mat(i, a), cb = mat(i, b);
        mat(i, a) = s * ca + t * cb;
        mat(i, b) = xg * cb - yg * ca;
      }
    };
    combine(m);
    combine(v);
  };

  std::vector<Integer> factors;
  std::size_t t = 0;
  while (t < rows && t < cols) {
    // pick the nonzero entry of least absolute value
    bool found = false;
    std::size_t pi = t, pj = t;
    Integer best;
    for (std::size_t i = t; i < rows; ++i)
      for (std::size_t j = t; j < cols; ++j) {
        if (m(i, j) == 0) continue;
        Integer a = abs(m(i, j));
        if (!found || a < best) {
          best = a;
          pi = i;
          pj = j;
          found = true;
        }
      }
    if (!found) break;
    m.swap_rows(t, pi);
    u.swap_rows(t, pi);
    m.swap_cols(t, pj);
    v.swap_cols(t, pj);

    for (;;) {
      bool changed = false;
      for (std::size_t i = t + 1; i < rows; ++i)
        if (m(i, t) != 0) {
          detail::gcd_row_step(m, u, t, i, t);
          changed = true;
        }
      for (std::size_t j = t + 1; j < cols; ++j)
        if (m(t, j) != 0) {
          col_step(t, j, t);
          changed = true;
        }
      if (changed) continue;
      // divisibility of the trailing block
      std::size_t bad_row = rows;
      for (std::size_t i = t + 1; i < rows && bad_row == rows; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (!mpz_divisible_p(m(i, j).get_mpz_t(), m(t, t).get_mpz_t())) {
            bad_row = i;
            break;
          }
      if (bad_row == rows) break;
      for (std::size_t j = 0; j < cols; ++j) m(t, j) += m(bad_row, j);
      for (std::size_t j = 0; j < rows; ++j) u(t, j) += u(bad_row, j);
    }
    if (m(t, t) < 0) {
      for (std::size_t j = 0; j < cols; ++j) m(t, j) = -m(t, j);
      for (std::size_t j = 0; j < rows; ++j) u(t, j) = -u(t, j);
    }
    factors.push_back(m(t, t));
    ++t;
  }
  return {std::move(m), std::move(u), std::move(v), std::move(factors)};
}

// Z-basis (rows) of the subgroup of Q^k generated by the rows of gens,
// together with integer coefficients expressing each basis row in terms of
// the generators: basis = from_gens * gens.
struct LatticeBasis {
  RationalMatrix basis;
  IntegerMatrix from_gens;
};

inline LatticeBasis lattice_basis(const RationalMatrix& gens) {
  auto [ints, den] = clear_denominators(gens);
  HermiteForm hf = hermite_normal_form(ints);
  LatticeBasis out{RationalMatrix(hf.rank, gens.cols()), IntegerMatrix(hf.rank, gens.rows())};
  for (std::size_t i = 0; i < hf.rank; ++i) {
    for (std::size_t j = 0; j < gens.cols(); ++j) out.basis(i, j) = Rational(hf.h(i, j), den);
    for (std::size_t j = 0; j < gens.rows(); ++j) out.from_gens(i, j) = hf.u(i, j);
  }
  for (std::size_t i = 0; i < hf.rank; ++i)
    for (std::size_t j = 0; j < gens.cols(); ++j) out.basis(i, j).canonicalize();
  return out;
}

// ---------------------------------------------------------------------------
// Subspaces of Q^n, canonically represented by their RREF basis.

class Subspace {
public:
  Subspace() = default;
  explicit Subspace(std::size_t ambient) : ambient_(ambient), basis_(0, ambient) {}

  static Subspace span(const RationalMatrix& rows, std::size_t ambient) {
    if (rows.rows() > 0 && rows.cols() != ambient)
      throw dimension_error("subspace generators have wrong ambient dimension");
    Subspace s(ambient);
    if (rows.rows() == 0) return s;
    Echelon e = rref(rows);
    s.basis_ = std::move(e.reduced);
    s.pivots_ = std::move(e.pivots);
    return s;
  }
  static Subspace span(const std::vector<RationalVector>& rows, std::size_t ambient) {
    RationalMatrix m(0, ambient);
    for (const auto& r : rows) m.append_row(r);
    return span(m, ambient);
  }
  static Subspace whole(std::size_t ambient) {
    return span(RationalMatrix::identity(ambient), ambient);
  }

  std::size_t ambient() const { return ambient_; }
  std::size_t dim() const { return basis_.rows(); }
  const RationalMatrix& basis() const { return basis_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  // x minus its projection along the pivot coordinates
  RationalVector reduce(RationalVector x) const {
    if (x.size() != ambient_) throw dimension_error("vector has wrong ambient dimension");
    for (std::size_t i = 0; i < basis_.rows(); ++i) {
      const Rational f = x[pivots_[i]];
      if (f == 0) continue;
      for (std::size_t j = 0; j < ambient_; ++j) x[j] -= f * basis_(i, j);
    }
    return x;
  }

  bool contains(const RationalVector& x) const { return is_zero(reduce(x)); }

  bool contains(const Subspace& other) const {
    if (other.ambient_ != ambient_) throw dimension_error("subspace ambient mismatch");
    for (std::size_t i = 0; i < other.dim(); ++i)
      if (!contains(other.basis_.row_vector(i))) return false;
    return true;
  }

  // Coordinates of x with respect to the canonical basis (x must lie in the
  // subspace): read off the pivot entries.
  RationalVector coordinates(const RationalVector& x) const {
    RationalVector c(dim());
    for (std::size_t i = 0; i < dim(); ++i) c[i] = x[pivots_[i]];
    return c;
  }

  // Basis (rows) of the annihilator: x in the subspace iff x * annihilator^T = 0.
  RationalMatrix annihilator() const { return nullspace_rows(basis_, ambient_); }

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
  }

  std::string key() const {
    std::string k = std::to_string(ambient_) + ":";
    for (std::size_t i = 0; i < basis_.rows(); ++i) {
      for (std::size_t j = 0; j < ambient_; ++j) k += basis_(i, j).get_str() + ",";
      k += ";";
    }
    return k;
  }

private:
  std::size_t ambient_ = 0;
  RationalMatrix basis_;
  std::vector<std::size_t> pivots_;
};

inline Subspace subspace_sum(const Subspace& a, const Subspace& b) {
  if (a.ambient() != b.ambient()) throw dimension_error("subspace ambient mismatch");
  RationalMatrix m = a.basis();
  if (m.rows() == 0) m = RationalMatrix(0, a.ambient());
  for (std::size_t i = 0; i < b.dim(); ++i) m.append_row(b.basis().row_vector(i));
  return Subspace::span(m, a.ambient());
}

inline Subspace subspace_intersection(const Subspace& a, const Subspace& b) {
  if (a.ambient() != b.ambient()) throw dimension_error("subspace ambient mismatch");
  const std::size_t n = a.ambient();
  if (a.dim() == 0 || b.dim() == 0) return Subspace(n);
  // x = s * A = t * B  <=>  (s, t) in left kernel of [A; B] (with t negated)
  RationalMatrix stacked(0, n);
  for (std::size_t i = 0; i < a.dim(); ++i) stacked.append_row(a.basis().row_vector(i));
  for (std::size_t i = 0; i < b.dim(); ++i) stacked.append_row(b.basis().row_vector(i));
  RationalMatrix kernel = left_kernel(stacked);
  RationalMatrix gens(0, n);
  for (std::size_t k = 0; k < kernel.rows(); ++k) {
    RationalVector s(kernel.row(k).begin(), kernel.row(k).begin() + a.dim());
    gens.append_row(s * a.basis());
  }
  return Subspace::span(gens, n);
}

struct SumAndIntersection {
  Subspace sum;
  Subspace intersection;
};

inline SumAndIntersection span_and_intersect(const Subspace& a, const Subspace& b) {
  return {subspace_sum(a, b), subspace_intersection(a, b)};
}

}  // namespace tfag
