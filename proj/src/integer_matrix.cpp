#include "tiltlab/integer_matrix.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

#include "tiltlab/error.hpp"

namespace tiltlab {

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw ValidationError("ragged matrix literal");
    for (long x : r) data_.emplace_back(x);
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::diagonal(const IntVector& entries) {
  IntMatrix m(entries.size(), entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
  return m;
}

IntMatrix IntMatrix::column(const IntVector& entries) {
  IntMatrix m(entries.size(), 1);
  for (std::size_t i = 0; i < entries.size(); ++i) m(i, 0) = entries[i];
  return m;
}

IntMatrix IntMatrix::from_columns(std::size_t rows, const std::vector<IntVector>& cols) {
  IntMatrix m(rows, cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c) {
    if (cols[c].size() != rows) throw InvariantBreach("column length mismatch");
    m.set_col(c, cols[c]);
  }
  return m;
}

IntVector IntMatrix::col(std::size_t c) const {
  IntVector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

IntVector IntMatrix::row(std::size_t r) const {
  return IntVector(data_.begin() + static_cast<long>(r * cols_),
                   data_.begin() + static_cast<long>((r + 1) * cols_));
}

void IntMatrix::set_col(std::size_t c, const IntVector& v) {
  for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = v[r];
}

IntMatrix IntMatrix::block(std::size_t r0, std::size_t r1, std::size_t c0, std::size_t c1) const {
  IntMatrix b(r1 - r0, c1 - c0);
  for (std::size_t r = r0; r < r1; ++r)
    for (std::size_t c = c0; c < c1; ++c) b(r - r0, c - c0) = (*this)(r, c);
  return b;
}

void IntMatrix::set_block(std::size_t r0, std::size_t c0, const IntMatrix& b) {
  for (std::size_t r = 0; r < b.rows(); ++r)
    for (std::size_t c = 0; c < b.cols(); ++c) (*this)(r0 + r, c0 + c) = b(r, c);
}

IntMatrix IntMatrix::select_rows(const std::vector<std::size_t>& idx) const {
  IntMatrix m(idx.size(), cols_);
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t c = 0; c < cols_; ++c) m(i, c) = (*this)(idx[i], c);
  return m;
}

IntMatrix IntMatrix::select_cols(const std::vector<std::size_t>& idx) const {
  IntMatrix m(rows_, idx.size());
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t i = 0; i < idx.size(); ++i) m(r, i) = (*this)(r, idx[i]);
  return m;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

bool IntMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Integer& x) { return x == 0; });
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
  if (cols_ != o.rows_) throw InvariantBreach("matrix product shape mismatch");
  IntMatrix p(rows_, o.cols_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Integer& a = (*this)(r, k);
      if (a == 0) continue;
      for (std::size_t c = 0; c < o.cols_; ++c) p(r, c) += a * o(k, c);
    }
  return p;
}

IntVector IntMatrix::operator*(const IntVector& v) const {
  if (cols_ != v.size()) throw InvariantBreach("matrix-vector shape mismatch");
  IntVector out(rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t k = 0; k < cols_; ++k) out[r] += (*this)(r, k) * v[k];
  return out;
}

IntMatrix IntMatrix::operator+(const IntMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw InvariantBreach("matrix sum shape mismatch");
  IntMatrix s(rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i) s.data_[i] = data_[i] + o.data_[i];
  return s;
}

IntMatrix IntMatrix::operator-(const IntMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw InvariantBreach("matrix difference shape mismatch");
  IntMatrix s(rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i) s.data_[i] = data_[i] - o.data_[i];
  return s;
}

IntMatrix IntMatrix::operator-() const { return scaled(-1); }

IntMatrix IntMatrix::scaled(const Integer& s) const {
  IntMatrix m(rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i) m.data_[i] = data_[i] * s;
  return m;
}

bool IntMatrix::operator==(const IntMatrix& o) const {
  return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
}

namespace {

std::vector<std::string> split_entries(std::string_view row) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : row) {
    if (ch == ',' || ch == ' ' || ch == '\t' || ch == '\r') {
      if (!cur.empty()) out.push_back(cur), cur.clear();
    } else {
      cur += ch;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

Integer parse_entry(const std::string& s) {
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size() || s.find_first_not_of("0123456789", i) != std::string::npos)
    throw ParseError("bad matrix entry '" + s + "'");
  return Integer(s[0] == '+' ? s.substr(1) : s);
}

}  // namespace

IntMatrix IntMatrix::parse(std::string_view text) {
  std::vector<std::string_view> rows;
  std::size_t a = text.find_first_not_of(" \t\r\n");
  if (a == std::string_view::npos) throw ParseError("empty matrix");
  std::size_t b = text.find_last_not_of(" \t\r\n");
  std::string_view body = text.substr(a, b - a + 1);
  if (body.front() == '[') {
    if (body.back() != ']') throw ParseError("unbalanced brackets in matrix");
    body = body.substr(1, body.size() - 2);
    std::size_t pos = 0;
    for (;;) {
      std::size_t open = body.find('[', pos);
      std::string_view gap = body.substr(pos, open == std::string_view::npos ? std::string_view::npos : open - pos);
      if (gap.find_first_not_of(" ,\t\r\n") != std::string_view::npos) throw ParseError("matrix rows must be bracketed");
      if (open == std::string_view::npos) break;
      std::size_t close = body.find(']', open);
      if (close == std::string_view::npos) throw ParseError("unbalanced brackets in matrix");
      std::string_view row = body.substr(open + 1, close - open - 1);
      if (row.find('[') != std::string_view::npos) throw ParseError("matrix nested too deeply");
      rows.push_back(row);
      pos = close + 1;
    }
  } else {
    std::size_t pos = 0;
    while (pos <= body.size()) {
      std::size_t end = body.find_first_of(";\n", pos);
      if (end == std::string_view::npos) end = body.size();
      std::string_view row = body.substr(pos, end - pos);
      if (row.find_first_not_of(" ,\t\r") != std::string_view::npos) rows.push_back(row);
      pos = end + 1;
    }
  }
  std::vector<std::vector<std::string>> cells;
  for (auto r : rows) cells.push_back(split_entries(r));
  const std::size_t ncols = cells.empty() ? 0 : cells[0].size();
  IntMatrix m(cells.size(), ncols);
  for (std::size_t r = 0; r < cells.size(); ++r) {
    if (cells[r].size() != ncols) throw ParseError("ragged matrix: row " + std::to_string(r) + " has " +
                                                   std::to_string(cells[r].size()) + " entries, expected " + std::to_string(ncols));
    for (std::size_t c = 0; c < ncols; ++c) m(r, c) = parse_entry(cells[r][c]);
  }
  return m;
}

std::string IntMatrix::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t r = 0; r < rows_; ++r) {
    if (r) os << ',';
    os << '[';
    for (std::size_t c = 0; c < cols_; ++c) {
      if (c) os << ',';
      os << (*this)(r, c).get_str();
    }
    os << ']';
  }
  os << ']';
  return os.str();
}

IntMatrix hstack(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows() != b.rows()) throw InvariantBreach("hstack row mismatch");
  IntMatrix m(a.rows(), a.cols() + b.cols());
  m.set_block(0, 0, a);
  m.set_block(0, a.cols(), b);
  return m;
}

IntMatrix vstack(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.cols()) throw InvariantBreach("vstack column mismatch");
  IntMatrix m(a.rows() + b.rows(), a.cols());
  m.set_block(0, 0, a);
  m.set_block(a.rows(), 0, b);
  return m;
}

IntMatrix block_diagonal(const IntMatrix& a, const IntMatrix& b) {
  IntMatrix m(a.rows() + b.rows(), a.cols() + b.cols());
  m.set_block(0, 0, a);
  m.set_block(a.rows(), a.cols(), b);
  return m;
}

Integer SmithForm::diag(std::size_t i) const {
  if (i < d.rows() && i < d.cols()) return d(i, i);
  return 0;
}

namespace {

// Elimination state. Every row operation on d is mirrored on u and inverted
// on u_inv (and likewise for columns), so u * m * v == d holds throughout.
struct Elimination {
  IntMatrix d, u, v, u_inv, v_inv;

  void swap_cols(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t r = 0; r < d.rows(); ++r) std::swap(d(r, i), d(r, j));
    for (std::size_t r = 0; r < v.rows(); ++r) std::swap(v(r, i), v(r, j));
    for (std::size_t c = 0; c < v_inv.cols(); ++c) std::swap(v_inv(i, c), v_inv(j, c));
  }
  void negate_col(std::size_t i) {
    for (std::size_t r = 0; r < d.rows(); ++r) d(r, i) = -d(r, i);
    for (std::size_t r = 0; r < v.rows(); ++r) v(r, i) = -v(r, i);
    for (std::size_t c = 0; c < v_inv.cols(); ++c) v_inv(i, c) = -v_inv(i, c);
  }
  // col_i += q * col_j
  void add_col(std::size_t i, std::size_t j, const Integer& q) {
    if (q == 0) return;
    for (std::size_t r = 0; r < d.rows(); ++r) d(r, i) += q * d(r, j);
    for (std::size_t r = 0; r < v.rows(); ++r) v(r, i) += q * v(r, j);
    for (std::size_t c = 0; c < v_inv.cols(); ++c) v_inv(j, c) -= q * v_inv(i, c);
  }
  // (col_i, col_j) <- (p col_i + q col_j, r col_i + s col_j) with ps - qr = 1
  void mix_cols(std::size_t i, std::size_t j, const Integer& p, const Integer& q, const Integer& r, const Integer& s) {
    auto mix = [&](IntMatrix& m) {
      for (std::size_t k = 0; k < m.rows(); ++k) {
        Integer a = m(k, i), b = m(k, j);
        m(k, i) = p * a + q * b;
        m(k, j) = r * a + s * b;
      }
    };
    mix(d);
    mix(v);
    for (std::size_t c = 0; c < v_inv.cols(); ++c) {
      Integer a = v_inv(i, c), b = v_inv(j, c);
      v_inv(i, c) = s * a - r * b;
      v_inv(j, c) = -q * a + p * b;
    }
  }

  // Row operations are column operations on the transposed state.
  void transpose() {
    d = moved_transpose(d);
    IntMatrix ut = moved_transpose(u), uit = moved_transpose(u_inv);
    u = moved_transpose(v);
    u_inv = moved_transpose(v_inv);
    v = std::move(ut);
    v_inv = std::move(uit);
  }

  // Transpose by swapping limbs instead of copying them.
  static IntMatrix moved_transpose(IntMatrix& m) {
    IntMatrix t(m.cols(), m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r)
      for (std::size_t c = 0; c < m.cols(); ++c) mpz_swap(t(c, r).get_mpz_t(), m(r, c).get_mpz_t());
    return t;
  }
};

struct Echelon {
  std::size_t rank = 0;
  std::vector<std::size_t> pivot_rows;
};

Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

// Reduced column echelon form of e.*work on columns [c0, c1): pivot columns
// come first with strictly increasing pivot rows and positive pivots, every
// entry left of a pivot lies in [0, pivot), zero columns go last. New columns
// are merged one at a time into the already reduced ones (Kannan-Bachem
// order), which keeps intermediate entries bounded by the pivots.
Echelon column_echelon(Elimination& e, IntMatrix Elimination::*work, std::size_t c0, std::size_t c1) {
  IntMatrix& m = e.*work;
  std::vector<std::size_t> prow;
  auto reduce_all = [&] {
    for (std::size_t l = 0; l < prow.size(); ++l) {
      const std::size_t pc = c0 + l;
      for (std::size_t x = c0; x < pc; ++x) e.add_col(x, pc, -floor_div(m(prow[l], x), m(prow[l], pc)));
    }
  };
  std::size_t end = c1;
  while (c0 + prow.size() < end) {
    const std::size_t p = c0 + prow.size();
    for (;;) {
      for (std::size_t l = 0; l < prow.size(); ++l) e.add_col(p, c0 + l, -floor_div(m(prow[l], p), m(prow[l], c0 + l)));
      std::size_t r = 0;
      while (r < m.rows() && m(r, p) == 0) ++r;
      if (r == m.rows()) {
        e.swap_cols(p, --end);
        break;
      }
      auto it = std::lower_bound(prow.begin(), prow.end(), r);
      const std::size_t l = static_cast<std::size_t>(it - prow.begin());
      if (it != prow.end() && *it == r) {
        const std::size_t pc = c0 + l;
        Integer a = m(r, pc), b = m(r, p), g, s, t;
        mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
        e.mix_cols(pc, p, s, t, Integer(-b / g), Integer(a / g));
        reduce_all();
        continue;
      }
      for (std::size_t x = p; x > c0 + l; --x) e.swap_cols(x, x - 1);
      prow.insert(it, r);
      if (m(r, c0 + l) < 0) e.negate_col(c0 + l);
      reduce_all();
      break;
    }
  }
  return {prow.size(), prow};
}

// Columns [rank, n) of v span the kernel. Put them in echelon form and reduce
// the remaining columns of v against them; d does not change.
void tidy_transform(Elimination& e, std::size_t rank) {
  const std::size_t n = e.v.cols();
  Echelon k = column_echelon(e, &Elimination::v, rank, n);
  for (std::size_t l = 0; l < k.rank; ++l) {
    const std::size_t pc = rank + l;
    for (std::size_t x = 0; x < rank; ++x) e.add_col(x, pc, -floor_div(e.v(k.pivot_rows[l], x), e.v(k.pivot_rows[l], pc)));
  }
}

bool is_diagonal(const IntMatrix& d) {
  for (std::size_t r = 0; r < d.rows(); ++r)
    for (std::size_t c = 0; c < d.cols(); ++c)
      if (r != c && d(r, c) != 0) return false;
  return true;
}

}  // namespace

SmithForm smith_normal_form(const IntMatrix& m) {
  const std::size_t nr = m.rows();
  const std::size_t nc = m.cols();
  Elimination e{m, IntMatrix::identity(nr), IntMatrix::identity(nc), IntMatrix::identity(nr),
                IntMatrix::identity(nc)};
  std::size_t rank = 0;
  for (;;) {
    rank = column_echelon(e, &Elimination::d, 0, nc).rank;
    tidy_transform(e, rank);
    if (is_diagonal(e.d)) break;
    e.transpose();
    column_echelon(e, &Elimination::d, 0, nr);
    tidy_transform(e, rank);
    e.transpose();
    if (is_diagonal(e.d)) break;
  }
  // Divisibility chain: diag(a, b) -> diag(g, ab/g) by a unimodular 2x2 step
  // on each side.
  for (std::size_t i = 0; i < rank; ++i)
    for (std::size_t j = i + 1; j < rank; ++j) {
      Integer a = e.d(i, i), b = e.d(j, j);
      if (mpz_divisible_p(b.get_mpz_t(), a.get_mpz_t())) continue;
      Integer g, s, t;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
      e.mix_cols(i, j, 1, 1, Integer(-t * b / g), Integer(s * a / g));
      e.transpose();
      e.mix_cols(i, j, s, t, Integer(-b / g), Integer(a / g));
      e.transpose();
    }
  tidy_transform(e, rank);
  e.transpose();
  tidy_transform(e, rank);
  e.transpose();
  return SmithForm{std::move(e.d), std::move(e.u), std::move(e.v), std::move(e.u_inv), std::move(e.v_inv), rank};
}

IntMatrix kernel_basis(const IntMatrix& m) {
  SmithForm s = smith_normal_form(m);
  std::vector<std::size_t> idx;
  for (std::size_t c = s.rank; c < m.cols(); ++c) idx.push_back(c);
  return s.v.select_cols(idx);
}

std::optional<IntVector> solve_integer(const IntMatrix& m, const IntVector& y) {
  if (y.size() != m.rows()) throw InvariantBreach("solve_integer shape mismatch");
  SmithForm s = smith_normal_form(m);
  IntVector uy = s.u * y;
  IntVector w(m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (i < s.rank) {
      if (!mpz_divisible_p(uy[i].get_mpz_t(), s.d(i, i).get_mpz_t())) return std::nullopt;
      mpz_divexact(w[i].get_mpz_t(), uy[i].get_mpz_t(), s.d(i, i).get_mpz_t());
    } else if (uy[i] != 0) {
      return std::nullopt;
    }
  }
  return s.v * w;
}

Integer reduce_mod(const Integer& x, const Integer& modulus) {
  if (modulus == 0) return x;
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), modulus.get_mpz_t());
  if (r < 0) r += abs(modulus);
  return r;
}

Integer gcd(const Integer& a, const Integer& b) {
  Integer g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

Integer lcm(const Integer& a, const Integer& b) {
  Integer l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

}  // namespace tiltlab
