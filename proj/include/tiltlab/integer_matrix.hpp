#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace tiltlab {

using Integer = mpz_class;
using IntVector = std::vector<Integer>;

// Dense row-major matrix of arbitrary-precision integers.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntMatrix identity(std::size_t n);
  static IntMatrix diagonal(const IntVector& entries);
  static IntMatrix column(const IntVector& entries);
  static IntMatrix from_columns(std::size_t rows, const std::vector<IntVector>& cols);
  // "[[1,2],[3,4]]" (the to_string form) or "1 2; 3 4". Throws ParseError.
  static IntMatrix parse(std::string_view text);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Integer& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Integer& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  IntVector col(std::size_t c) const;
  IntVector row(std::size_t r) const;
  void set_col(std::size_t c, const IntVector& v);

  // Half-open row range [r0, r1) and column range [c0, c1).
  IntMatrix block(std::size_t r0, std::size_t r1, std::size_t c0, std::size_t c1) const;
  void set_block(std::size_t r0, std::size_t c0, const IntMatrix& b);
  IntMatrix select_rows(const std::vector<std::size_t>& idx) const;
  IntMatrix select_cols(const std::vector<std::size_t>& idx) const;

  IntMatrix transpose() const;
  bool is_zero() const;

  IntMatrix operator*(const IntMatrix& o) const;
  IntVector operator*(const IntVector& v) const;
  IntMatrix operator+(const IntMatrix& o) const;
  IntMatrix operator-(const IntMatrix& o) const;
  IntMatrix operator-() const;
  IntMatrix scaled(const Integer& s) const;
  bool operator==(const IntMatrix& o) const;

  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

IntMatrix hstack(const IntMatrix& a, const IntMatrix& b);
IntMatrix vstack(const IntMatrix& a, const IntMatrix& b);
IntMatrix block_diagonal(const IntMatrix& a, const IntMatrix& b);

// u * m * v == d, with u, v unimodular, d diagonal, d(i,i) >= 0 and
// d(i,i) | d(i+1,i+1). u_inv and v_inv are the exact inverses.
struct SmithForm {
  IntMatrix d;
  IntMatrix u;
  IntMatrix v;
  IntMatrix u_inv;
  IntMatrix v_inv;
  std::size_t rank = 0;

  Integer diag(std::size_t i) const;
};

SmithForm smith_normal_form(const IntMatrix& m);

// Columns form a basis of the integer kernel {x : m x = 0}.
IntMatrix kernel_basis(const IntMatrix& m);

// Some integer x with m x = y, if one exists.
std::optional<IntVector> solve_integer(const IntMatrix& m, const IntVector& y);

// Least nonnegative residue; modulus 0 leaves the value unchanged.
Integer reduce_mod(const Integer& x, const Integer& modulus);

Integer gcd(const Integer& a, const Integer& b);
Integer lcm(const Integer& a, const Integer& b);

}  // namespace tiltlab
