#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace hlp {

using IntVector = std::vector<mpz_class>;

// Dense row-major matrix over Z.  Rows are lattice vectors.
class IntegerMatrix {
 public:
  IntegerMatrix() = default;
  IntegerMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

  static IntegerMatrix identity(std::size_t n);
  static IntegerMatrix from_rows(const std::vector<IntVector>& rows);
  static IntegerMatrix from_rows(std::initializer_list<std::initializer_list<long>> rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  mpz_class& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const mpz_class& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  std::span<mpz_class> row(std::size_t i) { return {a_.data() + i * cols_, cols_}; }
  std::span<const mpz_class> row(std::size_t i) const { return {a_.data() + i * cols_, cols_}; }
  IntVector row_vector(std::size_t i) const;
  void set_row(std::size_t i, std::span<const mpz_class> v);

  void swap_rows(std::size_t i, std::size_t j);
  void append_row(std::span<const mpz_class> v);

  IntegerMatrix transpose() const;
  IntegerMatrix row_range(std::size_t begin, std::size_t end) const;
  IntegerMatrix col_range(std::size_t begin, std::size_t end) const;
  IntegerMatrix select_cols(const std::vector<std::size_t>& cols) const;

  IntegerMatrix operator*(const IntegerMatrix& o) const;
  IntegerMatrix& operator*=(const mpz_class& s);
  bool operator==(const IntegerMatrix& o) const;

  // Largest entry bit length (0 for the zero matrix).
  std::size_t max_bits() const;
  std::string to_string() const;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<mpz_class> a_;
};

IntegerMatrix hstack(const IntegerMatrix& a, const IntegerMatrix& b);
IntegerMatrix vstack(const IntegerMatrix& a, const IntegerMatrix& b);

mpz_class dot(std::span<const mpz_class> a, std::span<const mpz_class> b);
mpz_class norm_sq(std::span<const mpz_class> a);
IntegerMatrix gram(const IntegerMatrix& b);
IntVector vec_mat(std::span<const mpz_class> x, const IntegerMatrix& b);  // x·B

// Dense matrix over Q, entries kept canonical by gmpxx.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}
  explicit RationalMatrix(const IntegerMatrix& m);
  static RationalMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  mpq_class& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const mpq_class& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  RationalMatrix transpose() const;
  RationalMatrix operator*(const RationalMatrix& o) const;
  RationalMatrix& operator*=(const mpq_class& s);
  bool operator==(const RationalMatrix& o) const;

  bool is_integral() const;
  mpz_class common_denominator() const;
  IntegerMatrix to_integer() const;  // throws unless integral

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<mpq_class> a_;
};

}  // namespace hlp
