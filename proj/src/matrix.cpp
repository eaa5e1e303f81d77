#include "hlp/matrix.hpp"

#include <algorithm>
#include <sstream>

#include "hlp/errors.hpp"

namespace hlp {

IntegerMatrix IntegerMatrix::identity(std::size_t n) {
  IntegerMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntegerMatrix IntegerMatrix::from_rows(const std::vector<IntVector>& rows) {
  if (rows.empty()) return {};
  IntegerMatrix m(rows.size(), rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != m.cols_) throw DimensionMismatch("ragged rows");
    m.set_row(i, rows[i]);
  }
  return m;
}

IntegerMatrix IntegerMatrix::from_rows(std::initializer_list<std::initializer_list<long>> rows) {
  std::vector<IntVector> v;
  for (auto& r : rows) {
    IntVector x;
    for (long e : r) x.emplace_back(e);
    v.push_back(std::move(x));
  }
  return from_rows(v);
}

IntVector IntegerMatrix::row_vector(std::size_t i) const {
  auto r = row(i);
  return IntVector(r.begin(), r.end());
}

void IntegerMatrix::set_row(std::size_t i, std::span<const mpz_class> v) {
  if (v.size() != cols_) throw DimensionMismatch("set_row: length");
  std::copy(v.begin(), v.end(), a_.begin() + static_cast<std::ptrdiff_t>(i * cols_));
}

void IntegerMatrix::swap_rows(std::size_t i, std::size_t j) {
  if (i == j) return;
  for (std::size_t k = 0; k < cols_; ++k) mpz_swap((*this)(i, k).get_mpz_t(), (*this)(j, k).get_mpz_t());
}

void IntegerMatrix::append_row(std::span<const mpz_class> v) {
  if (rows_ == 0 && cols_ == 0) cols_ = v.size();
  if (v.size() != cols_) throw DimensionMismatch("append_row: length");
  a_.insert(a_.end(), v.begin(), v.end());
  ++rows_;
}

IntegerMatrix IntegerMatrix::transpose() const {
  IntegerMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

IntegerMatrix IntegerMatrix::row_range(std::size_t begin, std::size_t end) const {
  IntegerMatrix m(end - begin, cols_);
  for (std::size_t i = begin; i < end; ++i) m.set_row(i - begin, row(i));
  return m;
}

IntegerMatrix IntegerMatrix::col_range(std::size_t begin, std::size_t end) const {
  IntegerMatrix m(rows_, end - begin);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = begin; j < end; ++j) m(i, j - begin) = (*this)(i, j);
  return m;
}

IntegerMatrix IntegerMatrix::select_cols(const std::vector<std::size_t>& cols) const {
  IntegerMatrix m(rows_, cols.size());
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) m(i, j) = (*this)(i, cols[j]);
  return m;
}

IntegerMatrix IntegerMatrix::operator*(const IntegerMatrix& o) const {
  if (cols_ != o.rows_) throw DimensionMismatch("matrix product");
  IntegerMatrix p(rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const mpz_class& a = (*this)(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) mpz_addmul(p(i, j).get_mpz_t(), a.get_mpz_t(), o(k, j).get_mpz_t());
    }
  return p;
}

IntegerMatrix& IntegerMatrix::operator*=(const mpz_class& s) {
  for (auto& x : a_) x *= s;
  return *this;
}

bool IntegerMatrix::operator==(const IntegerMatrix& o) const {
  return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
}

std::size_t IntegerMatrix::max_bits() const {
  std::size_t b = 0;
  for (auto& x : a_)
    if (x != 0) b = std::max(b, mpz_sizeinbase(x.get_mpz_t(), 2));
  return b;
}

std::string IntegerMatrix::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < rows_; ++i) {
    os << (i ? " [" : "[");
    for (std::size_t j = 0; j < cols_; ++j) os << (j ? " " : "") << (*this)(i, j);
    os << ']';
    if (i + 1 < rows_) os << '\n';
  }
  os << ']';
  return os.str();
}

IntegerMatrix hstack(const IntegerMatrix& a, const IntegerMatrix& b) {
  if (a.rows() != b.rows()) throw DimensionMismatch("hstack");
  IntegerMatrix m(a.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j) m(i, a.cols() + j) = b(i, j);
  }
  return m;
}

IntegerMatrix vstack(const IntegerMatrix& a, const IntegerMatrix& b) {
  if (a.empty()) return b;
  if (b.empty()) return a;
  if (a.cols() != b.cols()) throw DimensionMismatch("vstack");
  IntegerMatrix m = a;
  for (std::size_t i = 0; i < b.rows(); ++i) m.append_row(b.row(i));
  return m;
}

mpz_class dot(std::span<const mpz_class> a, std::span<const mpz_class> b) {
  if (a.size() != b.size()) throw DimensionMismatch("dot");
  mpz_class s;
  for (std::size_t i = 0; i < a.size(); ++i) mpz_addmul(s.get_mpz_t(), a[i].get_mpz_t(), b[i].get_mpz_t());
  return s;
}

mpz_class norm_sq(std::span<const mpz_class> a) { return dot(a, a); }

IntegerMatrix gram(const IntegerMatrix& b) {
  IntegerMatrix g(b.rows(), b.rows());
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      g(i, j) = dot(b.row(i), b.row(j));
      g(j, i) = g(i, j);
    }
  return g;
}

IntVector vec_mat(std::span<const mpz_class> x, const IntegerMatrix& b) {
  if (x.size() != b.rows()) throw DimensionMismatch("vec_mat");
  IntVector v(b.cols());
  for (std::size_t i = 0; i < b.rows(); ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < b.cols(); ++j) mpz_addmul(v[j].get_mpz_t(), x[i].get_mpz_t(), b(i, j).get_mpz_t());
  }
  return v;
}

RationalMatrix::RationalMatrix(const IntegerMatrix& m) : rows_(m.rows()), cols_(m.cols()), a_(m.rows() * m.cols()) {
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = m(i, j);
}

RationalMatrix RationalMatrix::identity(std::size_t n) {
  RationalMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

RationalMatrix RationalMatrix::transpose() const {
  RationalMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

RationalMatrix RationalMatrix::operator*(const RationalMatrix& o) const {
  if (cols_ != o.rows_) throw DimensionMismatch("rational product");
  RationalMatrix p(rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const mpq_class& a = (*this)(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) p(i, j) += a * o(k, j);
    }
  return p;
}

RationalMatrix& RationalMatrix::operator*=(const mpq_class& s) {
  for (auto& x : a_) x *= s;
  return *this;
}

bool RationalMatrix::operator==(const RationalMatrix& o) const {
  return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
}

bool RationalMatrix::is_integral() const {
  return std::all_of(a_.begin(), a_.end(), [](const mpq_class& x) { return x.get_den() == 1; });
}

mpz_class RationalMatrix::common_denominator() const {
  mpz_class d = 1;
  for (auto& x : a_) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), x.get_den_mpz_t());
  return d;
}

IntegerMatrix RationalMatrix::to_integer() const {
  if (!is_integral()) throw InvalidArgument("rational matrix is not integral");
  IntegerMatrix m(rows_, cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) m(i, j) = (*this)(i, j).get_num();
  return m;
}

}  // namespace hlp
