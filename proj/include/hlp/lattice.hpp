#pragma once

#include <vector>

#include "hlp/matrix.hpp"

namespace hlp {

// Full-row-rank integer basis with cached Gram determinant and size.
class LatticeBasis {
 public:
  LatticeBasis() = default;
  explicit LatticeBasis(IntegerMatrix rows);  // throws SingularBasis / InvalidArgument
  // For rows known to span a lattice of the given Gram determinant (e.g. a
  // unimodular image of a validated basis); skips the determinant.
  static LatticeBasis trusted(IntegerMatrix rows, mpz_class gram_det);

  const IntegerMatrix& matrix() const { return b_; }
  std::size_t rank() const { return b_.rows(); }
  std::size_t ambient_dim() const { return b_.cols(); }
  const mpz_class& gram_det() const { return gram_det_; }
  const mpq_class& sigma_sq() const { return sigma_sq_; }  // (1/n) sum ||v||^2
  double sigma() const;
  double log2_sigma() const;

 private:
  IntegerMatrix b_;
  mpz_class gram_det_;
  mpq_class sigma_sq_;
};

mpq_class sigma_sq(const IntegerMatrix& b);
double sigma_size(const LatticeBasis& b);

struct Volume {
  mpz_class squared;  // Gram determinant
  double value;
  double log2;
};
Volume lattice_volume(const LatticeBasis& b);

// log2 of a positive integer, accurate for arbitrary sizes.
double log2_mpz(const mpz_class& x);
double log2_mpq(const mpq_class& x);

struct MinimaProfile {
  std::vector<double> values;
  std::vector<mpz_class> exact_sq;
};

// Exhaustive enumeration over coefficient vectors; rank <= 5.
MinimaProfile successive_minima_bruteforce(const LatticeBasis& b, double radius);
// Same, with the radius taken from the longest vector of an LLL-reduced basis.
MinimaProfile successive_minima(const LatticeBasis& b);

}  // namespace hlp
