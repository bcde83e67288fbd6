#pragma once

namespace sdcert {

/// Every numeric threshold and search budget, in one place so reports can
/// echo the exact settings they were produced with.
struct Config {
  unsigned precision_bits = 128;

  // Relative modulus gap for biproximality; gaps below gap_tol / 100 count
  // as equal moduli, the band in between is inconclusive.
  double gap_tol = 1e-6;
  // |l2 l3| within this of 1 means the power obstruction fails.
  double unit_band = 1e-9;
  // lambda_1 lambda_4 counts as real when |Im| <= real_tol * |value|.
  double real_tol = 1e-8;

  // Singular values below rank_zero * sigma_max count as zero; those in
  // (rank_zero, rank_ambiguous) * sigma_max make the rank ambiguous.
  double rank_zero = 1e-9;
  double rank_ambiguous = 1e-7;
  double form_residual = 1e-10;
  double isometry_residual = 1e-9;
  // Eigenvector condition number above which a matrix is treated as not
  // diagonalisable.
  double cond_threshold = 1e8;
  double trace_imag_tol = 1e-6;

  int witness_max_len = 8;
  int burnside_max_len = 6;
  int workers = 1;
};

}  // namespace sdcert
