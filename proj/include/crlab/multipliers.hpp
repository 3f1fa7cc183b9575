#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "crlab/kernels.hpp"

namespace crlab {

/// Function on the points of a finite space with values in q x p matrices.
/// Columns have p == 1, rows q == 1.
class MultiplierTable {
 public:
  MultiplierTable() = default;
  MultiplierTable(Index q, Index p, std::vector<ComplexMatrix> values, std::string space_id = {});

  static MultiplierTable constant(std::size_t n, const ComplexMatrix& value);
  static MultiplierTable zeros(std::size_t n, Index q, Index p);

  Index q() const { return q_; }
  Index p() const { return p_; }
  std::size_t size() const { return values_.size(); }
  const ComplexMatrix& operator[](std::size_t i) const { return values_[i]; }
  const ComplexMatrix& at(std::size_t i) const { return values_.at(i); }
  const std::vector<ComplexMatrix>& values() const { return values_; }
  const std::string& space_id() const { return space_id_; }
  void set_space_id(std::string id) { space_id_ = std::move(id); }

  MultiplierTable scaled(double s) const;
  MultiplierTable restricted(const std::vector<std::size_t>& subset) const;
  /// Largest pointwise operator norm.
  double sup_norm() const;

 private:
  Index q_ = 0;
  Index p_ = 0;
  std::vector<ComplexMatrix> values_;
  std::string space_id_;
};

/// Blocks t^2 K_dst(i,j) I_q - K_src(i,j) Phi_i Phi_j^*.
struct PickAssembly {
  HermitianMatrix blocks;
  double t = 0.0;
};

/// OpenMP-parallel assembly over block rows.
PickAssembly pick_matrix(const FiniteKernelSpace& src, const FiniteKernelSpace& dst,
                         const MultiplierTable& phi, double t);
/// Serial reference assembly; produces identical output to pick_matrix.
PickAssembly pick_matrix_serial(const FiniteKernelSpace& src, const FiniteKernelSpace& dst,
                                const MultiplierTable& phi, double t);

struct NormOptions {
  double tol = 1e-10;       // absolute tolerance on t
  double psd_rtol = 1e-13;  // relative eigenvalue tolerance of the feasibility test
  int max_steps = 200;
};

/// Least t (within tol) for which the Pick assembly is PSD; the returned value
/// is the feasible end of the final bracket.
double multiplier_norm(const FiniteKernelSpace& src, const FiniteKernelSpace& dst,
                       const MultiplierTable& phi, const NormOptions& opts = {});
double multiplier_norm(const FiniteKernelSpace& space, const MultiplierTable& phi,
                       const NormOptions& opts = {});

/// Pick assembly PSD at level t (relative tolerance rtol).
bool is_contractive_at(const FiniteKernelSpace& src, const FiniteKernelSpace& dst,
                       const MultiplierTable& phi, double t, double rtol = 1e-12);

MultiplierTable transpose(const MultiplierTable& phi);

/// Column of length M*N to M x N matrices. Entry (i, j) is read from position
/// j*M + i (column-major, row index fastest).
MultiplierTable reshape_column_to_matrix(const MultiplierTable& psi, Index m, Index n);
/// Inverse of reshape_column_to_matrix.
MultiplierTable vectorize(const MultiplierTable& matrix_table);

MultiplierTable multiply(const MultiplierTable& a, const MultiplierTable& b);

/// Table with i.i.d. complex Gaussian values rescaled to multiplier norm `margin`
/// from src to dst.
MultiplierTable random_contractive_table(const FiniteKernelSpace& src, const FiniteKernelSpace& dst,
                                         Index q, Index p, std::uint64_t seed, double margin);
MultiplierTable random_contractive_column(const FiniteKernelSpace& space, Index n_entries,
                                          std::uint64_t seed, double margin);

/// max over sampled contractive columns Phi of ||Psi Phi||; a lower bound for ||Psi||.
double jm_lower_bound(const FiniteKernelSpace& space, const MultiplierTable& psi, int trials,
                      std::uint64_t seed);

/// Coordinate row z = [z_1 ... z_d] as a 1 x d table.
MultiplierTable coordinate_row(const FiniteKernelSpace& space);
/// Block diagonal of n_blocks copies of the coordinate row (n_blocks x d*n_blocks).
MultiplierTable coordinate_block_row(const FiniteKernelSpace& space, Index n_blocks);

}  // namespace crlab
