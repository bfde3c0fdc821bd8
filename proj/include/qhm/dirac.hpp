// Copyright the qhm-lab contributors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <cstdint>
#include <string>
#include <vector>

#include "qhm/algebra.hpp"

namespace qhm
{

// Finite Fourier truncations of the Dirac operator D = sum_j i d_j (x) sigma_j.
//
// Each p-block acts on L^2(T^2) (x) C^2 after the periodizing conjugation
// phi -> e(c p (y - p nu) x) phi, where it reads
//   D_p = (2 pi n + 2 pi c p^2 mu) sigma_X + (2 pi m + 2 pi c p (Y - p nu)) sigma_Y - 2 pi p sigma_Z
// on the mode e(m x + n y), with Y the Toeplitz operator of the sawtooth
// y on [0, 1). Modes |m|, |n| <= K; the spin index is fastest:
//   index = ((m + K)(2K + 1) + (n + K)) * 2 + s.

enum class PauliAxis
{
  X,
  Y,
  Z
};
Eigen::Matrix2cd pauli(PauliAxis axis);

int basis_index(int K, int m, int n, int s);
int block_dimension(int K);

// Fourier coefficient k of the sawtooth t on [0, 1): 1/2 at k = 0, i / (2 pi k) otherwise.
cplx sawtooth_coefficient(int k);

enum class BlockModel
{
  full,
  flat,  // multiplier terms dropped: D_p = 2 pi (n sigma_X + m sigma_Y - p sigma_Z)
};

struct DiracBlock
{
  int p = 0;
  int K = 0;
  Eigen::SparseMatrix<cplx> H;       // symmetrized
  double hermiticity_defect = 0.0;   // max |H - H^dagger| before symmetrization
};
// Requires K >= 4; throws std::runtime_error when the defect exceeds 1e-6.
DiracBlock build_block(const Params &params, int p, int K, BlockModel model = BlockModel::full);

// Eigenvalues of a block, ascending (LAPACK zheevd).
std::vector<double> block_eigenvalues(const DiracBlock &block);

// Least-squares slope of log(value_k) against log k over the 1-based
// window [k_lo, k_hi] of an ascending list.
struct PowerFit
{
  double exponent = 0.0;
  double residual = 0.0;  // rms of the log-log residuals
  int k_lo = 0, k_hi = 0;
};
PowerFit power_fit(const std::vector<double> &ascending, int k_lo, int k_hi);

enum class SpectrumScope
{
  all_blocks,
  p_zero_only,
};

struct SpectrumReport
{
  int K = 0;
  int pmax = 0;
  std::string model;
  std::string scope;
  std::vector<double> abs_eigenvalues;  // ascending, kernel excluded
  int kernel_dimension = 0;
  double max_hermiticity_defect = 0.0;
  // Fits over k in [K^2, 4K^2]: of the eigenvalues of D^2 and of |D|.
  PowerFit squared;
  PowerFit absolute;
};
// Throws std::invalid_argument when the fit window exceeds the spectrum.
SpectrumReport spectrum(const Params &params, int K, BlockModel model = BlockModel::full,
                        SpectrumScope scope = SpectrumScope::all_blocks);
std::string spectrum_csv(const SpectrumReport &report);

// [pi(a), D] = -pi(D a) on the truncated space, for a with p-support {0}
// (then pi(a) is multiplication by a(x - 2p mu, y - 2p nu, 0) in block p).
struct CommutatorReport
{
  double norm_commutator = 0.0;  // max over blocks of ||[pi(a), D_p]||
  double norm_Da = 0.0;          // max over blocks of ||pi(D a)||
  double deviation = 0.0;        // ||[pi(a), D] + pi(D a)|| on modes |m|, |n| <= K/2
};
// Throws std::invalid_argument unless a.support() == {0}.
CommutatorReport commutator_check(const DElement &a, int K);

// S(P) through the left-regular representation of D on L^2(D, tau_D), where
// the derivations act as operators and [D, L_P] = L_{DP} holds exactly. With
// the unit 1 as cyclic vector, D 1 = 0, so
//   -tau_D(psi_2(1, P, P)) = sum_s ||[D, L_P](1 (x) e_s)||^2 = sum_s ||D (P (x) e_s)||^2,
// with each component P(., ., p) truncated to modes |m|, |n| <= K and the x
// multiplier of d_X represented by the sawtooth on [0, 1).
struct HochschildReport
{
  int K = 0;
  double energy = 0.0;
  // |sum over j != k of <d_j P, d_k P> tr(sigma_j sigma_k)|, zero up to rounding.
  double cross_trace = 0.0;
};
HochschildReport hochschild_energy(const DElement &P, int K);

// min over random unit vectors of
//   ||D_p phi||^2 - (||d_x phi||^2 + ||d_y phi||^2 + ||2 pi p phi||^2) / (8 (c^2 + 1)) + (8 pi^2 / 7 + c^2)
struct LowerBoundReport
{
  int samples = 0;
  double min_slack = 0.0;
  bool holds = false;
};
LowerBoundReport lower_bound_check(const Params &params, int K, int samples, std::uint64_t seed);

}  // namespace qhm
