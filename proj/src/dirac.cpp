// Copyright the qhm-lab contributors.
// SPDX-License-Identifier: Apache-2.0

#include "qhm/dirac.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <cstdio>
#include <random>
#include <sstream>
#include <stdexcept>

#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

#include "qhm/sigma.hpp"

namespace qhm
{

namespace
{

constexpr cplx kI{0.0, 1.0};

using Triplets = std::vector<Eigen::Triplet<cplx>>;
using SparseC = Eigen::SparseMatrix<cplx>;

// Fourier coefficients g_{j,l} = int g(x, y) e(-(j x + l y)) of a smooth
// periodic function from an N x N sample grid, N a power of two.
class Coefficients
{
public:
  Coefficients(int N, const std::function<cplx(double, double)> &g) : N_(N), data_(size_t(N) * N)
  {
    for (int i = 0; i < N; i++)
    {
      for (int j = 0; j < N; j++)
      {
        data_[size_t(i) * N + j] = g(double(i) / N, double(j) / N);
      }
    }
    auto *buf = reinterpret_cast<fftw_complex *>(data_.data());
    fftw_plan plan = fftw_plan_dft_2d(N, N, buf, buf, FFTW_FORWARD, FFTW_ESTIMATE);
    fftw_execute(plan);
    fftw_destroy_plan(plan);
    for (auto &v : data_)
    {
      v /= double(N) * N;
    }
  }

  // mode (m in x, n in y); |m|, |n| < N / 2
  cplx operator()(int m, int n) const
  {
    const int i = (m % N_ + N_) % N_, j = (n % N_ + N_) % N_;
    return data_[size_t(i) * N_ + j];
  }

private:
  int N_;
  std::vector<cplx> data_;
};

int grid_size(int K)
{
  int N = 64;
  while (N < 8 * K)
  {
    N *= 2;
  }
  return N;
}

void add_spin(Triplets &t, int row_mode, int col_mode, const Eigen::Matrix2cd &m, cplx scale)
{
  for (int s = 0; s < 2; s++)
  {
    for (int r = 0; r < 2; r++)
    {
      const cplx v = scale * m(s, r);
      if (v != 0.0)
      {
        t.emplace_back(2 * row_mode + s, 2 * col_mode + r, v);
      }
    }
  }
}

int mode_index(int K, int m, int n)
{
  return (m + K) * (2 * K + 1) + (n + K);
}

// Multiplication by g in the truncated basis, with spin matrix `spin`.
void add_multiplication(Triplets &t, int K, const Coefficients &g, const Eigen::Matrix2cd &spin,
                        cplx scale)
{
  double gmax = 0.0;
  for (int j = -2 * K; j <= 2 * K; j++)
  {
    for (int l = -2 * K; l <= 2 * K; l++)
    {
      gmax = std::max(gmax, std::abs(g(j, l)));
    }
  }
  const double cutoff = 1e-16 * gmax;
  for (int m = -K; m <= K; m++)
  {
    for (int n = -K; n <= K; n++)
    {
      for (int m2 = -K; m2 <= K; m2++)
      {
        for (int n2 = -K; n2 <= K; n2++)
        {
          const cplx v = g(m - m2, n - n2);
          if (std::abs(v) > cutoff)
          {
            add_spin(t, mode_index(K, m, n), mode_index(K, m2, n2), spin, scale * v);
          }
        }
      }
    }
  }
}

SparseC from_triplets(int dim, const Triplets &t)
{
  SparseC M(dim, dim);
  M.setFromTriplets(t.begin(), t.end());
  return M;
}

double max_abs(const SparseC &M)
{
  double worst = 0.0;
  for (int k = 0; k < M.outerSize(); k++)
  {
    for (SparseC::InnerIterator it(M, k); it; ++it)
    {
      worst = std::max(worst, std::abs(it.value()));
    }
  }
  return worst;
}

// Largest singular value by power iteration on M^dagger M.
double operator_norm(const SparseC &M)
{
  Eigen::VectorXcd v(M.cols());
  for (int i = 0; i < v.size(); i++)
  {
    v(i) = std::polar(1.0, 0.7 * i);
  }
  v.normalize();
  double sigma = 0.0;
  for (int it = 0; it < 500; it++)
  {
    Eigen::VectorXcd w = M.adjoint() * (M * v);
    const double nw = w.norm();
    if (nw == 0.0)
    {
      return 0.0;
    }
    const double next = std::sqrt(nw);
    v = w / nw;
    if (std::abs(next - sigma) < 1e-12 * next)
    {
      return next;
    }
    sigma = next;
  }
  return sigma;
}

double dense_norm(const Eigen::MatrixXcd &M)
{
  if (M.size() == 0)
  {
    return 0.0;
  }
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(M);
  return svd.singularValues()(0);
}

}  // namespace

Eigen::Matrix2cd pauli(PauliAxis axis)
{
  Eigen::Matrix2cd s;
  switch (axis)
  {
  case PauliAxis::X:
    s << 0, 1, 1, 0;
    break;
  case PauliAxis::Y:
    s << 0, -kI, kI, 0;
    break;
  case PauliAxis::Z:
    s << 1, 0, 0, -1;
    break;
  }
  return s;
}

int basis_index(int K, int m, int n, int s)
{
  return mode_index(K, m, n) * 2 + s;
}

int block_dimension(int K)
{
  return 2 * (2 * K + 1) * (2 * K + 1);
}

cplx sawtooth_coefficient(int k)
{
  return k == 0 ? cplx(0.5) : cplx(0.0, 1.0 / (kTwoPi * k));
}

DiracBlock build_block(const Params &params, int p, int K, BlockModel model)
{
  if (K < 4)
  {
    throw std::invalid_argument("Fourier cutoff K must be at least 4");
  }
  const auto sx = pauli(PauliAxis::X), sy = pauli(PauliAxis::Y), sz = pauli(PauliAxis::Z);
  const bool full = model == BlockModel::full;
  const double c = params.c;
  Triplets t;
  for (int m = -K; m <= K; m++)
  {
    for (int n = -K; n <= K; n++)
    {
      const int row = mode_index(K, m, n);
      double ax = kTwoPi * n, ay = kTwoPi * m;
      if (full)
      {
        ax += kTwoPi * c * p * p * params.mu;
        ay -= kTwoPi * c * p * p * params.nu;
      }
      add_spin(t, row, row, sx, ax);
      add_spin(t, row, row, sy, ay);
      add_spin(t, row, row, sz, -kTwoPi * p);
      if (full && p != 0)
      {
        for (int n2 = -K; n2 <= K; n2++)
        {
          add_spin(t, row, mode_index(K, m, n2), sy, kTwoPi * c * p * sawtooth_coefficient(n - n2));
        }
      }
    }
  }
  DiracBlock b;
  b.p = p;
  b.K = K;
  const SparseC H = from_triplets(block_dimension(K), t);
  const SparseC Hd = H.adjoint();
  b.hermiticity_defect = max_abs(SparseC(H - Hd));
  if (b.hermiticity_defect > 1e-6)
  {
    throw std::runtime_error("Dirac block p = " + std::to_string(p) +
                             " is not Hermitian: defect " + std::to_string(b.hermiticity_defect));
  }
  b.H = 0.5 * (H + Hd);
  return b;
}

std::vector<double> block_eigenvalues(const DiracBlock &block)
{
  Eigen::MatrixXcd A(block.H);
  const int n = static_cast<int>(A.rows());
  std::vector<double> w(n);
  const int info = LAPACKE_zheevd(LAPACK_COL_MAJOR, 'N', 'U', n, A.data(), n, w.data());
  if (info != 0)
  {
    throw std::runtime_error("zheevd failed with info " + std::to_string(info));
  }
  return w;
}

PowerFit power_fit(const std::vector<double> &ascending, int k_lo, int k_hi)
{
  if (k_lo < 1 || k_hi <= k_lo || k_hi > static_cast<int>(ascending.size()))
  {
    throw std::invalid_argument("fit window [" + std::to_string(k_lo) + ", " + std::to_string(k_hi) +
                                "] exceeds the " + std::to_string(ascending.size()) +
                                " available eigenvalues");
  }
  const int n = k_hi - k_lo + 1;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int k = k_lo; k <= k_hi; k++)
  {
    const double x = std::log(double(k)), y = std::log(ascending[k - 1]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  PowerFit f;
  f.k_lo = k_lo;
  f.k_hi = k_hi;
  f.exponent = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  const double intercept = (sy - f.exponent * sx) / n;
  double rss = 0;
  for (int k = k_lo; k <= k_hi; k++)
  {
    const double r = std::log(ascending[k - 1]) - intercept - f.exponent * std::log(double(k));
    rss += r * r;
  }
  f.residual = std::sqrt(rss / n);
  return f;
}

SpectrumReport spectrum(const Params &params, int K, BlockModel model, SpectrumScope scope)
{
  params.validate();
  SpectrumReport rep;
  rep.K = K;
  rep.pmax = scope == SpectrumScope::all_blocks ? params.pmax : 0;
  rep.model = model == BlockModel::full ? "full" : "flat";
  rep.scope = scope == SpectrumScope::all_blocks ? "all_blocks" : "p_zero_only";
  for (int p = -rep.pmax; p <= rep.pmax; p++)
  {
    const DiracBlock b = build_block(params, p, K, model);
    rep.max_hermiticity_defect = std::max(rep.max_hermiticity_defect, b.hermiticity_defect);
    for (double l : block_eigenvalues(b))
    {
      if (std::abs(l) < 1e-9)
      {
        rep.kernel_dimension++;
      }
      else
      {
        rep.abs_eigenvalues.push_back(std::abs(l));
      }
    }
  }
  std::sort(rep.abs_eigenvalues.begin(), rep.abs_eigenvalues.end());
  std::vector<double> squares(rep.abs_eigenvalues.size());
  std::transform(rep.abs_eigenvalues.begin(), rep.abs_eigenvalues.end(), squares.begin(),
                 [](double l) { return l * l; });
  rep.squared = power_fit(squares, K * K, 4 * K * K);
  rep.absolute = power_fit(rep.abs_eigenvalues, K * K, 4 * K * K);
  return rep;
}

std::string spectrum_csv(const SpectrumReport &report)
{
  std::ostringstream out;
  out << "k,mu_k\n";
  char line[64];
  for (size_t k = 0; k < report.abs_eigenvalues.size(); k++)
  {
    std::snprintf(line, sizeof line, "%zu,%.12g\n", k + 1, report.abs_eigenvalues[k]);
    out << line;
  }
  return out.str();
}

CommutatorReport commutator_check(const DElement &a, int K)
{
  if (a.support() != std::vector<int>{0})
  {
    throw std::invalid_argument("commutator_check needs an element with p-support {0}");
  }
  const Params &P = a.params();
  const int N = grid_size(K);
  const int dim = block_dimension(K);
  const Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();
  const DElement da[3] = {derive_D(LieVector::X(), a), derive_D(LieVector::Y(), a),
                          derive_D(LieVector::Z(), a)};
  const PauliAxis axes[3] = {PauliAxis::X, PauliAxis::Y, PauliAxis::Z};

  std::vector<int> interior;
  for (int m = -K / 2; m <= K / 2; m++)
  {
    for (int n = -K / 2; n <= K / 2; n++)
    {
      interior.push_back(basis_index(K, m, n, 0));
      interior.push_back(basis_index(K, m, n, 1));
    }
  }

  CommutatorReport rep;
  for (int p = -P.pmax; p <= P.pmax; p++)
  {
    const double sx = 2.0 * p * P.mu, sy = 2.0 * p * P.nu;
    const auto shifted = [sx, sy](const DElement &e)
    { return [&e, sx, sy](double x, double y) { return e(x - sx, y - sy, 0); }; };
    Triplets ta, td;
    add_multiplication(ta, K, Coefficients(N, shifted(a)), id, 1.0);
    for (int j = 0; j < 3; j++)
    {
      add_multiplication(td, K, Coefficients(N, shifted(da[j])), pauli(axes[j]), kI);
    }
    const SparseC A = from_triplets(dim, ta), Da = from_triplets(dim, td);
    const SparseC H = build_block(P, p, K).H;
    const SparseC C = SparseC(A * H) - SparseC(H * A);
    const SparseC dev = C + Da;
    rep.norm_commutator = std::max(rep.norm_commutator, operator_norm(C));
    rep.norm_Da = std::max(rep.norm_Da, operator_norm(Da));

    const Eigen::MatrixXcd dense(dev);
    Eigen::MatrixXcd sub(interior.size(), interior.size());
    for (size_t i = 0; i < interior.size(); i++)
    {
      for (size_t j = 0; j < interior.size(); j++)
      {
        sub(i, j) = dense(interior[i], interior[j]);
      }
    }
    rep.deviation = std::max(rep.deviation, dense_norm(sub));
  }
  return rep;
}

HochschildReport hochschild_energy(const DElement &Pe, int K)
{
  require_projection(Pe);
  const Params &P = Pe.params();
  const int N = grid_size(K);
  const int W = 2 * K + 1;
  const double c = P.c;
  const Eigen::Matrix2cd sigma[3] = {pauli(PauliAxis::X), pauli(PauliAxis::Y), pauli(PauliAxis::Z)};

  HochschildReport rep;
  rep.K = K;
  cplx cross = 0.0;
  for (int p : Pe.support())
  {
    const Coefficients hat(N, [&](double x, double y) { return Pe(x, y, p); });
    // a_j: coefficients of i d_j Phat on the window
    std::vector<cplx> a[3];
    for (auto &v : a)
    {
      v.assign(size_t(W) * W, 0.0);
    }
    for (int m = -K; m <= K; m++)
    {
      for (int n = -K; n <= K; n++)
      {
        const size_t idx = size_t(m + K) * W + (n + K);
        const cplx h = hat(m, n);
        cplx xmul = 0.0;
        if (p != 0)
        {
          for (int m2 = -K; m2 <= K; m2++)
          {
            xmul += sawtooth_coefficient(m - m2) * hat(m2, n);
          }
        }
        a[0][idx] = (kTwoPi * n + kTwoPi * c * p * p * P.mu) * h - kTwoPi * c * p * xmul;
        a[1][idx] = kTwoPi * m * h;
        a[2][idx] = -kTwoPi * p * h;
      }
    }
    for (int s = 0; s < 2; s++)
    {
      for (size_t idx = 0; idx < a[0].size(); idx++)
      {
        Eigen::Vector2cd v = Eigen::Vector2cd::Zero();
        for (int j = 0; j < 3; j++)
        {
          v += a[j][idx] * sigma[j].col(s);
        }
        rep.energy += v.squaredNorm();
      }
    }
    for (int j = 0; j < 3; j++)
    {
      for (int k = 0; k < 3; k++)
      {
        if (j == k)
        {
          continue;
        }
        cplx inner = 0.0;
        for (size_t idx = 0; idx < a[j].size(); idx++)
        {
          inner += std::conj(a[j][idx]) * a[k][idx];
        }
        cross += inner * (sigma[j].adjoint() * sigma[k]).trace();
      }
    }
  }
  rep.cross_trace = std::abs(cross);
  return rep;
}

LowerBoundReport lower_bound_check(const Params &params, int K, int samples, std::uint64_t seed)
{
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  std::uniform_int_distribution<int> pick_p(-params.pmax, params.pmax);
  std::uniform_real_distribution<double> pick_width(1.0, double(K));
  const double c2 = double(params.c) * params.c;
  const double lower = 1.0 / (8.0 * (c2 + 1.0)), shift = 8.0 * kPi * kPi / 7.0 + c2;

  LowerBoundReport rep;
  rep.samples = samples;
  rep.min_slack = std::numeric_limits<double>::infinity();
  std::vector<DiracBlock> blocks;
  for (int p = -params.pmax; p <= params.pmax; p++)
  {
    blocks.push_back(build_block(params, p, K));
  }
  for (int t = 0; t < samples; t++)
  {
    const int p = pick_p(rng);
    const double width = pick_width(rng);
    Eigen::VectorXcd phi(block_dimension(K));
    double grad = 0.0;
    for (int m = -K; m <= K; m++)
    {
      for (int n = -K; n <= K; n++)
      {
        const double env = std::exp(-0.5 * (m * m + n * n) / (width * width));
        for (int s = 0; s < 2; s++)
        {
          phi(basis_index(K, m, n, s)) = env * cplx(gauss(rng), gauss(rng));
        }
      }
    }
    phi.normalize();
    for (int m = -K; m <= K; m++)
    {
      for (int n = -K; n <= K; n++)
      {
        const double w = std::norm(phi(basis_index(K, m, n, 0))) + std::norm(phi(basis_index(K, m, n, 1)));
        grad += kTwoPi * kTwoPi * (double(m) * m + double(n) * n + double(p) * p) * w;
      }
    }
    const double lhs = (blocks[p + params.pmax].H * phi).squaredNorm();
    rep.min_slack = std::min(rep.min_slack, lhs - (lower * grad - shift));
  }
  rep.holds = rep.min_slack >= 0.0;
  return rep;
}

}  // namespace qhm
