#include "gibbsline/transfer.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace gibbsline {

TransferMatrix build_transfer(const PairInteraction& I, int r, long dim_cap) {
  if (r < 1) throw std::invalid_argument("build_transfer requires r >= 1");
  int n = I.alphabet_size();
  long dim = 1;
  for (int i = 0; i < r; ++i) {
    dim *= n;
    if (dim > dim_cap)
      throw std::invalid_argument("transfer dimension |A|^r exceeds cap " +
                                  std::to_string(dim_cap));
  }
  TransferMatrix M;
  M.r = r;
  M.alphabet_size = n;
  M.mat = Eigen::MatrixXd::Zero(dim, dim);
  long suffix_mod = dim / n;
  for (long i = 0; i < dim; ++i) {
    Word a = index_word(i, r, n);
    // phi_r(a b_{r-1}) depends only on the first r symbols, i.e. on a
    double w = std::exp(phi_r_word(I, a));
    long base = (i % suffix_mod) * n;
    for (int c = 0; c < n; ++c) M.mat(i, base + c) = w;
  }
  return M;
}

namespace {

// One-sided power iteration; fills vec (max-normalized) and returns the
// Rayleigh estimate. ratio_out receives the tail residual decay ratio.
double power_iterate(const Eigen::MatrixXd& A, Eigen::VectorXd& vec, double tol, int max_iter,
                     double& residual_out, int& iters_out, double& ratio_out) {
  long dim = A.rows();
  // generic deterministic start so no eigendirection is accidentally missed
  Eigen::VectorXd v(dim);
  for (long i = 0; i < dim; ++i) {
    double frac = std::fmod(0.6180339887498949 * static_cast<double>(i + 1), 1.0);
    v[i] = 0.5 + frac;
  }
  double rho = 0.0, prev_res = -1.0, ratio_acc = 0.0;
  int ratio_n = 0;
  for (int it = 1; it <= max_iter; ++it) {
    Eigen::VectorXd w = A * v;
    rho = w.dot(v) / v.squaredNorm();
    double res = (w - rho * v).lpNorm<Eigen::Infinity>();
    if (prev_res > 0.0 && res > 0.0 && res < prev_res) {
      ratio_acc += std::log(res / prev_res);
      ++ratio_n;
    }
    prev_res = res;
    v = w / w.maxCoeff();
    if (res <= tol * rho) {
      vec = v;
      residual_out = res;
      iters_out = it;
      ratio_out = ratio_n > 0 ? std::exp(ratio_acc / ratio_n) : 0.0;
      return rho;
    }
  }
  throw std::runtime_error("perron: max iterations exceeded, last residual " +
                           std::to_string(prev_res));
}

}  // namespace

SpectralData perron(const TransferMatrix& M, double tol, int max_iter) {
  if (tol <= 0.0) throw std::invalid_argument("perron requires tol > 0");
  SpectralData sd;
  double res_r = 0.0, res_l = 0.0, ratio_r = 0.0, ratio_l = 0.0;
  int it_r = 0, it_l = 0;
  Eigen::MatrixXd At = M.mat.transpose();
  double rho_r = power_iterate(M.mat, sd.right, tol, max_iter, res_r, it_r, ratio_r);
  double rho_l = power_iterate(At, sd.left, tol, max_iter, res_l, it_l, ratio_l);
  sd.rho = 0.5 * (rho_r + rho_l);
  sd.residual = std::max(res_r, res_l);
  sd.iterations = std::max(it_r, it_l);
  sd.lambda2_mod = sd.rho * std::max(ratio_r, ratio_l);
  // gauge: max entry of R is 1, then sum L(w) R(w) = 1
  sd.right /= sd.right.maxCoeff();
  sd.left /= sd.left.dot(sd.right);
  if (sd.right.minCoeff() <= 0.0 || sd.left.minCoeff() <= 0.0)
    throw std::runtime_error("perron: eigenvector not strictly positive");
  return sd;
}

ScaledPower scaled_power(const TransferMatrix& M, const SpectralData& spectral, long s) {
  if (s < 0) throw std::invalid_argument("scaled_power requires s >= 0");
  ScaledPower out;
  out.s = s;
  out.base_rho = spectral.rho;
  long dim = M.dim();
  Eigen::MatrixXd base = M.mat / spectral.rho;
  Eigen::MatrixXd acc = Eigen::MatrixXd::Identity(dim, dim);
  long e = s;
  while (e > 0) {
    if (e & 1) acc = acc * base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  out.entries = std::move(acc);
  return out;
}

double hilbert_metric(const Eigen::VectorXd& u, const Eigen::VectorXd& v) {
  if (u.size() != v.size()) throw std::invalid_argument("hilbert_metric: dimension mismatch");
  if (u.minCoeff() <= 0.0 || v.minCoeff() <= 0.0)
    throw std::domain_error("hilbert_metric: nonpositive entry, projective distance infinite");
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  for (long i = 0; i < u.size(); ++i) {
    double q = u[i] / v[i];
    lo = std::min(lo, q);
    hi = std::max(hi, q);
  }
  return std::log(hi / lo);
}

double birkhoff_coefficient(const Eigen::MatrixXd& P) {
  long nrows = P.rows(), ncols = P.cols();
  if ((P.array() <= 0.0).any())
    throw std::domain_error(
        "birkhoff_coefficient: matrix has a nonpositive entry; apply it to an entrywise "
        "positive power such as M^r");
  double phi = 1.0;
  for (long i = 0; i < nrows; ++i) {
    for (long j = 0; j < nrows; ++j) {
      if (i == j) continue;
      double mn = std::numeric_limits<double>::infinity(), mx = 0.0;
      for (long k = 0; k < ncols; ++k) {
        double q = P(i, k) / P(j, k);
        mn = std::min(mn, q);
        mx = std::max(mx, q);
      }
      phi = std::min(phi, mn / mx);
    }
  }
  double sq = std::sqrt(phi);
  return (1.0 - sq) / (1.0 + sq);
}

Eigen::VectorXd eigenvalue_moduli_dense(const Eigen::MatrixXd& M) {
  Eigen::EigenSolver<Eigen::MatrixXd> es(M, false);
  Eigen::VectorXd mods = es.eigenvalues().array().abs();
  std::sort(mods.data(), mods.data() + mods.size(), std::greater<double>());
  return mods;
}

namespace {
constexpr char kMagic[4] = {'G', 'L', 'T', 'M'};
constexpr std::uint32_t kVersion = 1;

template <class T>
void put(std::ostream& os, const T& v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}
template <class T>
void get(std::istream& is, T& v) {
  is.read(reinterpret_cast<char*>(&v), sizeof(T));
}
}  // namespace

void save_transfer(const std::string& path, const TransferMatrix& M, const SpectralData& sd) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("save_transfer: cannot open " + path);
  os.write(kMagic, 4);
  put(os, kVersion);
  put(os, static_cast<std::int32_t>(M.r));
  put(os, static_cast<std::int32_t>(M.alphabet_size));
  std::uint64_t dim = static_cast<std::uint64_t>(M.dim());
  put(os, dim);
  for (long i = 0; i < M.dim(); ++i)
    os.write(reinterpret_cast<const char*>(M.mat.row(i).eval().data()),
             static_cast<std::streamsize>(dim * sizeof(double)));
  put(os, sd.rho);
  os.write(reinterpret_cast<const char*>(sd.left.data()),
           static_cast<std::streamsize>(dim * sizeof(double)));
  os.write(reinterpret_cast<const char*>(sd.right.data()),
           static_cast<std::streamsize>(dim * sizeof(double)));
  put(os, sd.lambda2_mod);
  put(os, sd.residual);
  put(os, static_cast<std::int32_t>(sd.iterations));
  if (!os) throw std::runtime_error("save_transfer: write failed for " + path);
}

TransferDump load_transfer(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("load_transfer: cannot open " + path);
  char magic[4];
  is.read(magic, 4);
  if (!is || std::memcmp(magic, kMagic, 4) != 0)
    throw std::runtime_error("load_transfer: bad magic in " + path);
  std::uint32_t version;
  get(is, version);
  if (version != kVersion) throw std::runtime_error("load_transfer: unsupported version");
  std::int32_t r, asize, iters;
  std::uint64_t dim;
  get(is, r);
  get(is, asize);
  get(is, dim);
  TransferDump d;
  d.matrix.r = r;
  d.matrix.alphabet_size = asize;
  d.matrix.mat.resize(static_cast<long>(dim), static_cast<long>(dim));
  std::vector<double> row(dim);
  for (std::uint64_t i = 0; i < dim; ++i) {
    is.read(reinterpret_cast<char*>(row.data()),
            static_cast<std::streamsize>(dim * sizeof(double)));
    for (std::uint64_t j = 0; j < dim; ++j)
      d.matrix.mat(static_cast<long>(i), static_cast<long>(j)) = row[j];
  }
  get(is, d.spectral.rho);
  d.spectral.left.resize(static_cast<long>(dim));
  d.spectral.right.resize(static_cast<long>(dim));
  is.read(reinterpret_cast<char*>(d.spectral.left.data()),
          static_cast<std::streamsize>(dim * sizeof(double)));
  is.read(reinterpret_cast<char*>(d.spectral.right.data()),
          static_cast<std::streamsize>(dim * sizeof(double)));
  get(is, d.spectral.lambda2_mod);
  get(is, d.spectral.residual);
  get(is, iters);
  d.spectral.iterations = iters;
  if (!is) throw std::runtime_error("load_transfer: truncated file " + path);
  return d;
}

}  // namespace gibbsline
