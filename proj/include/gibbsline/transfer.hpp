#ifndef GIBBSLINE_TRANSFER_HPP
#define GIBBSLINE_TRANSFER_HPP

#include <Eigen/Dense>
#include <string>

#include "gibbsline/interactions.hpp"
#include "gibbsline/lattice.hpp"

namespace gibbsline {

/// Nonnegative operator on length-r words: M(a,b) = exp(phi_r of the window a)
/// when the suffix of a overlaps the prefix of b, 0 otherwise. Exactly |A|
/// nonzeros per row; M^r is entrywise positive.
struct TransferMatrix {
  int r = 0;
  int alphabet_size = 0;
  Eigen::MatrixXd mat;

  long dim() const { return mat.rows(); }
};

struct SpectralData {
  double rho = 0.0;
  Eigen::VectorXd left;    // L, gauge: sum_w L(w) R(w) = 1
  Eigen::VectorXd right;   // R, gauge: max entry = 1
  double lambda2_mod = 0.0;
  double residual = 0.0;
  int iterations = 0;
};

TransferMatrix build_transfer(const PairInteraction& I, int r, long dim_cap = 4096);

/// Perron data by two-sided power iteration with max-entry renormalization.
/// The second-eigenvalue modulus is estimated from the residual decay rate.
SpectralData perron(const TransferMatrix& M, double tol = 1e-13, int max_iter = 200000);

/// (M/rho)^s by repeated squaring.
struct ScaledPower {
  long s = 0;
  double base_rho = 0.0;
  Eigen::MatrixXd entries;
};

ScaledPower scaled_power(const TransferMatrix& M, const SpectralData& spectral, long s);

/// Hilbert projective distance log max_{i,j} (u_i v_j)/(u_j v_i) between
/// strictly positive vectors.
double hilbert_metric(const Eigen::VectorXd& u, const Eigen::VectorXd& v);

/// Birkhoff contraction coefficient tau(P) = (1 - sqrt(phi))/(1 + sqrt(phi))
/// with phi = min_{i,j,k,l} P(i,k)P(j,l) / (P(j,k)P(i,l)); requires P > 0
/// entrywise (use M^r for a transfer matrix).
double birkhoff_coefficient(const Eigen::MatrixXd& P);

/// Dense eigensolve oracle for small matrices: returns moduli of all
/// eigenvalues sorted descending. Intended for cross-checks at dim <= 256.
Eigen::VectorXd eigenvalue_moduli_dense(const Eigen::MatrixXd& M);

/// Versioned binary dump of a transfer matrix with its spectral data, for
/// scan resumption.
void save_transfer(const std::string& path, const TransferMatrix& M, const SpectralData& sd);
struct TransferDump {
  TransferMatrix matrix;
  SpectralData spectral;
};
TransferDump load_transfer(const std::string& path);

}  // namespace gibbsline

#endif  // GIBBSLINE_TRANSFER_HPP
