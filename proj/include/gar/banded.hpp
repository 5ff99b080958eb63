#ifndef GAR_BANDED_HPP
#define GAR_BANDED_HPP

#include <Eigen/Dense>
#include <cmath>

#include "gar/errors.hpp"

namespace gar {

// Symmetric positive-definite band matrix, lower-triangle storage:
// band(r, j) = A(j + r, j) for r = 0..bandwidth (r = 0 is the diagonal).
// Covers every banded system in this library: the state-draw precision
// (block tridiagonal, bandwidth 2K-1), the SV path precision (tridiagonal)
// and the HP-filter normal equations (pentadiagonal).
class BandMatrix {
 public:
  BandMatrix(Eigen::Index n, Eigen::Index bandwidth)
      : n_(n), w_(bandwidth), band_(Eigen::MatrixXd::Zero(bandwidth + 1, n)) {}

  Eigen::Index size() const { return n_; }
  Eigen::Index bandwidth() const { return w_; }

  double& operator()(Eigen::Index r, Eigen::Index j) { return band_(r, j); }
  double operator()(Eigen::Index r, Eigen::Index j) const { return band_(r, j); }

  // Adds v to A(i, j) (and by symmetry A(j, i)); requires |i - j| <= bandwidth.
  void add(Eigen::Index i, Eigen::Index j, double v) {
    if (i < j) std::swap(i, j);
    band_(i - j, j) += v;
  }

  void set_zero() { band_.setZero(); }

  Eigen::VectorXd multiply(const Eigen::VectorXd& x) const {
    Eigen::VectorXd y = Eigen::VectorXd::Zero(n_);
    for (Eigen::Index j = 0; j < n_; ++j) {
      y[j] += band_(0, j) * x[j];
      for (Eigen::Index r = 1; r <= w_ && j + r < n_; ++r) {
        y[j + r] += band_(r, j) * x[j];
        y[j] += band_(r, j) * x[j + r];
      }
    }
    return y;
  }

  Eigen::MatrixXd to_dense() const {
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n_, n_);
    for (Eigen::Index j = 0; j < n_; ++j)
      for (Eigen::Index r = 0; r <= w_ && j + r < n_; ++r) {
        a(j + r, j) = band_(r, j);
        a(j, j + r) = band_(r, j);
      }
    return a;
  }

 private:
  Eigen::Index n_, w_;
  Eigen::MatrixXd band_;
};

// Cholesky factor L (same band layout) of an SPD band matrix, with
// forward/backward triangular solves. Throws NumericError if a pivot is
// not positive.
class BandCholesky {
 public:
  explicit BandCholesky(const BandMatrix& a) : n_(a.size()), w_(a.bandwidth()), l_(a) {
    factorize();
  }

  // Solves A x = b via L L' x = b.
  Eigen::VectorXd solve(const Eigen::VectorXd& b) const {
    Eigen::VectorXd x = solve_lower(b);
    return solve_upper(x);
  }

  // Solves L y = b.
  Eigen::VectorXd solve_lower(const Eigen::VectorXd& b) const {
    Eigen::VectorXd y = b;
    for (Eigen::Index j = 0; j < n_; ++j) {
      y[j] /= l_(0, j);
      const Eigen::Index rmax = std::min(w_, n_ - 1 - j);
      for (Eigen::Index r = 1; r <= rmax; ++r) y[j + r] -= l_(r, j) * y[j];
    }
    return y;
  }

  // Solves L' x = b.
  Eigen::VectorXd solve_upper(const Eigen::VectorXd& b) const {
    Eigen::VectorXd x = b;
    for (Eigen::Index j = n_ - 1; j >= 0; --j) {
      const Eigen::Index rmax = std::min(w_, n_ - 1 - j);
      double s = x[j];
      for (Eigen::Index r = 1; r <= rmax; ++r) s -= l_(r, j) * x[j + r];
      x[j] = s / l_(0, j);
    }
    return x;
  }

  double log_det() const {
    double s = 0.0;
    for (Eigen::Index j = 0; j < n_; ++j) s += std::log(l_(0, j));
    return 2.0 * s;
  }

 private:
  void factorize() {
    for (Eigen::Index j = 0; j < n_; ++j) {
      double d = l_(0, j);
      const Eigen::Index kmin = std::max<Eigen::Index>(0, j - w_);
      for (Eigen::Index k = kmin; k < j; ++k) {
        const double ljk = l_(j - k, k);
        d -= ljk * ljk;
      }
      if (!(d > 0.0) || !std::isfinite(d))
        throw NumericError("band Cholesky: non-positive pivot at index " +
                           std::to_string(j));
      const double lj = std::sqrt(d);
      l_(0, j) = lj;
      const Eigen::Index imax = std::min(n_ - 1, j + w_);
      for (Eigen::Index i = j + 1; i <= imax; ++i) {
        double s = l_(i - j, j);
        const Eigen::Index k0 = std::max<Eigen::Index>({0, j - w_, i - w_});
        for (Eigen::Index k = k0; k < j; ++k) s -= l_(i - k, k) * l_(j - k, k);
        l_(i - j, j) = s / lj;
      }
    }
  }

  Eigen::Index n_, w_;
  BandMatrix l_;
};

}  // namespace gar

#endif  // GAR_BANDED_HPP
