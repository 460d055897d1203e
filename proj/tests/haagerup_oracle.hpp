// Copyright 2026 The qgames Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Brute-force Haagerup norm
//   ||u||_h = inf { ||sum A_i A_i^*||^{1/2} ||sum B_i^* B_i||^{1/2} : u = sum A_i (x) B_i }
// by direct minimization over explicit decompositions with `terms` summands.
// The A_i are free; given them, the B_i are the least-norm solution of the
// linear equation u = sum A_i (x) B_i (any other solution only adds a PSD
// term to sum B_i^* B_i). The largest eigenvalues are smoothed by a
// log-sum-exp whose temperature is lowered in stages, and each stage is
// minimized with GSL's BFGS using the analytic gradient.

#ifndef QGAMES_TESTS_HAAGERUP_ORACLE_HPP_
#define QGAMES_TESTS_HAAGERUP_ORACLE_HPP_

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include <Eigen/Dense>
#include <gsl/gsl_errno.h>
#include <gsl/gsl_multimin.h>

#include "qgames/tensor.hpp"

namespace qgames::oracle {

struct BruteForceHaagerup {
  double norm = std::numeric_limits<double>::infinity();
  double reconstruction_error = 0.0;  // max |sum A_i (x) B_i - u| of the best point
};

class HaagerupSearch {
 public:
  HaagerupSearch(const ComplexMatrix& u, std::size_t dA, std::size_t dB, std::size_t terms)
      : dA_(dA), dB_(dB), terms_(terms), u_(u) {
    // R[(a, a'), (b, b')] = u[(a, b), (a', b')], so u = sum A_i (x) B_i is
    // R = P Q with column i of P = vec(A_i) and row i of Q = vec(B_i).
    r_ = Eigen::MatrixXcd::Zero(dA * dA, dB * dB);
    for (std::size_t a = 0; a < dA; ++a)
      for (std::size_t a2 = 0; a2 < dA; ++a2)
        for (std::size_t b = 0; b < dB; ++b)
          for (std::size_t b2 = 0; b2 < dB; ++b2)
            r_(a * dA + a2, b * dB + b2) = u(a * dB + b, a2 * dB + b2);
  }

  std::size_t dimension() const { return 2 * dA_ * dA_ * terms_; }

  // Exact (unsmoothed) value at x, or +inf if P is rank deficient.
  double exact(const double* x, double* recon = nullptr) const {
    Eigen::MatrixXcd ga, gb;
    if (!grams(x, ga, gb, recon)) return std::numeric_limits<double>::infinity();
    return std::sqrt(top(ga) * top(gb));
  }

  double smoothed(const double* x, double temperature) const {
    Eigen::MatrixXcd ga, gb;
    if (!grams(x, ga, gb, nullptr)) return 1e6;
    return std::log(soft_top(ga, temperature, nullptr)) +
           std::log(soft_top(gb, temperature, nullptr));
  }

  // Value and analytic gradient of smoothed(). With df = Re tr(G^* dP), the
  // gradient in (re, im) coordinates is (Re G, Im G).
  double smoothed_grad(const double* x, double temperature, double* grad) const {
    const std::size_t na = dA_ * dA_, nb = dB_ * dB_;
    const Eigen::MatrixXcd p = unpack(x);
    const Eigen::MatrixXcd ppt = p * p.adjoint();
    Eigen::LLT<Eigen::MatrixXcd> llt(ppt);
    if (llt.info() != Eigen::Success) {
      std::fill(grad, grad + dimension(), 0.0);
      return 1e6;
    }
    const Eigen::MatrixXcd h = llt.solve(r_);
    const Eigen::MatrixXcd q = p.adjoint() * h;
    Eigen::MatrixXcd ga, gb;
    factor_grams(p, q, ga, gb);
    Eigen::MatrixXcd wa, wb;
    const double sa = soft_top(ga, temperature, &wa);
    const double sb = soft_top(gb, temperature, &wb);
    wa /= sa;
    wb /= sb;

    Eigen::MatrixXcd gp(na, terms_), gq(terms_, nb);
    for (std::size_t k = 0; k < terms_; ++k) {
      const Eigen::MatrixXcd da = 2.0 * wa * factor_a(p, k);
      const Eigen::MatrixXcd db = 2.0 * factor_b(q, k) * wb;
      for (std::size_t i = 0; i < dA_; ++i)
        for (std::size_t j = 0; j < dA_; ++j) gp(i * dA_ + j, k) = da(i, j);
      for (std::size_t i = 0; i < dB_; ++i)
        for (std::size_t j = 0; j < dB_; ++j) gq(k, i * dB_ + j) = db(i, j);
    }
    // Pull the Q gradient back through Q = P^* (P P^*)^{-1} R.
    const Eigen::MatrixXcd xm = llt.solve(p * gq).adjoint();  // Gq^* P^* N
    gp += h * gq.adjoint() - xm.adjoint() * h.adjoint() * p - h * xm * p;
    for (std::size_t i = 0; i < na; ++i)
      for (std::size_t k = 0; k < terms_; ++k) {
        grad[2 * (i * terms_ + k)] = gp(i, k).real();
        grad[2 * (i * terms_ + k) + 1] = gp(i, k).imag();
      }
    return std::log(sa) + std::log(sb);
  }

 private:
  Eigen::MatrixXcd unpack(const double* x) const {
    Eigen::MatrixXcd p(dA_ * dA_, terms_);
    for (std::size_t i = 0; i < dA_ * dA_; ++i)
      for (std::size_t k = 0; k < terms_; ++k)
        p(i, k) = Complex(x[2 * (i * terms_ + k)], x[2 * (i * terms_ + k) + 1]);
    return p;
  }

  Eigen::MatrixXcd factor_a(const Eigen::MatrixXcd& p, std::size_t k) const {
    Eigen::MatrixXcd a(dA_, dA_);
    for (std::size_t i = 0; i < dA_; ++i)
      for (std::size_t j = 0; j < dA_; ++j) a(i, j) = p(i * dA_ + j, k);
    return a;
  }

  Eigen::MatrixXcd factor_b(const Eigen::MatrixXcd& q, std::size_t k) const {
    Eigen::MatrixXcd b(dB_, dB_);
    for (std::size_t i = 0; i < dB_; ++i)
      for (std::size_t j = 0; j < dB_; ++j) b(i, j) = q(k, i * dB_ + j);
    return b;
  }

  void factor_grams(const Eigen::MatrixXcd& p, const Eigen::MatrixXcd& q, Eigen::MatrixXcd& ga,
                    Eigen::MatrixXcd& gb) const {
    ga = Eigen::MatrixXcd::Zero(dA_, dA_);
    gb = Eigen::MatrixXcd::Zero(dB_, dB_);
    for (std::size_t k = 0; k < terms_; ++k) {
      const Eigen::MatrixXcd a = factor_a(p, k), b = factor_b(q, k);
      ga += a * a.adjoint();
      gb += b.adjoint() * b;
    }
  }

  bool grams(const double* x, Eigen::MatrixXcd& ga, Eigen::MatrixXcd& gb, double* recon) const {
    const Eigen::MatrixXcd p = unpack(x);
    Eigen::LLT<Eigen::MatrixXcd> llt(p * p.adjoint());
    if (llt.info() != Eigen::Success) return false;
    const Eigen::MatrixXcd q = p.adjoint() * llt.solve(r_);  // least-norm solution
    factor_grams(p, q, ga, gb);
    if (recon) {
      ComplexMatrix sum = ComplexMatrix::Zero(u_.rows(), u_.cols());
      for (std::size_t k = 0; k < terms_; ++k) {
        const Eigen::MatrixXcd a = factor_a(p, k), b = factor_b(q, k);
        for (std::size_t i = 0; i < dA_; ++i)
          for (std::size_t j = 0; j < dA_; ++j)
            for (std::size_t s = 0; s < dB_; ++s)
              for (std::size_t t = 0; t < dB_; ++t)
                sum(i * dB_ + s, j * dB_ + t) += a(i, j) * b(s, t);
      }
      *recon = (sum - u_).cwiseAbs().maxCoeff();
    }
    return true;
  }

  static double top(const Eigen::MatrixXcd& h) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);
    return es.eigenvalues().maxCoeff();
  }

  // Degree-one homogeneous log-sum-exp s = c T log sum exp(l / (c T)) with
  // c the mean eigenvalue. If w is given it receives ds/dH.
  static double soft_top(const Eigen::MatrixXcd& h, double temperature, Eigen::MatrixXcd* w) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(
        h, w ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
    const Eigen::VectorXd& l = es.eigenvalues();
    const double m = l.maxCoeff();
    const double scale = std::max(l.mean(), 1e-300) * temperature;
    Eigen::VectorXd e(l.size());
    for (Eigen::Index i = 0; i < l.size(); ++i) e(i) = std::exp((l(i) - m) / scale);
    const double sum = e.sum();
    const double s = m + scale * std::log(sum);
    if (w) {
      const Eigen::VectorXd wt = e / sum;
      // d/dl_i through the mean: (s - <w, l>) / (c d).
      const double through_mean = (s - wt.dot(l)) / (scale / temperature) /
                                  static_cast<double>(l.size());
      const Eigen::VectorXd g = wt.array() + through_mean;
      *w = es.eigenvectors() * g.cast<Complex>().asDiagonal() * es.eigenvectors().adjoint();
    }
    return s;
  }

  std::size_t dA_, dB_, terms_;
  ComplexMatrix u_;
  Eigen::MatrixXcd r_;
};

namespace detail {

struct Stage {
  const HaagerupSearch* search;
  double temperature;
};

inline double stage_f(const gsl_vector* v, void* params) {
  const auto* st = static_cast<const Stage*>(params);
  return st->search->smoothed(v->data, st->temperature);
}

inline void stage_df(const gsl_vector* v, void* params, gsl_vector* g) {
  const auto* st = static_cast<const Stage*>(params);
  st->search->smoothed_grad(v->data, st->temperature, g->data);
}

inline void stage_fdf(const gsl_vector* v, void* params, double* f, gsl_vector* g) {
  const auto* st = static_cast<const Stage*>(params);
  *f = st->search->smoothed_grad(v->data, st->temperature, g->data);
}

}  // namespace detail

inline BruteForceHaagerup brute_force_haagerup(const ComplexMatrix& u, std::size_t dA,
                                               std::size_t dB, std::size_t terms = 8,
                                               int restarts = 6, std::uint64_t seed = 1) {
  gsl_set_error_handler_off();
  const HaagerupSearch search(u, dA, dB, terms);
  const std::size_t n = search.dimension();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  BruteForceHaagerup best;
  gsl_vector* x = gsl_vector_alloc(n);
  gsl_multimin_fdfminimizer* m =
      gsl_multimin_fdfminimizer_alloc(gsl_multimin_fdfminimizer_vector_bfgs2, n);
  for (int r = 0; r < restarts; ++r) {
    for (std::size_t i = 0; i < n; ++i) gsl_vector_set(x, i, normal(rng));
    for (double temperature : {1e-1, 1e-2, 1e-3, 1e-4, 1e-5}) {
      detail::Stage stage{&search, temperature};
      gsl_multimin_function_fdf fn{&detail::stage_f, &detail::stage_df, &detail::stage_fdf, n,
                                   &stage};
      gsl_multimin_fdfminimizer_set(m, &fn, x, 0.01, 0.1);
      for (int it = 0; it < 400; ++it) {
        if (gsl_multimin_fdfminimizer_iterate(m) != GSL_SUCCESS) break;
        if (gsl_multimin_test_gradient(m->gradient, 1e-9) == GSL_SUCCESS) break;
      }
      gsl_vector_memcpy(x, m->x);
    }
    double recon = 0.0;
    const double v = search.exact(x->data, &recon);
    if (v < best.norm) {
      best.norm = v;
      best.reconstruction_error = recon;
    }
  }
  gsl_multimin_fdfminimizer_free(m);
  gsl_vector_free(x);
  return best;
}

}  // namespace qgames::oracle

#endif  // QGAMES_TESTS_HAAGERUP_ORACLE_HPP_
