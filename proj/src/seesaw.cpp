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

// Block-coordinate ascent on |<xi| W(U, V) |phi>| with
// W = tr_AB[(U (x) V)(M (x) 1)]. Each block is solved exactly: (xi, phi) by
// the top singular pair of W, U and V by polar_maximizer.

#include <algorithm>
#include <cmath>
#include <vector>

#include "qgames/protocol.hpp"

namespace qgames {
namespace {

// Dense 4-index array with fixed extents.
class Tensor4 {
 public:
  Tensor4(std::size_t n0, std::size_t n1, std::size_t n2, std::size_t n3)
      : n1_(n1), n2_(n2), n3_(n3), data_(n0 * n1 * n2 * n3, Complex(0.0)) {}
  Complex& operator()(std::size_t i, std::size_t j, std::size_t k, std::size_t l) {
    return data_[((i * n1_ + j) * n2_ + k) * n3_ + l];
  }
  Complex operator()(std::size_t i, std::size_t j, std::size_t k,
                     std::size_t l) const {
    return data_[((i * n1_ + j) * n2_ + k) * n3_ + l];
  }

 private:
  std::size_t n1_, n2_, n3_;
  std::vector<Complex> data_;
};

struct Contraction {
  const RankOneGame& g;
  std::size_t dAp, dBp;

  // N(a0, b0, a, b) = M[(a0, b0), (a, b)].
  Complex n(std::size_t a0, std::size_t b0, std::size_t a, std::size_t b) const {
    return g.M(a0 * g.dB + b0, a * g.dB + b);
  }

  ComplexMatrix w(const ComplexMatrix& u, const ComplexMatrix& v) const {
    const std::size_t dA = g.dA, dB = g.dB;
    // X(a'', a', b0, b) = sum_{a, a0} U[(a, a''), (a0, a')] N(a0, b0, a, b)
    Tensor4 x(dAp, dAp, dB, dB);
    for (std::size_t a = 0; a < dA; ++a) {
      for (std::size_t a0 = 0; a0 < dA; ++a0) {
        for (std::size_t b0 = 0; b0 < dB; ++b0) {
          for (std::size_t b = 0; b < dB; ++b) {
            const Complex nn = n(a0, b0, a, b);
            if (nn == Complex(0.0)) continue;
            for (std::size_t app = 0; app < dAp; ++app) {
              for (std::size_t ap = 0; ap < dAp; ++ap) {
                x(app, ap, b0, b) += u(a * dAp + app, a0 * dAp + ap) * nn;
              }
            }
          }
        }
      }
    }
    ComplexMatrix out = ComplexMatrix::Zero(dAp * dBp, dAp * dBp);
    for (std::size_t app = 0; app < dAp; ++app) {
      for (std::size_t ap = 0; ap < dAp; ++ap) {
        for (std::size_t b = 0; b < dB; ++b) {
          for (std::size_t b0 = 0; b0 < dB; ++b0) {
            const Complex xx = x(app, ap, b0, b);
            if (xx == Complex(0.0)) continue;
            for (std::size_t bpp = 0; bpp < dBp; ++bpp) {
              for (std::size_t bp = 0; bp < dBp; ++bp) {
                out(app * dBp + bpp, ap * dBp + bp) +=
                    v(b * dBp + bpp, b0 * dBp + bp) * xx;
              }
            }
          }
        }
      }
    }
    return out;
  }

  // <xi| W |phi> = tr(U Y_U).
  ComplexMatrix y_u(const ComplexVector& xi, const ComplexVector& phi,
                    const ComplexMatrix& v) const {
    const std::size_t dA = g.dA, dB = g.dB;
    Tensor4 z(dAp, dAp, dB, dB);
    for (std::size_t app = 0; app < dAp; ++app) {
      for (std::size_t ap = 0; ap < dAp; ++ap) {
        for (std::size_t bpp = 0; bpp < dBp; ++bpp) {
          for (std::size_t bp = 0; bp < dBp; ++bp) {
            const Complex c = std::conj(xi(app * dBp + bpp)) * phi(ap * dBp + bp);
            if (c == Complex(0.0)) continue;
            for (std::size_t b = 0; b < dB; ++b) {
              for (std::size_t b0 = 0; b0 < dB; ++b0) {
                z(app, ap, b0, b) += c * v(b * dBp + bpp, b0 * dBp + bp);
              }
            }
          }
        }
      }
    }
    ComplexMatrix y = ComplexMatrix::Zero(dA * dAp, dA * dAp);
    for (std::size_t a0 = 0; a0 < dA; ++a0) {
      for (std::size_t a = 0; a < dA; ++a) {
        for (std::size_t b0 = 0; b0 < dB; ++b0) {
          for (std::size_t b = 0; b < dB; ++b) {
            const Complex nn = n(a0, b0, a, b);
            if (nn == Complex(0.0)) continue;
            for (std::size_t app = 0; app < dAp; ++app) {
              for (std::size_t ap = 0; ap < dAp; ++ap) {
                y(a0 * dAp + ap, a * dAp + app) += z(app, ap, b0, b) * nn;
              }
            }
          }
        }
      }
    }
    return y;
  }

  // <xi| W |phi> = tr(V Y_V).
  ComplexMatrix y_v(const ComplexVector& xi, const ComplexVector& phi,
                    const ComplexMatrix& u) const {
    const std::size_t dA = g.dA, dB = g.dB;
    Tensor4 z(dBp, dBp, dA, dA);
    for (std::size_t app = 0; app < dAp; ++app) {
      for (std::size_t ap = 0; ap < dAp; ++ap) {
        for (std::size_t bpp = 0; bpp < dBp; ++bpp) {
          for (std::size_t bp = 0; bp < dBp; ++bp) {
            const Complex c = std::conj(xi(app * dBp + bpp)) * phi(ap * dBp + bp);
            if (c == Complex(0.0)) continue;
            for (std::size_t a = 0; a < dA; ++a) {
              for (std::size_t a0 = 0; a0 < dA; ++a0) {
                z(bpp, bp, a0, a) += c * u(a * dAp + app, a0 * dAp + ap);
              }
            }
          }
        }
      }
    }
    ComplexMatrix y = ComplexMatrix::Zero(dB * dBp, dB * dBp);
    for (std::size_t a0 = 0; a0 < dA; ++a0) {
      for (std::size_t a = 0; a < dA; ++a) {
        for (std::size_t b0 = 0; b0 < dB; ++b0) {
          for (std::size_t b = 0; b < dB; ++b) {
            const Complex nn = n(a0, b0, a, b);
            if (nn == Complex(0.0)) continue;
            for (std::size_t bpp = 0; bpp < dBp; ++bpp) {
              for (std::size_t bp = 0; bp < dBp; ++bp) {
                y(b0 * dBp + bp, b * dBp + bpp) += z(bpp, bp, a0, a) * nn;
              }
            }
          }
        }
      }
    }
    return y;
  }
};

struct TopPair {
  double sigma;
  ComplexVector xi, phi;
};

TopPair top_pair(const ComplexMatrix& w) {
  const Svd d = svd(w);
  return {d.s(0), d.u.col(0), d.vdag.row(0).adjoint()};
}

}  // namespace

ComplexMatrix contracted_operator(const RankOneGame& g, const ComplexMatrix& U,
                                  const ComplexMatrix& V, std::size_t dAp,
                                  std::size_t dBp) {
  if (U.rows() != static_cast<Eigen::Index>(g.dA * dAp) ||
      V.rows() != static_cast<Eigen::Index>(g.dB * dBp)) {
    throw DimensionError("contracted_operator: unitary sides do not match");
  }
  return Contraction{g, dAp, dBp}.w(U, V);
}

SeesawResult seesaw_lower_bound(const RankOneGame& g, const SeesawConfig& cfg) {
  const std::size_t dAp = cfg.dAp == 0 ? g.dA : cfg.dAp;
  const std::size_t dBp = cfg.dBp == 0 ? g.dB : cfg.dBp;
  const int restarts = std::max(1, cfg.restarts);
  const Contraction c{g, dAp, dBp};

  SeesawResult result;
  result.value = -1.0;
  double best_sigma = -1.0;
  ComplexMatrix best_u, best_v;
  ComplexVector best_phi;

  for (int r = 0; r < restarts; ++r) {
    // Independent stream per restart so results do not depend on ordering.
    std::seed_seq seq{cfg.seed, static_cast<std::uint64_t>(r)};
    std::mt19937_64 rng(seq);
    ComplexMatrix u = r == 0 ? identity(g.dA * dAp) : haar_unitary(g.dA * dAp, rng);
    ComplexMatrix v = r == 0 ? identity(g.dB * dBp) : haar_unitary(g.dB * dBp, rng);

    TopPair top = top_pair(c.w(u, v));
    std::vector<double> trace{top.sigma * top.sigma};
    for (int it = 0; it < cfg.iters; ++it) {
      u = polar_maximizer(c.y_u(top.xi, top.phi, v)).unitary;
      // The U step leaves <xi|W|phi> real and nonnegative; refresh the
      // pair only through the next SVD.
      v = polar_maximizer(c.y_v(top.xi, top.phi, u)).unitary;
      top = top_pair(c.w(u, v));
      trace.push_back(top.sigma * top.sigma);
      const std::size_t k = trace.size();
      if (k > static_cast<std::size_t>(cfg.window)) {
        const double now = trace.back();
        const double then = trace[k - 1 - static_cast<std::size_t>(cfg.window)];
        if (now - then <= cfg.window_tol * std::max(now, 1e-300)) break;
      }
    }
    result.restart_values.push_back(trace.back());
    result.traces.push_back(std::move(trace));
    if (top.sigma > best_sigma) {
      best_sigma = top.sigma;
      result.best_restart = r;
      best_u = u;
      best_v = v;
      best_phi = top.phi;
    }
  }

  EntangledStrategy s;
  s.dAp = dAp;
  s.dBp = dBp;
  s.U = best_u;
  s.V = best_v;
  s.phi = best_phi / best_phi.norm();
  result.strategy = s;
  result.value = win_prob_entangled(purify(g), s);
  return result;
}

}  // namespace qgames
