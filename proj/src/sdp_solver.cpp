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

// Primal-dual path-following method (HKM direction, Mehrotra
// predictor-corrector) for
//
//   max <C, X> + c^T x   s.t.  A(X) + B x = b,  X >= 0 (block diagonal),
//   min b^T y            s.t.  A^*(y) - C = S >= 0,  B^T y = c.

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <tuple>

#include "qgames/sdp.hpp"
#include "sdp_internal.hpp"

namespace qgames::sdp {
namespace {

// Coefficient v on the coordinate X_block(row, col), row <= col.
struct Entry {
  std::size_t block, row, col;
  double value;
};

// Same functional expanded to a symmetric matrix: A(p, q) = a.
struct Dense {
  std::size_t p, q;
  double a;
};

struct Row {
  std::vector<Entry> cone;
  std::vector<std::pair<std::size_t, double>> free;
  double rhs = 0.0;
};

struct Canonical {
  std::vector<std::size_t> blocks;
  std::size_t n_free = 0;
  std::vector<Row> rows;
  Row objective;
  double sign = 1.0;
  // Location of every variable of the real problem.
  std::vector<std::ptrdiff_t> var_block;  // -1 when free
  std::map<std::tuple<std::size_t, std::size_t, std::size_t>, std::size_t>
      free_index;
  bool trivially_infeasible = false;
};

void merge(Row& r) {
  std::sort(r.cone.begin(), r.cone.end(), [](const Entry& a, const Entry& b) {
    return std::tie(a.block, a.row, a.col) < std::tie(b.block, b.row, b.col);
  });
  std::vector<Entry> cone;
  for (const Entry& e : r.cone) {
    if (!cone.empty() && cone.back().block == e.block &&
        cone.back().row == e.row && cone.back().col == e.col) {
      cone.back().value += e.value;
    } else {
      cone.push_back(e);
    }
  }
  std::erase_if(cone, [](const Entry& e) { return e.value == 0.0; });
  r.cone = std::move(cone);
  std::sort(r.free.begin(), r.free.end());
  std::vector<std::pair<std::size_t, double>> fr;
  for (const auto& f : r.free) {
    if (!fr.empty() && fr.back().first == f.first) {
      fr.back().second += f.second;
    } else {
      fr.push_back(f);
    }
  }
  std::erase_if(fr, [](const auto& f) { return f.second == 0.0; });
  r.free = std::move(fr);
}

Canonical canonicalize(const SdpProblem& q) {
  Canonical k;
  k.sign = q.sense == Sense::kMaximize ? 1.0 : -1.0;
  k.var_block.assign(q.variables.size(), -1);

  std::vector<const PsdConstraint*> slack;
  for (const auto& c : q.psd) {
    std::size_t v = 0;
    if (c.is_plain(q.variables, &v)) {
      if (k.var_block[v] < 0) {
        k.var_block[v] = static_cast<std::ptrdiff_t>(k.blocks.size());
        k.blocks.push_back(q.variables[v].side);
      }
    } else {
      slack.push_back(&c);
    }
  }

  auto add = [&](Row& row, std::size_t var, std::size_t i, std::size_t j,
                 double coeff) {
    const std::size_t r = std::min(i, j), c = std::max(i, j);
    if (k.var_block[var] >= 0) {
      row.cone.push_back({static_cast<std::size_t>(k.var_block[var]), r, c, coeff});
    } else {
      auto [it, inserted] = k.free_index.try_emplace({var, r, c}, k.n_free);
      if (inserted) ++k.n_free;
      row.free.push_back({it->second, coeff});
    }
  };

  for (const Term& t : q.objective) {
    add(k.objective, t.var, t.row, t.col, k.sign * t.coeff.real());
  }
  merge(k.objective);

  for (const auto& e : q.equalities) {
    Row row;
    for (const Term& t : e.lhs) add(row, t.var, t.row, t.col, t.coeff.real());
    row.rhs = e.rhs;
    k.rows.push_back(std::move(row));
  }

  for (const PsdConstraint* c : slack) {
    const std::size_t block = k.blocks.size();
    k.blocks.push_back(c->side);
    std::map<std::pair<std::size_t, std::size_t>, Row> rows;
    for (std::size_t p = 0; p < c->side; ++p) {
      for (std::size_t r = p; r < c->side; ++r) {
        Row row;
        row.cone.push_back({block, p, r, 1.0});
        row.rhs = c->constant.size() != 0 ? c->constant(p, r).real() : 0.0;
        rows.emplace(std::make_pair(p, r), std::move(row));
      }
    }
    for (const MapTerm& t : c->terms) {
      add(rows.at({t.out_row, t.out_col}), t.var, t.row, t.col, -t.coeff.real());
    }
    for (auto& [pos, row] : rows) k.rows.push_back(std::move(row));
  }

  std::vector<Row> kept;
  for (Row& r : k.rows) {
    merge(r);
    if (r.cone.empty() && r.free.empty()) {
      if (std::abs(r.rhs) > 0.0) k.trivially_infeasible = true;
      continue;
    }
    kept.push_back(std::move(r));
  }
  k.rows = std::move(kept);
  return k;
}

using Blocks = std::vector<RealMatrix>;

double inner(const Blocks& a, const Blocks& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i].cwiseProduct(b[i]).sum();
  return s;
}


double max_abs(const Blocks& a) {
  double m = 0.0;
  for (const auto& x : a) {
    if (x.size() != 0) m = std::max(m, x.cwiseAbs().maxCoeff());
  }
  return m;
}

// Largest alpha with X + alpha dX >= 0 (infinity if unbounded).
double max_step(const RealMatrix& x, const RealMatrix& dx) {
  Eigen::LLT<RealMatrix> llt(x);
  if (llt.info() != Eigen::Success) return 0.0;
  RealMatrix a = llt.matrixL().solve(dx);
  RealMatrix w = llt.matrixL().solve(a.transpose());
  w = 0.5 * (w + w.transpose());
  Eigen::SelfAdjointEigenSolver<RealMatrix> es(w, Eigen::EigenvaluesOnly);
  const double lmin = es.eigenvalues().minCoeff();
  if (lmin >= 0.0) return std::numeric_limits<double>::infinity();
  return -1.0 / lmin;
}

class InteriorPoint {
 public:
  InteriorPoint(const Canonical& k, const SdpOptions& opts)
      : k_(k), opts_(opts), m_(k.rows.size()), nb_(k.blocks.size()) {
    dense_.assign(nb_, std::vector<std::vector<Dense>>(m_));
    b_.resize(m_);
    bfree_ = RealMatrix::Zero(m_, k.n_free);
    for (std::size_t i = 0; i < m_; ++i) {
      const Row& r = k.rows[i];
      b_(i) = r.rhs;
      for (const Entry& e : r.cone) expand(dense_[e.block][i], e);
      for (const auto& [j, v] : r.free) bfree_(i, j) = v;
    }
    cmat_.resize(nb_);
    for (std::size_t b = 0; b < nb_; ++b) {
      cmat_[b] = RealMatrix::Zero(k.blocks[b], k.blocks[b]);
    }
    for (const Entry& e : k.objective.cone) add_entry(cmat_[e.block], e, 1.0);
    cfree_ = RealVector::Zero(k.n_free);
    for (const auto& [j, v] : k.objective.free) cfree_(j) = v;
    factor_gram();
  }

  SdpSolution run();

  Blocks x_, s_;
  RealVector xf_, y_;

 private:
  static void expand(std::vector<Dense>& out, const Entry& e) {
    if (e.row == e.col) {
      out.push_back({e.row, e.col, e.value});
    } else {
      out.push_back({e.row, e.col, 0.5 * e.value});
      out.push_back({e.col, e.row, 0.5 * e.value});
    }
  }

  static void add_entry(RealMatrix& m, const Entry& e, double scale) {
    if (e.row == e.col) {
      m(e.row, e.col) += scale * e.value;
    } else {
      m(e.row, e.col) += 0.5 * scale * e.value;
      m(e.col, e.row) += 0.5 * scale * e.value;
    }
  }

  RealVector apply_a(const Blocks& g) const {
    RealVector out = RealVector::Zero(m_);
    for (std::size_t b = 0; b < nb_; ++b) {
      for (std::size_t i = 0; i < m_; ++i) {
        double acc = 0.0;
        for (const Dense& d : dense_[b][i]) acc += d.a * g[b](d.p, d.q);
        out(i) += acc;
      }
    }
    return out;
  }

  Blocks apply_at(const RealVector& y) const {
    Blocks out(nb_);
    for (std::size_t b = 0; b < nb_; ++b) {
      out[b] = RealMatrix::Zero(k_.blocks[b], k_.blocks[b]);
      for (std::size_t i = 0; i < m_; ++i) {
        if (y(i) == 0.0) continue;
        for (const Dense& d : dense_[b][i]) out[b](d.p, d.q) += y(i) * d.a;
      }
    }
    return out;
  }

  RealMatrix schur_complement(const Blocks& sinv) const;
  void initial_point();
  void factor_gram();

  // Minimum-norm change to (dx, dxf) making A(dx) + B dxf = target. Forming dx
  // from S^{-1} dS X loses accuracy once S is nearly singular, and the error
  // shows up as primal infeasibility that no later step removes.
  void restore_primal(const RealVector& target, Blocks& dx, RealVector& dxf) const {
    if (!gram_ok_) return;
    const RealVector e = target - apply_a(dx) - bfree_ * dxf;
    const RealVector c = gram_.solve(e);
    const Blocks corr = apply_at(c);
    for (std::size_t b = 0; b < nb_; ++b) dx[b] += corr[b];
    if (k_.n_free > 0) dxf += bfree_.transpose() * c;
  }

  const Canonical& k_;
  SdpOptions opts_;
  std::size_t m_, nb_;
  std::vector<std::vector<std::vector<Dense>>> dense_;  // [block][row]
  RealVector b_;
  RealMatrix bfree_;
  Blocks cmat_;
  RealVector cfree_;
  Eigen::LDLT<RealMatrix> gram_;  // A A^T + B B^T
  bool gram_ok_ = false;
};

void InteriorPoint::factor_gram() {
  RealMatrix g = bfree_ * bfree_.transpose();
  for (std::size_t b = 0; b < nb_; ++b) {
    std::map<std::pair<std::size_t, std::size_t>, std::vector<std::pair<std::size_t, double>>> at;
    for (std::size_t i = 0; i < m_; ++i) {
      for (const Dense& d : dense_[b][i]) at[{d.p, d.q}].push_back({i, d.a});
    }
    for (const auto& [pos, list] : at) {
      for (const auto& [i, ai] : list) {
        for (const auto& [j, aj] : list) g(i, j) += ai * aj;
      }
    }
  }
  gram_.compute(g);
  gram_ok_ = gram_.info() == Eigen::Success && gram_.isPositive() &&
             gram_.vectorD().minCoeff() > 1e-12 * std::max(1.0, gram_.vectorD().maxCoeff());
}

RealMatrix InteriorPoint::schur_complement(const Blocks& sinv) const {
  RealMatrix m = RealMatrix::Zero(m_, m_);
  for (std::size_t b = 0; b < nb_; ++b) {
    const auto& rows = dense_[b];
    const RealMatrix& si = sinv[b];
    const RealMatrix& xb = x_[b];
    const double n = static_cast<double>(k_.blocks[b]);
    std::vector<std::size_t> active;
    double total_nnz = 0.0;
    for (std::size_t i = 0; i < m_; ++i) {
      if (!rows[i].empty()) {
        active.push_back(i);
        total_nnz += static_cast<double>(rows[i].size());
      }
    }
    // Rows with many entries go through a dense S^{-1} A_j X product.
    std::vector<bool> heavy(m_, false);
    std::vector<RealMatrix> g(m_);
    for (std::size_t j : active) {
      if (static_cast<double>(rows[j].size()) * total_nnz > 2.0 * n * n * n) {
        heavy[j] = true;
        RealMatrix aj = RealMatrix::Zero(k_.blocks[b], k_.blocks[b]);
        for (const Dense& d : rows[j]) aj(d.p, d.q) += d.a;
        g[j] = si * (aj * xb);
      }
    }
    for (std::size_t jj = 0; jj < active.size(); ++jj) {
      const std::size_t j = active[jj];
      for (std::size_t ii = 0; ii <= jj; ++ii) {
        const std::size_t i = active[ii];
        double acc = 0.0;
        if (heavy[j]) {
          for (const Dense& d : rows[i]) acc += d.a * g[j](d.p, d.q);
        } else if (heavy[i]) {
          for (const Dense& d : rows[j]) acc += d.a * g[i](d.p, d.q);
        } else {
          for (const Dense& di : rows[i]) {
            for (const Dense& dj : rows[j]) {
              acc += di.a * dj.a * si(di.p, dj.p) * xb(dj.q, di.q);
            }
          }
        }
        m(i, j) += acc;
        if (i != j) m(j, i) += acc;
      }
    }
  }
  return m;
}

void InteriorPoint::initial_point() {
  x_.resize(nb_);
  s_.resize(nb_);
  for (std::size_t b = 0; b < nb_; ++b) {
    const double n = static_cast<double>(k_.blocks[b]);
    double xi = std::max(10.0, std::sqrt(n));
    double eta = std::max(10.0, std::sqrt(n));
    for (std::size_t i = 0; i < m_; ++i) {
      if (dense_[b][i].empty()) continue;
      double fro = 0.0;
      for (const Dense& d : dense_[b][i]) fro += d.a * d.a;
      fro = std::sqrt(fro);
      xi = std::max(xi, n * (1.0 + std::abs(b_(i))) / (1.0 + fro));
      eta = std::max(eta, fro);
    }
    eta = std::max(eta, cmat_[b].norm());
    x_[b] = xi * RealMatrix::Identity(k_.blocks[b], k_.blocks[b]);
    s_[b] = eta * RealMatrix::Identity(k_.blocks[b], k_.blocks[b]);
  }
  xf_ = RealVector::Zero(k_.n_free);
  y_ = RealVector::Zero(m_);
}

SdpSolution InteriorPoint::run() {
  SdpSolution sol;
  initial_point();
  double total_dim = 0.0;
  for (std::size_t n : k_.blocks) total_dim += static_cast<double>(n);
  const double bnorm = b_.norm();
  const double cnorm = std::sqrt(inner(cmat_, cmat_) + cfree_.squaredNorm());
  int stalled = 0;

  for (int iter = 0;; ++iter) {
    const RealVector ax = apply_a(x_);
    const RealVector rp = b_ - ax - bfree_ * xf_;
    Blocks aty = apply_at(y_);
    Blocks rd(nb_);
    for (std::size_t b = 0; b < nb_; ++b) rd[b] = cmat_[b] - aty[b] + s_[b];
    const RealVector rf = cfree_ - bfree_.transpose() * y_;

    const double pobj = inner(cmat_, x_) + cfree_.dot(xf_);
    const double dobj = b_.dot(y_);
    const double pinf = rp.norm() / (1.0 + bnorm);
    const double dinf = std::sqrt(inner(rd, rd) + rf.squaredNorm()) / (1.0 + cnorm);
    const double xs = inner(x_, s_);
    const double mu = total_dim > 0 ? xs / total_dim : 0.0;
    sol.history.push_back({iter, k_.sign * pobj, k_.sign * dobj, pinf, dinf, xs});
    sol.iterations = iter;
    sol.primal_value = k_.sign * pobj;
    sol.dual_value = k_.sign * dobj;
    sol.gap = std::abs(pobj - dobj);
    sol.primal_infeasibility = pinf;
    sol.dual_infeasibility = dinf;

    if (sol.gap <= opts_.gap_tol && pinf <= opts_.feas_tol &&
        dinf <= opts_.feas_tol) {
      sol.status = Status::kOptimal;
      return sol;
    }
    const double huge = 1e12;
    if (max_abs(x_) > huge || (xf_.size() && xf_.cwiseAbs().maxCoeff() > huge)) {
      sol.status = Status::kUnbounded;
      sol.message = "primal iterates diverged";
      return sol;
    }
    if ((y_.size() && y_.cwiseAbs().maxCoeff() > huge) || max_abs(s_) > huge) {
      sol.status = Status::kInfeasible;
      sol.message = "dual iterates diverged";
      return sol;
    }
    if (iter >= opts_.max_iters) {
      sol.status = Status::kMaxIterations;
      sol.message = "iteration limit reached";
      return sol;
    }

    Blocks sinv(nb_);
    for (std::size_t b = 0; b < nb_; ++b) {
      Eigen::LLT<RealMatrix> llt(s_[b]);
      if (llt.info() != Eigen::Success) {
        sol.status = Status::kMaxIterations;
        sol.message = "dual slack lost definiteness";
        return sol;
      }
      sinv[b] = llt.solve(RealMatrix::Identity(k_.blocks[b], k_.blocks[b]));
      sinv[b] = 0.5 * (sinv[b] + sinv[b].transpose());
    }

    RealMatrix mmat = schur_complement(sinv);
    Eigen::LLT<RealMatrix> chol(mmat);
    Eigen::PartialPivLU<RealMatrix> lu;
    bool use_lu = chol.info() != Eigen::Success;
    if (use_lu) lu.compute(mmat);
    auto msolve = [&](const RealMatrix& rhs) -> RealMatrix {
      return use_lu ? RealMatrix(lu.solve(rhs)) : RealMatrix(chol.solve(rhs));
    };
    RealMatrix minv_b;
    Eigen::LDLT<RealMatrix> free_sys;
    if (k_.n_free > 0) {
      minv_b = msolve(bfree_);
      free_sys.compute(bfree_.transpose() * minv_b);
    }

    // M dy - B dxf = h, B^T dy = g.
    auto reduced = [&](const RealVector& h, const RealVector& g, RealVector& dy,
                       RealVector& dxf) {
      if (k_.n_free > 0) {
        const RealVector minv_h = msolve(h);
        dxf = free_sys.solve(g - bfree_.transpose() * minv_h);
        dy = minv_h + minv_b * dxf;
      } else {
        dxf = RealVector::Zero(0);
        dy = msolve(h);
      }
    };

    // Solves for (dy, dx_free, dS, dX) given the complementarity target T.
    auto direction = [&](const Blocks& t, RealVector& dy, RealVector& dxf,
                         Blocks& ds, Blocks& dx) {
      Blocks g(nb_);
      for (std::size_t b = 0; b < nb_; ++b) g[b] = t[b] + sinv[b] * rd[b] * x_[b];
      const RealVector h = apply_a(g) - rp;
      reduced(h, rf, dy, dxf);
      // The residual of the reduced system becomes the next primal residual,
      // and M is badly conditioned near the optimum: refine.
      const double scale = 1.0 + h.norm() + rf.norm();
      for (int pass = 0; pass < 3; ++pass) {
        const RealVector e1 = h - mmat * dy + bfree_ * dxf;
        const RealVector e2 = rf - bfree_.transpose() * dy;
        if (std::sqrt(e1.squaredNorm() + e2.squaredNorm()) <= 1e-14 * scale) break;
        RealVector cy, cf;
        reduced(e1, e2, cy, cf);
        dy += cy;
        dxf += cf;
      }
      Blocks atdy = apply_at(dy);
      ds.resize(nb_);
      dx.resize(nb_);
      for (std::size_t b = 0; b < nb_; ++b) {
        ds[b] = atdy[b] - rd[b];
        RealMatrix d = t[b] - sinv[b] * ds[b] * x_[b];
        dx[b] = 0.5 * (d + d.transpose());
      }
      restore_primal(rp, dx, dxf);
    };

    auto steps = [&](const Blocks& dx, const Blocks& ds) {
      double ap = std::numeric_limits<double>::infinity(), ad = ap;
      for (std::size_t b = 0; b < nb_; ++b) {
        ap = std::min(ap, max_step(x_[b], dx[b]));
        ad = std::min(ad, max_step(s_[b], ds[b]));
      }
      return std::make_pair(std::min(1.0, opts_.step_fraction * ap),
                            std::min(1.0, opts_.step_fraction * ad));
    };

    // Predictor.
    Blocks t(nb_);
    for (std::size_t b = 0; b < nb_; ++b) t[b] = -x_[b];
    RealVector dy, dxf;
    Blocks ds, dx;
    direction(t, dy, dxf, ds, dx);
    auto [ap, ad] = steps(dx, ds);
    double mu_aff = 0.0;
    for (std::size_t b = 0; b < nb_; ++b) {
      mu_aff += (x_[b] + ap * dx[b]).cwiseProduct(s_[b] + ad * ds[b]).sum();
    }
    mu_aff /= std::max(1.0, total_dim);
    const double sigma =
        mu > 0 ? std::clamp(std::pow(std::max(mu_aff, 0.0) / mu, 3.0), 0.0, 1.0)
               : 0.0;

    // Corrector.
    for (std::size_t b = 0; b < nb_; ++b) {
      const auto n = k_.blocks[b];
      t[b] = sinv[b] * (sigma * mu * RealMatrix::Identity(n, n) - ds[b] * dx[b]) -
             x_[b];
    }
    direction(t, dy, dxf, ds, dx);
    std::tie(ap, ad) = steps(dx, ds);

    for (std::size_t b = 0; b < nb_; ++b) {
      x_[b] += ap * dx[b];
      s_[b] += ad * ds[b];
    }
    if (k_.n_free > 0) xf_ += ap * dxf;
    y_ += ad * dy;

    if (!std::isfinite(ap) || !std::isfinite(ad) ||
        !std::isfinite(y_.sum())) {
      sol.status = Status::kMaxIterations;
      sol.message = "non-finite step";
      return sol;
    }
    stalled = (ap < 1e-9 && ad < 1e-9) ? stalled + 1 : 0;
    if (stalled >= 5) {
      sol.status = Status::kMaxIterations;
      sol.message = "stalled";
      return sol;
    }
  }
}

}  // namespace

SdpSolution solve(const SdpProblem& p, const SdpOptions& opts) {
  p.validate();
  const auto cone = internal::cone_variables(p);
  const SdpProblem q = embed_complex(p);
  const Canonical k = canonicalize(q);

  SdpSolution sol;
  if (k.trivially_infeasible) {
    sol.status = Status::kInfeasible;
    sol.message = "an equality with no variables has a nonzero right-hand side";
    return sol;
  }
  InteriorPoint ipm(k, opts);
  sol = ipm.run();

  for (std::size_t v = 0; v < q.variables.size(); ++v) {
    const std::size_t side = q.variables[v].side;
    RealMatrix y;
    if (k.var_block[v] >= 0) {
      y = ipm.x_[static_cast<std::size_t>(k.var_block[v])];
    } else {
      y = RealMatrix::Zero(side, side);
      for (std::size_t i = 0; i < side; ++i) {
        for (std::size_t j = i; j < side; ++j) {
          auto it = k.free_index.find({v, i, j});
          if (it != k.free_index.end()) {
            y(i, j) = ipm.xf_(it->second);
            y(j, i) = y(i, j);
          }
        }
      }
    }
    if (p.variables[v].domain == Domain::kHermitian) {
      sol.values.push_back(internal::unembed_variable(y, cone[v]));
    } else {
      sol.values.push_back(y.cast<Complex>());
    }
  }
  return sol;
}

}  // namespace qgames::sdp
