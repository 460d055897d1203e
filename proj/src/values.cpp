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

#include "qgames/values.hpp"

#include <algorithm>
#include <cmath>

#include "qgames/io.hpp"

namespace qgames {

using sdp::Domain;
using sdp::MapTerm;
using sdp::PsdConstraint;
using sdp::SdpProblem;

namespace {

enum class Traced { kFirst, kSecond };

// scale * I - tr_k(W) >= 0 for the d^2 x d^2 block of variable z starting at
// offset. When t_var is set the identity is scaled by that 1x1 variable.
PsdConstraint partial_trace_bound(std::string name, std::size_t z,
                                  std::size_t offset, std::size_t d, Traced traced,
                                  const std::size_t* t_var) {
  PsdConstraint c;
  c.name = std::move(name);
  c.side = d;
  c.domain = Domain::kHermitian;
  c.constant = t_var ? ComplexMatrix::Zero(d, d) : identity(d);
  for (std::size_t p = 0; p < d; ++p) {
    if (t_var) c.terms.push_back({p, p, *t_var, 0, 0, 1.0});
    for (std::size_t q = p; q < d; ++q) {
      for (std::size_t k = 0; k < d; ++k) {
        const std::size_t row = traced == Traced::kSecond ? p * d + k : k * d + p;
        const std::size_t col = traced == Traced::kSecond ? q * d + k : k * d + q;
        c.terms.push_back({p, q, z, offset + row, offset + col, -1.0});
      }
    }
  }
  return c;
}

// Re <M, u> with u read from the upper-right block of z.
sdp::LinearForm pairing(const RankOneGame& g, std::size_t z) {
  const std::size_t dA = g.dA, dB = g.dB, na = dA * dA;
  sdp::LinearForm f;
  for (std::size_t a = 0; a < dA; ++a) {
    for (std::size_t b = 0; b < dB; ++b) {
      for (std::size_t ap = 0; ap < dA; ++ap) {
        for (std::size_t bp = 0; bp < dB; ++bp) {
          const Complex m = g.M(a * dB + b, ap * dB + bp);
          if (m == Complex(0.0)) continue;
          f.push_back({z, a * dA + ap, na + b * dB + bp, m});
        }
      }
    }
  }
  return f;
}

void maybe_dump(const SdpProblem& p, const ValueOptions& opts) {
  if (!opts.dump_sdp_path.empty()) write_sdp_json(p, opts.dump_sdp_path);
}

sdp::SdpSolution solve_checked(const SdpProblem& p, const ValueOptions& opts,
                               const char* what) {
  maybe_dump(p, opts);
  sdp::SdpSolution s = sdp::solve(p, opts.sdp);
  if (s.status != sdp::Status::kOptimal) {
    throw SolverError(std::string(what) + ": solver returned " +
                          sdp::to_string(s.status) +
                          (s.message.empty() ? "" : " (" + s.message + ")"),
                      s.status);
  }
  return s;
}

HaagerupWitness witness_from(const ComplexMatrix& z, std::size_t dA, std::size_t dB) {
  const std::size_t na = dA * dA, nb = dB * dB;
  HaagerupWitness w;
  w.dA = dA;
  w.dB = dB;
  w.wa = z.topLeftCorner(na, na);
  w.wb = z.bottomRightCorner(nb, nb);
  w.u = unrealign(z.topRightCorner(na, nb), dA, dB);
  return w;
}

double min_eig_or_inf(const ComplexMatrix& h) {
  return h.size() == 0 ? 0.0 : lambda_min(h);
}

bool block_ok(const ComplexMatrix& wa, const ComplexMatrix& wb,
              const ComplexMatrix& r, std::size_t dA, std::size_t dB,
              Traced on_a, Traced on_b, double tol) {
  const Eigen::Index na = static_cast<Eigen::Index>(dA * dA);
  const Eigen::Index nb = static_cast<Eigen::Index>(dB * dB);
  if (wa.rows() != na || wa.cols() != na || wb.rows() != nb || wb.cols() != nb) {
    return false;
  }
  if ((wa - wa.adjoint()).cwiseAbs().maxCoeff() > tol ||
      (wb - wb.adjoint()).cwiseAbs().maxCoeff() > tol) {
    return false;
  }
  ComplexMatrix z(na + nb, na + nb);
  z << wa, r, r.adjoint(), wb;
  if (min_eig_or_inf(z) < -tol) return false;
  const std::size_t ta[] = {on_a == Traced::kFirst ? 0u : 1u};
  const std::size_t tb[] = {on_b == Traced::kFirst ? 0u : 1u};
  const ComplexMatrix pa = partial_trace(wa, {dA, dA}, ta);
  const ComplexMatrix pb = partial_trace(wb, {dB, dB}, tb);
  if (min_eig_or_inf(identity(dA) - pa) < -tol) return false;
  if (min_eig_or_inf(identity(dB) - pb) < -tol) return false;
  return true;
}

}  // namespace

ComplexMatrix realign(const ComplexMatrix& u, std::size_t dA, std::size_t dB) {
  if (u.rows() != static_cast<Eigen::Index>(dA * dB) || u.cols() != u.rows()) {
    throw DimensionError("realign: u must have side dA*dB");
  }
  ComplexMatrix r(dA * dA, dB * dB);
  for (std::size_t a = 0; a < dA; ++a) {
    for (std::size_t ap = 0; ap < dA; ++ap) {
      for (std::size_t b = 0; b < dB; ++b) {
        for (std::size_t bp = 0; bp < dB; ++bp) {
          r(a * dA + ap, b * dB + bp) = u(a * dB + b, ap * dB + bp);
        }
      }
    }
  }
  return r;
}

ComplexMatrix unrealign(const ComplexMatrix& r, std::size_t dA, std::size_t dB) {
  if (r.rows() != static_cast<Eigen::Index>(dA * dA) ||
      r.cols() != static_cast<Eigen::Index>(dB * dB)) {
    throw DimensionError("unrealign: shape mismatch");
  }
  ComplexMatrix u(dA * dB, dA * dB);
  for (std::size_t a = 0; a < dA; ++a) {
    for (std::size_t ap = 0; ap < dA; ++ap) {
      for (std::size_t b = 0; b < dB; ++b) {
        for (std::size_t bp = 0; bp < dB; ++bp) {
          u(a * dB + b, ap * dB + bp) = r(a * dA + ap, b * dB + bp);
        }
      }
    }
  }
  return u;
}

Decomposition haagerup_decomposition(const HaagerupWitness& w) {
  const std::size_t dA = w.dA, dB = w.dB;
  const Eigen::Index na = static_cast<Eigen::Index>(dA * dA);
  const Eigen::Index nb = static_cast<Eigen::Index>(dB * dB);
  ComplexMatrix r = realign(w.u, dA, dB);
  Eigen::MatrixXcd z(na + nb, na + nb);
  z << w.wa, r, r.adjoint(), w.wb;
  z = 0.5 * (z + z.adjoint()).eval();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(z);
  Decomposition d;
  for (Eigen::Index i = 0; i < z.rows(); ++i) {
    const double lam = es.eigenvalues()(i);
    if (lam <= 0.0) continue;
    const Eigen::VectorXcd g = std::sqrt(lam) * es.eigenvectors().col(i);
    ComplexMatrix a(dA, dA), b(dB, dB);
    for (std::size_t x = 0; x < dA; ++x) {
      for (std::size_t y = 0; y < dA; ++y) a(x, y) = g(x * dA + y);
    }
    for (std::size_t x = 0; x < dB; ++x) {
      for (std::size_t y = 0; y < dB; ++y) b(x, y) = std::conj(g(na + x * dB + y));
    }
    d.a.push_back(std::move(a));
    d.b.push_back(std::move(b));
  }
  return d;
}

bool haagerup_witness_check(const HaagerupWitness& w, double tol) {
  if (w.u.rows() != static_cast<Eigen::Index>(w.dA * w.dB) ||
      w.u.cols() != w.u.rows() || !is_finite(w.u)) {
    return false;
  }
  const ComplexMatrix r = realign(w.u, w.dA, w.dB);
  if (!block_ok(w.wa, w.wb, r, w.dA, w.dB, Traced::kSecond, Traced::kFirst, tol)) {
    return false;
  }
  if (w.has_transposed &&
      !block_ok(w.wa_t, w.wb_t, r, w.dA, w.dB, Traced::kFirst, Traced::kSecond, tol)) {
    return false;
  }
  return true;
}

double maximal_value(const RankOneGame& g) {
  const double t = trace_norm(g.M);
  return t * t;
}

SdpProblem haagerup_program(const RankOneGame& g) {
  const std::size_t dA = g.dA, dB = g.dB, na = dA * dA, nb = dB * dB;
  SdpProblem p;
  p.sense = sdp::Sense::kMaximize;
  const std::size_t z = p.add_variable("Z", na + nb, Domain::kHermitian);
  p.require_psd(z);
  p.psd.push_back(partial_trace_bound("I_A - tr_2 W_A", z, 0, dA, Traced::kSecond, nullptr));
  p.psd.push_back(partial_trace_bound("I_B - tr_1 W_B", z, na, dB, Traced::kFirst, nullptr));
  p.objective = pairing(g, z);
  return p;
}

SdpProblem mu_program(const RankOneGame& g) {
  const std::size_t dA = g.dA, dB = g.dB, na = dA * dA, nb = dB * dB;
  SdpProblem p;
  p.sense = sdp::Sense::kMaximize;
  const std::size_t z1 = p.add_variable("Z_h", na + nb, Domain::kHermitian);
  const std::size_t z2 = p.add_variable("Z_ht", na + nb, Domain::kHermitian);
  p.require_psd(z1);
  p.require_psd(z2);
  p.psd.push_back(partial_trace_bound("I_A - tr_2 W_A", z1, 0, dA, Traced::kSecond, nullptr));
  p.psd.push_back(partial_trace_bound("I_B - tr_1 W_B", z1, na, dB, Traced::kFirst, nullptr));
  p.psd.push_back(partial_trace_bound("I_A - tr_1 W'_A", z2, 0, dA, Traced::kFirst, nullptr));
  p.psd.push_back(partial_trace_bound("I_B - tr_2 W'_B", z2, na, dB, Traced::kSecond, nullptr));
  const Complex minus_i(0.0, -1.0);
  for (std::size_t i = 0; i < na; ++i) {
    for (std::size_t j = 0; j < nb; ++j) {
      const std::string at = "(" + std::to_string(i) + "," + std::to_string(j) + ")";
      p.equalities.push_back({"Re R" + at, {{z1, i, na + j, 1.0}, {z2, i, na + j, -1.0}}, 0.0});
      p.equalities.push_back(
          {"Im R" + at, {{z1, i, na + j, minus_i}, {z2, i, na + j, -minus_i}}, 0.0});
    }
  }
  p.objective = pairing(g, z1);
  return p;
}

SdpProblem haagerup_norm_program(const ComplexMatrix& u, std::size_t dA,
                                 std::size_t dB) {
  const std::size_t na = dA * dA, nb = dB * dB;
  const ComplexMatrix r = realign(u, dA, dB);
  SdpProblem p;
  p.sense = sdp::Sense::kMinimize;
  const std::size_t z = p.add_variable("Z", na + nb, Domain::kHermitian);
  const std::size_t t = p.add_variable("t", 1, Domain::kRealSymmetric);
  p.require_psd(z);
  p.psd.push_back(partial_trace_bound("t I_A - tr_2 W_A", z, 0, dA, Traced::kSecond, &t));
  p.psd.push_back(partial_trace_bound("t I_B - tr_1 W_B", z, na, dB, Traced::kFirst, &t));
  const Complex minus_i(0.0, -1.0);
  for (std::size_t i = 0; i < na; ++i) {
    for (std::size_t j = 0; j < nb; ++j) {
      p.equalities.push_back({"Re R", {{z, i, na + j, 1.0}}, r(i, j).real()});
      p.equalities.push_back({"Im R", {{z, i, na + j, minus_i}}, r(i, j).imag()});
    }
  }
  p.objective = {{t, 0, 0, 1.0}};
  return p;
}

NormResult haagerup_dual_norm(const RankOneGame& g, const ValueOptions& opts) {
  g.validate();
  const auto s = solve_checked(haagerup_program(g), opts, "one-way value SDP");
  NormResult out;
  out.primal = s.primal_value;
  out.dual = s.dual_value;
  out.iterations = s.iterations;
  out.status = s.status;
  out.witness = witness_from(s.values[0], g.dA, g.dB);
  return out;
}

NormResult mu_norm(const RankOneGame& g, const ValueOptions& opts) {
  g.validate();
  const std::size_t coupling = 2 * g.dA * g.dA * g.dB * g.dB;
  if (coupling > opts.mu_max_coupling) {
    throw DimensionError("mu_norm: " + std::to_string(coupling) +
                         " coupling equalities exceed the cap of " +
                         std::to_string(opts.mu_max_coupling));
  }
  const auto s = solve_checked(mu_program(g), opts, "mu-norm SDP");
  NormResult out;
  out.primal = s.primal_value;
  out.dual = s.dual_value;
  out.iterations = s.iterations;
  out.status = s.status;
  out.witness = witness_from(s.values[0], g.dA, g.dB);
  const HaagerupWitness t = witness_from(s.values[1], g.dA, g.dB);
  out.witness.has_transposed = true;
  out.witness.wa_t = t.wa;
  out.witness.wb_t = t.wb;
  return out;
}

double haagerup_norm(const ComplexMatrix& u, std::size_t dA, std::size_t dB,
                     const ValueOptions& opts) {
  // The gap tolerance is absolute, so solve at unit scale and rescale.
  const double scale = u.norm();
  if (scale == 0.0) {
    realign(u, dA, dB);  // shape check only
    return 0.0;
  }
  return scale * solve_checked(haagerup_norm_program(u / scale, dA, dB), opts,
                               "Haagerup norm SDP")
                     .primal_value;
}

double qow_value(const RankOneGame& g, const ValueOptions& opts) {
  const double h = haagerup_dual_norm(g, opts).primal;
  return h * h;
}

ValueReport entangled_value_bounds(const RankOneGame& g, const ValueOptions& opts,
                                   const SeesawConfig& seesaw) {
  ValueReport r;
  r.dA = g.dA;
  r.dB = g.dB;
  r.tol = opts.sdp.gap_tol;
  r.V = maximal_value(g);

  const NormResult h = haagerup_dual_norm(g, opts);
  r.qow_primal = h.primal * h.primal;
  r.qow_dual = h.dual * h.dual;
  r.qow = r.qow_primal;
  r.qow_iterations = h.iterations;

  const NormResult m = mu_norm(g, opts);
  r.mu_primal = m.primal;
  r.mu_dual = m.dual;
  r.mu = m.primal;
  r.mu_iterations = m.iterations;

  const SeesawResult s = seesaw_lower_bound(g, seesaw);
  r.seesaw = s.value;
  r.seesaw_dAp = s.strategy.dAp;
  r.seesaw_dBp = s.strategy.dBp;
  r.seesaw_restarts = seesaw.restarts;
  r.seesaw_iters = seesaw.iters;
  r.seed = seesaw.seed;
  r.identity = std::norm(g.M.trace());

  r.omega_star_lower = {r.seesaw, "seesaw"};
  const double quarter = m.primal * m.primal / 4.0;
  if (quarter > r.omega_star_lower.value) r.omega_star_lower = {quarter, "mu/4"};
  if (r.identity > r.omega_star_lower.value) r.omega_star_lower = {r.identity, "identity"};

  r.omega_star_upper = {m.dual * m.dual, "mu^2"};
  if (r.qow_dual < r.omega_star_upper.value) r.omega_star_upper = {r.qow_dual, "qow"};
  if (r.V < r.omega_star_upper.value) r.omega_star_upper = {r.V, "V"};
  return r;
}

}  // namespace qgames
