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

#include <algorithm>

#include "qgames/sdp.hpp"
#include "sdp_internal.hpp"

namespace qgames::sdp {
namespace internal {

std::vector<bool> cone_variables(const SdpProblem& p) {
  std::vector<bool> cone(p.variables.size(), false);
  for (const auto& c : p.psd) {
    std::size_t v = 0;
    if (c.is_plain(p.variables, &v)) cone[v] = true;
  }
  return cone;
}

ComplexMatrix unembed_variable(const RealMatrix& y, bool cone) {
  if (cone) return unembed_hermitian(y);
  const Eigen::Index n = y.rows() / 2;
  ComplexMatrix x(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    x(i, i) = y(i, i);
    for (Eigen::Index j = i + 1; j < n; ++j) {
      x(i, j) = Complex(y(i, j), y(n + i, j));
      x(j, i) = std::conj(x(i, j));
    }
  }
  return x;
}

}  // namespace internal

namespace {

struct Coord {
  std::size_t row, col;
  double weight;
};

// Re X(i,j) and Im X(i,j) as real combinations of the embedded variable.
struct EntryExpr {
  std::vector<Coord> re, im;
};

EntryExpr entry_expr(const Variable& v, bool cone, std::size_t i,
                     std::size_t j) {
  EntryExpr e;
  if (v.domain == Domain::kRealSymmetric) {
    e.re.push_back({i, j, 1.0});
    return e;
  }
  const std::size_t n = v.side;
  if (cone) {
    e.re = {{i, j, 0.5}, {n + i, n + j, 0.5}};
    e.im = {{n + i, j, 0.5}, {i, n + j, -0.5}};
    return e;
  }
  e.re.push_back({std::min(i, j), std::max(i, j), 1.0});
  if (i < j) e.im.push_back({n + i, j, 1.0});
  if (i > j) e.im.push_back({n + j, i, -1.0});
  return e;
}

// Real part and imaginary part of coeff * X(i,j).
struct Split {
  std::vector<Coord> re, im;
};

Split split(const EntryExpr& e, Complex c) {
  Split s;
  for (const Coord& k : e.re) {
    if (c.real() != 0.0) s.re.push_back({k.row, k.col, c.real() * k.weight});
    if (c.imag() != 0.0) s.im.push_back({k.row, k.col, c.imag() * k.weight});
  }
  for (const Coord& k : e.im) {
    if (c.imag() != 0.0) s.re.push_back({k.row, k.col, -c.imag() * k.weight});
    if (c.real() != 0.0) s.im.push_back({k.row, k.col, c.real() * k.weight});
  }
  return s;
}

}  // namespace

RealMatrix embed_hermitian(const ComplexMatrix& h) {
  const Eigen::Index n = h.rows();
  RealMatrix y(2 * n, 2 * n);
  y.topLeftCorner(n, n) = h.real();
  y.bottomRightCorner(n, n) = h.real();
  y.topRightCorner(n, n) = -h.imag();
  y.bottomLeftCorner(n, n) = h.imag();
  return y;
}

ComplexMatrix unembed_hermitian(const RealMatrix& y) {
  const Eigen::Index n = y.rows() / 2;
  ComplexMatrix x(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      x(i, j) = Complex(0.5 * (y(i, j) + y(n + i, n + j)),
                        0.5 * (y(n + i, j) - y(i, n + j)));
    }
  }
  return x;
}

SdpProblem embed_complex(const SdpProblem& p) {
  p.validate();
  const auto cone = internal::cone_variables(p);

  SdpProblem out;
  out.sense = p.sense;
  for (const Variable& v : p.variables) {
    const std::size_t side = v.domain == Domain::kHermitian ? 2 * v.side : v.side;
    out.add_variable(v.name, side, Domain::kRealSymmetric);
  }

  auto embed_form = [&](const LinearForm& f) {
    LinearForm g;
    for (const Term& t : f) {
      const Split s = split(
          entry_expr(p.variables[t.var], cone[t.var], t.row, t.col), t.coeff);
      for (const Coord& k : s.re) g.push_back({t.var, k.row, k.col, k.weight});
    }
    return g;
  };

  out.objective = embed_form(p.objective);
  for (const auto& e : p.equalities) {
    out.equalities.push_back({e.name, embed_form(e.lhs), e.rhs});
  }

  for (const auto& c : p.psd) {
    std::size_t v = 0;
    if (c.is_plain(p.variables, &v)) {
      out.require_psd(v);
      out.psd.back().name = c.name;
      continue;
    }
    PsdConstraint r;
    r.name = c.name;
    r.domain = Domain::kRealSymmetric;
    const ComplexMatrix constant =
        c.constant.size() != 0 ? c.constant : ComplexMatrix::Zero(c.side, c.side);
    const std::size_t s = c.side;
    if (c.domain == Domain::kHermitian) {
      r.side = 2 * s;
      r.constant = embed_hermitian(constant).cast<Complex>();
    } else {
      r.side = s;
      r.constant = constant.real().cast<Complex>();
    }
    for (const MapTerm& t : c.terms) {
      const Split sp = split(
          entry_expr(p.variables[t.var], cone[t.var], t.row, t.col), t.coeff);
      const std::size_t pr = t.out_row, qc = t.out_col;
      for (const Coord& k : sp.re) {
        r.terms.push_back({pr, qc, t.var, k.row, k.col, k.weight});
        if (c.domain == Domain::kHermitian) {
          r.terms.push_back({s + pr, s + qc, t.var, k.row, k.col, k.weight});
        }
      }
      if (c.domain == Domain::kHermitian && pr < qc) {
        for (const Coord& k : sp.im) {
          r.terms.push_back({pr, s + qc, t.var, k.row, k.col, -k.weight});
          r.terms.push_back({qc, s + pr, t.var, k.row, k.col, k.weight});
        }
      }
    }
    out.psd.push_back(std::move(r));
  }
  return out;
}

}  // namespace qgames::sdp
