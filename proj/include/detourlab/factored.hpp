#pragma once

#include <concepts>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "detourlab/linalg.hpp"
#include "detourlab/scalar.hpp"

namespace detourlab {

/// The scalar frame of the Einstein-scale operator calculus: even dimension
/// n, form degree k, the Schouten trace J (a constant in an Einstein scale),
/// and the derived order p = (n - 2k) / 2.
template <class S>
struct DetourContext {
  int n = 4;
  int k = 0;
  S J = S(0);

  DetourContext() = default;
  DetourContext(int n_, int k_, S J_) : n(n_), k(k_), J(std::move(J_)) {
    if (n < 4 || n % 2 != 0)
      throw std::invalid_argument("DetourContext: n must be even and >= 4");
    if (k < 0 || 2 * k > n)
      throw std::invalid_argument("DetourContext: k must lie in [0, n/2]");
  }

  int p() const { return (n - 2 * k) / 2; }
  bool ricci_flat() const { return J == S(0); }
};

/// lambda_i at form degree `deg`; the family is defined for any degree.
template <class S>
S lambda_value(int n, int deg, int i, const S& J) {
  return frac<S>(-2L * i * (n - 2 * deg - i + 1), n) * J;
}

/// lambda_i^k = -2 i (n - 2k - i + 1) J / n for i = 1..p. Empty when p = 0.
template <class S>
std::vector<S> lambda_scalars(const DetourContext<S>& ctx) {
  std::vector<S> out;
  out.reserve(ctx.p());
  for (int i = 1; i <= ctx.p(); ++i)
    out.push_back(lambda_value(ctx.n, ctx.k, i, ctx.J));
  return out;
}

struct DistinctWitness {
  bool distinct = true;
  bool negative = true;  // meaningful only when J > 0
  int i = -1, j = -1;    // colliding pair on failure (1-based)
};

/// Pairwise distinctness of lambda_1^k..lambda_p^k. Requires J != 0: all the
/// scalars vanish otherwise and the projector calculus does not apply.
template <class S>
std::pair<DistinctWitness, std::vector<S>> check_distinct(const DetourContext<S>& ctx) {
  if (ctx.J == S(0))
    throw std::invalid_argument("check_distinct: J = 0 makes every lambda vanish");
  const std::vector<S> values = lambda_scalars(ctx);
  DistinctWitness w;
  for (std::size_t a = 0; a < values.size() && w.distinct; ++a)
    for (std::size_t b = a + 1; b < values.size(); ++b)
      if (values[a] == values[b]) {
        w.distinct = false;
        w.i = static_cast<int>(a + 1);
        w.j = static_cast<int>(b + 1);
        break;
      }
  if (ctx.J > S(0))
    for (const S& v : values)
      if (!(v < S(0))) w.negative = false;
  return {w, values};
}

/// prod_i (E + c_i) held in factored form; the empty list is the identity.
template <class S>
struct FactoredPolynomial {
  std::vector<S> shifts;

  int degree() const { return static_cast<int>(shifts.size()); }
};

template <class Op, class S>
concept LinearOperatorOn = requires(Op op, const Vec<S>& v) {
  { op(v) } -> std::convertible_to<Vec<S>>;
};

/// Apply prod_i (E + c_i) to f, factor by factor.
template <class S, class Op>
  requires LinearOperatorOn<Op, S>
Vec<S> apply_factored(const FactoredPolynomial<S>& poly, Op&& E, Vec<S> f) {
  for (const S& c : poly.shifts) {
    Vec<S> ef = E(f);
    if (ef.size() != f.size())
      throw std::invalid_argument("apply_factored: operator changed dimension");
    f = ef + c * f;
  }
  return f;
}

/// Same product assembled as a dense matrix.
template <class S>
Mat<S> factored_matrix(const FactoredPolynomial<S>& poly, const Mat<S>& E) {
  if (E.rows() != E.cols())
    throw std::invalid_argument("factored_matrix: operator must be square");
  Mat<S> acc = Mat<S>::Identity(E.rows(), E.cols());
  for (const S& c : poly.shifts) acc = E * acc + c * acc;
  return acc;
}

/// Projectors onto the joint eigenspace summands of the solution space of
/// (E - lambda_1)...(E - lambda_p): Proj_i = y_i prod_{j != i} (E - lambda_j)
/// with y_i = prod_{j != i} 1 / (lambda_i - lambda_j).
template <class S>
struct ProjectorSet {
  std::vector<S> eigenvalues;
  std::vector<S> weights;  // the scalars y_i
};

template <class S>
ProjectorSet<S> projectors(const std::vector<S>& eigs) {
  for (std::size_t a = 0; a < eigs.size(); ++a)
    for (std::size_t b = a + 1; b < eigs.size(); ++b)
      if (eigs[a] == eigs[b])
        throw std::invalid_argument("projectors: repeated eigenvalue at (" +
                                    std::to_string(a + 1) + ", " +
                                    std::to_string(b + 1) + ")");
  ProjectorSet<S> ps;
  ps.eigenvalues = eigs;
  ps.weights.reserve(eigs.size());
  for (std::size_t i = 0; i < eigs.size(); ++i) {
    S y = S(1);
    for (std::size_t j = 0; j < eigs.size(); ++j)
      if (j != i) y = y / (eigs[i] - eigs[j]);
    ps.weights.push_back(y);
  }
  return ps;
}

template <class S, class Op>
  requires LinearOperatorOn<Op, S>
Vec<S> apply_projector(const ProjectorSet<S>& ps, std::size_t i, Op&& E, Vec<S> f) {
  if (i >= ps.eigenvalues.size())
    throw std::out_of_range("apply_projector: index");
  for (std::size_t j = 0; j < ps.eigenvalues.size(); ++j)
    if (j != i) f = Vec<S>(E(f)) - ps.eigenvalues[j] * f;
  return ps.weights[i] * f;
}

template <class S>
Mat<S> projector_matrix(const ProjectorSet<S>& ps, std::size_t i, const Mat<S>& E) {
  Mat<S> acc = Mat<S>::Identity(E.rows(), E.cols());
  for (std::size_t j = 0; j < ps.eigenvalues.size(); ++j)
    if (j != i) acc = E * acc - ps.eigenvalues[j] * acc;
  return ps.weights[i] * acc;
}

template <class S>
struct NullSplit {
  std::vector<Mat<S>> summands;  // basis of V_{lambda_i} per eigenvalue
  std::vector<double> residuals; // max |E v - lambda_i v| / |v| per summand
  RankInfo info;                 // worst rank decision along the way
};

/// Split a basis of N(prod (E - lambda_i)) into the eigenspace summands by
/// applying the canonical projectors and rank-reducing the images.
template <class S>
NullSplit<S> decompose_null(const std::vector<S>& eigs, const Mat<S>& E,
                            const Mat<S>& null_basis, const Tolerances& tol = {}) {
  const ProjectorSet<S> ps = projectors(eigs);
  // Input validation: the basis must actually solve P[E] v = 0.
  FactoredPolynomial<S> p;
  for (const S& lam : eigs) p.shifts.push_back(-lam);
  {
    Mat<S> pe = factored_matrix(p, E);
    const double resid = relative_action_residual<S>(pe, null_basis);
    if (resid > (scalar_traits<S>::is_exact ? 0.0 : tol.tau))
      throw std::invalid_argument(
          "decompose_null: basis is not in the null space of P[E], residual " +
          std::to_string(resid));
  }
  NullSplit<S> out;
  Eigen::Index total = 0;
  for (std::size_t i = 0; i < eigs.size(); ++i) {
    Mat<S> image = projector_matrix(ps, i, E) * null_basis;
    Mat<S> basis = orthonormalize<S>(image, Mat<S>(), tol);
    double resid = 0.0;
    if (basis.cols() > 0) {
      Mat<S> defect = E * basis - eigs[i] * basis;
      if constexpr (scalar_traits<S>::is_exact) {
        resid = defect.isZero(S(0)) ? 0.0 : 1.0;
      } else {
        for (Eigen::Index c = 0; c < basis.cols(); ++c)
          resid = std::max(resid, defect.col(c).norm() / basis.col(c).norm());
      }
    }
    total += basis.cols();
    out.residuals.push_back(resid);
    out.summands.push_back(std::move(basis));
  }
  auto input_rank = rank_info<S>(null_basis, tol);
  out.info = input_rank;
  if (total != input_rank.rank)
    throw std::runtime_error("decompose_null: summand dimensions sum to " +
                             std::to_string(total) + " but the space has dim " +
                             std::to_string(input_rank.rank));
  return out;
}

}  // namespace detourlab
