#pragma once

#include <string>
#include <vector>

#include "detourlab/decompositions.hpp"

namespace detourlab {

/// Global pairing results at degree k: the Q-pairing of N(L_k) against
/// closed forms, and the quadratic form on the conformal harmonics, checked
/// against the constant s^k J^p on the harmonic block.
template <class S>
struct PairingReport {
  int k = 0;
  Mat<S> qp_values;     // <u_a, Q w_b> over bases of N(L_k) x C^k
  Mat<S> theta_values;  // <v_a, Q v_b> over a basis of H_G^k
  double descent_residual = 0.0;        // coexact components pair to zero
  double theta_mixed_residual = 0.0;    // rows/cols meeting an Hbar summand
  double theta_harmonic_residual = 0.0; // relative gap to s^k J^p <u, w>
  double k0_residual = 0.0;             // constant-component identity at k = 0
  S predicted_constant = S(0);          // s^k J^p
  bool conclusive = true;
  Verdict verdict = Verdict::fail;
  std::string note;
};

/// Pairing battery:
///  (a) descent  - for u in N(L_k) split per the null-space decomposition,
///      the coexact eigenspace part pairs to zero against Q of closed forms,
///      so the pairing descends to closed x closed;
///  (b) the quadratic form on H_G^k vanishes whenever one argument lies in
///      an Hbar summand and equals s^k J^p <.,.> on harmonics (this covers
///      the Ricci-flat branch, where the constant is 0 for k < n/2 and the
///      plain Gram pairing at k = n/2);
///  (c) at k = 0, <f, Q 1> = c <1, Q 1> with c the harmonic component of f.
template <class S>
PairingReport<S> pairing_suite(const DetourContext<S>& ctx, const ChainComplex<S>& cx,
                               const Tolerances& tol = {}) {
  PairingReport<S> rep;
  rep.k = ctx.k;
  const double tau = scalar_traits<S>::is_exact ? 0.0 : tol.tau_rel;
  const Mat<S> g = cx.gram_at(ctx.k);
  const Mat<S> q = q_matrix(ctx, cx);
  const Mat<S> closed = closed_basis(cx, ctx.k, tol);
  S jp = S(1);
  for (int i = 0; i < ctx.p(); ++i) jp = jp * ctx.J;
  rep.predicted_constant = s_constant(ctx) * jp;

  auto pair_of = [&](const Mat<S>& a, const Mat<S>& b) -> Mat<S> {
    // <a_i, b_j> in the Gram inner product, columnwise.
    if (g.size() == 0) return a.transpose() * b;
    return a.transpose() * g * b;
  };

  // (a) Q-pairing on N(L_k) x C^k and its descent.
  if (2 * ctx.k < ctx.n && !ctx.ricci_flat()) {
    auto kerL = kernel_with_info<S>(l_matrix(ctx, cx), tol);
    rep.conclusive = rep.conclusive && kerL.info.conclusive;
    rep.qp_values = pair_of(kerL.basis, Mat<S>(q * closed));

    // Split u = u0 + u1 with the canonical projectors of E = delta d over
    // the eigenvalue list {0, lambda_1^{k+1}, ..., lambda_{p-1}^{k+1}}.
    std::vector<S> eigs = {S(0)};
    for (int i = 1; i <= ctx.p() - 1; ++i)
      eigs.push_back(lambda_value(ctx.n, ctx.k + 1, i, ctx.J));
    const ProjectorSet<S> ps = projectors(eigs);
    const Mat<S> E = op_delta_d(cx, ctx.k);
    Mat<S> u1 = Mat<S>::Zero(kerL.basis.rows(), kerL.basis.cols());
    for (std::size_t i = 1; i < eigs.size(); ++i)
      u1 += projector_matrix(ps, i, E) * kerL.basis;
    Mat<S> vals = pair_of(u1, Mat<S>(q * closed));
    if constexpr (scalar_traits<S>::is_exact) {
      rep.descent_residual = vals.isZero(S(0)) ? 0.0 : 1.0;
    } else {
      double scale = 1.0;
      for (Eigen::Index c = 0; c < closed.cols(); ++c)
        scale = std::max(scale, (q * closed.col(c)).norm());
      rep.descent_residual = vals.size() == 0 ? 0.0 : vals.cwiseAbs().maxCoeff() / scale;
    }
  } else {
    rep.qp_values = pair_of(closed, Mat<S>(q * closed));
    rep.note += "descent trivial (k = n/2 or Ricci-flat); ";
  }

  // (b) Theta on the conformal harmonics.
  const Mat<S> hg = kernel_basis<S>(vcat<S>(cx.d_at(ctx.k), g_matrix(ctx, cx)), tol);
  rep.theta_values = pair_of(hg, Mat<S>(q * hg));
  {
    const Mat<S> harm = harmonic_basis(cx, ctx.k, tol);
    Mat<S> theta_harm = pair_of(harm, Mat<S>(q * harm));
    Mat<S> gram_harm = pair_of(harm, harm);
    Mat<S> gap = theta_harm - rep.predicted_constant * gram_harm;
    if constexpr (scalar_traits<S>::is_exact) {
      rep.theta_harmonic_residual = gap.isZero(S(0)) ? 0.0 : 1.0;
    } else {
      const double scale =
          std::max(1.0, std::abs(scalar_traits<S>::to_double(rep.predicted_constant)));
      rep.theta_harmonic_residual =
          gap.size() == 0 ? 0.0 : gap.cwiseAbs().maxCoeff() / scale;
    }
    if (!ctx.ricci_flat()) {
      // Any pairing that touches an Hbar summand vanishes.
      const std::vector<S> lams = lambda_scalars(ctx);
      Mat<S> hbar_all(cx.dim_at(ctx.k), 0);
      for (int i = 1; i <= ctx.p(); ++i) {
        auto sub = eigenspace<S>(cx, ctx.k, OpTag::d_delta, lams[i - 1], tol);
        hbar_all = hcat<S>(hbar_all, sub.basis);
      }
      if (hbar_all.cols() > 0) {
        Mat<S> left = pair_of(hbar_all, Mat<S>(q * hg));
        Mat<S> right = pair_of(hg, Mat<S>(q * hbar_all));
        double worst = 0.0;
        if constexpr (scalar_traits<S>::is_exact) {
          worst = left.isZero(S(0)) && right.isZero(S(0)) ? 0.0 : 1.0;
        } else {
          const double scale = std::max(1.0, std::abs(rep.theta_values.size() == 0
                                                          ? 0.0
                                                          : rep.theta_values.cwiseAbs().maxCoeff()));
          if (left.size() > 0) worst = left.cwiseAbs().maxCoeff() / scale;
          if (right.size() > 0)
            worst = std::max(worst, right.cwiseAbs().maxCoeff() / scale);
        }
        rep.theta_mixed_residual = worst;
      }
    }
  }

  // (c) k = 0: <f, Q h> = c <h, Q h> with c the harmonic component of f.
  if (ctx.k == 0 && !ctx.ricci_flat()) {
    auto kerL = kernel_with_info<S>(l_matrix(ctx, cx), tol);
    const Mat<S> harm = harmonic_basis(cx, 0, tol);
    double worst = 0.0;
    for (Eigen::Index h = 0; h < harm.cols(); ++h) {
      const Vec<S> one = harm.col(h);
      const Vec<S> q_one = q * one;
      const S denom = gram_dot<S>(g, one, q_one);
      for (Eigen::Index j = 0; j < kerL.basis.cols(); ++j) {
        const Vec<S> f = kerL.basis.col(j);
        const S c = gram_dot<S>(g, f, one) / gram_dot<S>(g, one, one);
        const S lhs = gram_dot<S>(g, f, q_one);
        const S gap = lhs - c * denom;
        if constexpr (scalar_traits<S>::is_exact) {
          worst = std::max(worst, gap == S(0) ? 0.0 : 1.0);
        } else {
          const double scale = std::max(1.0, std::abs(scalar_traits<S>::to_double(denom)));
          worst = std::max(worst, std::abs(scalar_traits<S>::to_double(gap)) / scale);
        }
      }
    }
    rep.k0_residual = worst;
  }

  const bool ok = rep.descent_residual <= tau && rep.theta_mixed_residual <= tau &&
                  rep.theta_harmonic_residual <= tau && rep.k0_residual <= tau;
  rep.verdict = !ok ? Verdict::fail
                    : (rep.conclusive ? Verdict::pass : Verdict::inconclusive);
  return rep;
}

}  // namespace detourlab
