#pragma once

#include <string>
#include <utility>
#include <vector>

#include "detourlab/detour_ops.hpp"

namespace detourlab {

enum class Verdict { pass, fail, inconclusive };

inline std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    default: return "inconclusive";
  }
}

struct SummandInfo {
  std::string kind;    // which eigenspace / kernel the summand is
  std::string lambda;  // eigenvalue as text, empty when not applicable
  int dim = 0;
  double residual = 0.0;  // defining-equation residual of the basis
};

/// Outcome of one null-space decomposition theorem checked on a complex:
/// the directly computed kernel, the predicted summands, and the rank
/// accounting that certifies the direct sum.
struct DecompositionReport {
  std::string space;
  std::vector<SummandInfo> summands;
  int total_dim = 0;       // dimension of the directly computed space
  int summand_dim = 0;     // sum of summand dimensions
  int span_dim = 0;        // rank of the concatenated summand bases
  double max_residual = 0.0;
  bool conclusive = true;
  Verdict verdict = Verdict::fail;
  std::string note;
};

namespace internal {

inline void settle(DecompositionReport& rep, double tau) {
  const bool ok = rep.summand_dim == rep.total_dim &&
                  rep.span_dim == rep.total_dim && rep.max_residual <= tau;
  rep.verdict = !ok ? Verdict::fail
                    : (rep.conclusive ? Verdict::pass : Verdict::inconclusive);
}

template <class S>
void push_summand(DecompositionReport& rep, std::vector<Mat<S>>& bases,
                  std::string kind, std::string lambda, const Mat<S>& basis,
                  double residual) {
  SummandInfo info;
  info.kind = std::move(kind);
  info.lambda = std::move(lambda);
  info.dim = static_cast<int>(basis.cols());
  info.residual = residual;
  rep.max_residual = std::max(rep.max_residual, residual);
  rep.summand_dim += info.dim;
  rep.summands.push_back(std::move(info));
  bases.push_back(basis);
}

template <class S>
void require_non_ricci_flat(const DetourContext<S>& ctx, const char* who) {
  if (ctx.ricci_flat())
    throw std::invalid_argument(std::string(who) +
                                ": J = 0; use the Ricci-flat branch");
}

}  // namespace internal

/// N(L_k) = H~_{sigma,0} (+) sum_{i=1}^{p-1} H~_{sigma,lambda_i^{k+1}} for
/// k < n/2 and J != 0: kernel of L_k against the predicted coexact
/// eigenspace summands.
template <class S>
DecompositionReport null_L_decomposition(const DetourContext<S>& ctx,
                                         const ChainComplex<S>& cx,
                                         const Tolerances& tol = {}) {
  internal::require_non_ricci_flat(ctx, "null_L_decomposition");
  if (2 * ctx.k >= ctx.n)
    throw std::invalid_argument("null_L_decomposition: requires k < n/2 (L_{n/2} = 0)");
  DecompositionReport rep;
  rep.space = "N(L_" + std::to_string(ctx.k) + ")";

  const Mat<S> L = l_matrix(ctx, cx);
  auto ker = kernel_with_info<S>(L, tol);
  rep.total_dim = static_cast<int>(ker.basis.cols());
  rep.conclusive = ker.info.conclusive;

  std::vector<Mat<S>> bases;
  {
    auto ztilde = kernel_with_info<S>(op_delta_d(cx, ctx.k), tol);
    rep.conclusive = rep.conclusive && ztilde.info.conclusive;
    internal::push_summand<S>(rep, bases, "Htilde", "0", ztilde.basis,
                              relative_action_residual<S>(L, ztilde.basis));
  }
  for (int i = 1; i <= ctx.p() - 1; ++i) {
    const S lam = lambda_value(ctx.n, ctx.k + 1, i, ctx.J);
    auto sub = eigenspace<S>(cx, ctx.k, OpTag::delta_d, lam, tol);
    internal::push_summand<S>(rep, bases, "Htilde",
                              scalar_traits<S>::to_string(lam), sub.basis,
                              relative_action_residual<S>(L, sub.basis));
  }
  auto span = span_rank<S>(bases, tol);
  rep.span_dim = static_cast<int>(span.rank);
  rep.conclusive = rep.conclusive && span.conclusive;
  internal::settle(rep, scalar_traits<S>::is_exact ? 0.0 : tol.tau);
  return rep;
}

/// Conformal harmonics H_G^k = N(d) ∩ N(G_k) against the predicted sum of
/// the harmonic space and the exact-side eigenspaces at lambda_i^k.
template <class S>
DecompositionReport harmonics_G(const DetourContext<S>& ctx, const ChainComplex<S>& cx,
                                const Tolerances& tol = {}) {
  internal::require_non_ricci_flat(ctx, "harmonics_G");
  DecompositionReport rep;
  rep.space = "H_G^" + std::to_string(ctx.k);

  const Mat<S> G = g_matrix(ctx, cx);
  const Mat<S> stacked = vcat<S>(cx.d_at(ctx.k), G);
  auto ker = kernel_with_info<S>(stacked, tol);
  rep.total_dim = static_cast<int>(ker.basis.cols());
  rep.conclusive = ker.info.conclusive;

  std::vector<Mat<S>> bases;
  {
    Mat<S> h = harmonic_basis(cx, ctx.k, tol);
    internal::push_summand<S>(rep, bases, "harmonic", "", h,
                              relative_action_residual<S>(stacked, h));
  }
  const std::vector<S> lams = lambda_scalars(ctx);
  for (int i = 1; i <= ctx.p(); ++i) {
    auto sub = eigenspace<S>(cx, ctx.k, OpTag::d_delta, lams[i - 1], tol);
    internal::push_summand<S>(rep, bases, "Hbar",
                              scalar_traits<S>::to_string(lams[i - 1]), sub.basis,
                              relative_action_residual<S>(stacked, sub.basis));
  }
  auto span = span_rank<S>(bases, tol);
  rep.span_dim = static_cast<int>(span.rank);
  rep.conclusive = rep.conclusive && span.conclusive;
  internal::settle(rep, scalar_traits<S>::is_exact ? 0.0 : tol.tau);
  return rep;
}

/// N(LL_k): both slots of the two-slot operator vanish. For k <= n/2 - 1 the
/// predicted sum is (N(delta) ∩ N(delta d)) (+) sum H~(lambda_i^{k+1})
/// (+) sum Hbar(lambda_i^k); at k = n/2 it is N(delta). Also certifies
/// N(LL_k) = N(L_k) ∩ N(G_k) and the positive-definite collapse of
/// N(delta) ∩ N(d) ⊆ N(delta) ∩ N(delta d) ⊆ N(d delta + delta d).
template <class S>
DecompositionReport null_LL_decomposition(const DetourContext<S>& ctx,
                                          const ChainComplex<S>& cx,
                                          const Tolerances& tol = {}) {
  internal::require_non_ricci_flat(ctx, "null_LL_decomposition");
  DecompositionReport rep;
  rep.space = "N(LL_" + std::to_string(ctx.k) + ")";

  Mat<S> op;
  if (ctx.k == 0) {
    op = l_matrix(ctx, cx);
  } else {
    auto [z, x] = ll_matrices(ctx, cx);
    op = vcat<S>(z, x);
  }
  auto ker = kernel_with_info<S>(op, tol);
  rep.total_dim = static_cast<int>(ker.basis.cols());
  rep.conclusive = ker.info.conclusive;

  std::vector<Mat<S>> bases;
  if (2 * ctx.k == ctx.n) {
    auto nd = kernel_with_info<S>(delta_at(cx, ctx.k), tol);
    rep.conclusive = rep.conclusive && nd.info.conclusive;
    internal::push_summand<S>(rep, bases, "N(delta)", "", nd.basis,
                              relative_action_residual<S>(op, nd.basis));
  } else {
    {
      Mat<S> both = vcat<S>(delta_at(cx, ctx.k), op_delta_d(cx, ctx.k));
      auto co = kernel_with_info<S>(both, tol);
      rep.conclusive = rep.conclusive && co.info.conclusive;
      internal::push_summand<S>(rep, bases, "N(delta) ∩ N(delta d)", "", co.basis,
                                relative_action_residual<S>(op, co.basis));
    }
    for (int i = 1; i <= ctx.p() - 1; ++i) {
      const S lam = lambda_value(ctx.n, ctx.k + 1, i, ctx.J);
      auto sub = eigenspace<S>(cx, ctx.k, OpTag::delta_d, lam, tol);
      internal::push_summand<S>(rep, bases, "Htilde",
                                scalar_traits<S>::to_string(lam), sub.basis,
                                relative_action_residual<S>(op, sub.basis));
    }
    const std::vector<S> lams = lambda_scalars(ctx);
    for (int i = 1; i <= ctx.p(); ++i) {
      auto sub = eigenspace<S>(cx, ctx.k, OpTag::d_delta, lams[i - 1], tol);
      internal::push_summand<S>(rep, bases, "Hbar",
                                scalar_traits<S>::to_string(lams[i - 1]), sub.basis,
                                relative_action_residual<S>(op, sub.basis));
    }
  }
  auto span = span_rank<S>(bases, tol);
  rep.span_dim = static_cast<int>(span.rank);
  rep.conclusive = rep.conclusive && span.conclusive;

  // N(LL_k) = N(L_k) ∩ N(G_k), plus the sandwich collapse.
  {
    const Mat<S> both = vcat<S>(l_matrix(ctx, cx), g_matrix(ctx, cx));
    auto inter = kernel_with_info<S>(both, tol);
    rep.conclusive = rep.conclusive && inter.info.conclusive;
    if (static_cast<int>(inter.basis.cols()) != rep.total_dim)
      rep.note += "N(L)∩N(G) dimension mismatch: " +
                  std::to_string(inter.basis.cols()) + "; ";
  }
  {
    auto a = kernel_with_info<S>(vcat<S>(delta_at(cx, ctx.k), cx.d_at(ctx.k)), tol);
    auto b = kernel_with_info<S>(vcat<S>(delta_at(cx, ctx.k), op_delta_d(cx, ctx.k)), tol);
    auto c = kernel_with_info<S>(op_laplacian(cx, ctx.k), tol);
    rep.conclusive = rep.conclusive && a.info.conclusive && b.info.conclusive &&
                     c.info.conclusive;
    if (a.basis.cols() != b.basis.cols() || b.basis.cols() != c.basis.cols())
      rep.note += "positive-definite sandwich not an equality chain; ";
  }
  if (!rep.note.empty()) {
    rep.verdict = Verdict::fail;
    return rep;
  }
  internal::settle(rep, scalar_traits<S>::is_exact ? 0.0 : tol.tau);
  return rep;
}

/// Detour cohomology at degree k-1: dim H^{k-1}_L = dim N(L_{k-1}) -
/// rank d_{k-2}, checked against sum_i dim H~^{k-1}(lambda_i^k) +
/// (dim H~^{k-1}(0) - rank d_{k-2}). The context carries the degree k.
template <class S>
DecompositionReport cohomology_HL(const DetourContext<S>& ctx, const ChainComplex<S>& cx,
                                  const Tolerances& tol = {}) {
  internal::require_non_ricci_flat(ctx, "cohomology_HL");
  if (ctx.k < 1)
    throw std::invalid_argument("cohomology_HL: needs 1 <= k <= n/2");
  DecompositionReport rep;
  rep.space = "H_L^" + std::to_string(ctx.k - 1);

  const DetourContext<S> down(ctx.n, ctx.k - 1, ctx.J);
  auto kerL = kernel_with_info<S>(l_matrix(down, cx), tol);
  auto rk_dm2 = rank_info<S>(cx.d_at(ctx.k - 2), tol);
  rep.conclusive = kerL.info.conclusive && rk_dm2.conclusive;
  rep.total_dim = static_cast<int>(kerL.basis.cols() - rk_dm2.rank);

  std::vector<Mat<S>> bases;  // dimension bookkeeping only
  const std::vector<S> lams = lambda_scalars(ctx);
  for (int i = 1; i <= ctx.p(); ++i) {
    auto sub = eigenspace<S>(cx, ctx.k - 1, OpTag::delta_d, lams[i - 1], tol);
    internal::push_summand<S>(rep, bases, "Htilde",
                              scalar_traits<S>::to_string(lams[i - 1]), sub.basis, 0.0);
  }
  {
    auto z = kernel_with_info<S>(op_delta_d(cx, ctx.k - 1), tol);
    rep.conclusive = rep.conclusive && z.info.conclusive;
    SummandInfo info;
    info.kind = "Htilde(0) mod R(d)";
    info.lambda = "0";
    info.dim = static_cast<int>(z.basis.cols() - rk_dm2.rank);
    rep.summand_dim += info.dim;
    rep.summands.push_back(info);
  }
  rep.span_dim = rep.summand_dim;  // quotient bookkeeping, no span to take
  internal::settle(rep, scalar_traits<S>::is_exact ? 0.0 : tol.tau);
  return rep;
}

/// N(Q_k restricted to closed forms) = sum_i Hbar(lambda_i^k), inside R(d).
template <class S>
DecompositionReport null_Q(const DetourContext<S>& ctx, const ChainComplex<S>& cx,
                           const Tolerances& tol = {}) {
  internal::require_non_ricci_flat(ctx, "null_Q");
  DecompositionReport rep;
  rep.space = "N(Q_" + std::to_string(ctx.k) + " on closed forms)";

  const Mat<S> closed = closed_basis(cx, ctx.k, tol);
  const Mat<S> q = q_matrix(ctx, cx);
  auto coeff = kernel_with_info<S>(Mat<S>(q * closed), tol);
  Mat<S> nullq = orthonormalize<S>(Mat<S>(closed * coeff.basis), cx.gram_at(ctx.k), tol);
  rep.total_dim = static_cast<int>(nullq.cols());
  rep.conclusive = coeff.info.conclusive;

  std::vector<Mat<S>> bases;
  const std::vector<S> lams = lambda_scalars(ctx);
  for (int i = 1; i <= ctx.p(); ++i) {
    auto sub = eigenspace<S>(cx, ctx.k, OpTag::d_delta, lams[i - 1], tol);
    internal::push_summand<S>(rep, bases, "Hbar",
                              scalar_traits<S>::to_string(lams[i - 1]), sub.basis,
                              relative_action_residual<S>(q, sub.basis));
  }
  auto span = span_rank<S>(bases, tol);
  rep.span_dim = static_cast<int>(span.rank);
  rep.conclusive = rep.conclusive && span.conclusive;

  // Containment in the range of d.
  Mat<S> rd = orthonormalize<S>(cx.d_at(ctx.k - 1), cx.gram_at(ctx.k), tol);
  const double contain = residual_in_span<S>(rd, nullq, cx.gram_at(ctx.k), tol);
  rep.max_residual = std::max(rep.max_residual, contain);
  internal::settle(rep, scalar_traits<S>::is_exact ? 0.0 : tol.tau);
  return rep;
}

/// B^k = {df : Q_k df ∈ R(delta)}, computed as a linear condition on
/// degree-(k-1) inputs; equals sum_i Hbar(lambda_i^k) when J != 0 and 0 when
/// J = 0.
template <class S>
DecompositionReport b_space(const DetourContext<S>& ctx, const ChainComplex<S>& cx,
                            const Tolerances& tol = {}) {
  DecompositionReport rep;
  rep.space = "B^" + std::to_string(ctx.k);
  if (ctx.k < 1)
    throw std::invalid_argument("b_space: needs k >= 1 (no exact forms below)");

  const Mat<S> q = q_matrix(ctx, cx);
  const Mat<S> qd = q * cx.d_at(ctx.k - 1);
  const Mat<S> del_up = delta_at(cx, ctx.k + 1);
  // Pairs (g, h) with Q d g = delta h; read back the df part.
  auto pairs = kernel_with_info<S>(hcat<S>(qd, Mat<S>(-del_up)), tol);
  Mat<S> g_part = pairs.basis.topRows(cx.dim_at(ctx.k - 1));
  Mat<S> b_basis = orthonormalize<S>(Mat<S>(cx.d_at(ctx.k - 1) * g_part),
                                     cx.gram_at(ctx.k), tol);
  rep.total_dim = static_cast<int>(b_basis.cols());
  rep.conclusive = pairs.info.conclusive;

  std::vector<Mat<S>> bases;
  if (!ctx.ricci_flat()) {
    const std::vector<S> lams = lambda_scalars(ctx);
    for (int i = 1; i <= ctx.p(); ++i) {
      auto sub = eigenspace<S>(cx, ctx.k, OpTag::d_delta, lams[i - 1], tol);
      internal::push_summand<S>(rep, bases, "Hbar",
                                scalar_traits<S>::to_string(lams[i - 1]), sub.basis,
                                relative_action_residual<S>(q, sub.basis));
    }
  }
  auto span = span_rank<S>(bases, tol);
  rep.span_dim = static_cast<int>(span.rank);
  rep.conclusive = rep.conclusive && span.conclusive;
  internal::settle(rep, scalar_traits<S>::is_exact ? 0.0 : tol.tau);
  return rep;
}

struct BijectionInfo {
  std::string lambda;
  int dim_source = 0;
  int dim_target = 0;
  double residual = 0.0;  // image containment residual
  bool injective = false;
};

/// Rank accounting for the two four-term sequences ending in de Rham and
/// detour cohomology, the final-map surjectivity (k-regularity), and the
/// d-bijection between the lambda-eigenspaces of neighbouring degrees.
struct SequenceReport {
  int k = 0;
  int betti_km1 = 0, dim_HL_km1 = 0, dim_HG = 0, betti_k = 0;
  int dim_NLL = 0, dim_HL_k = 0;
  int rank_d_on_NL = 0;      // rank of d restricted to N(L_{k-1})
  int dim_HG_exact = 0;      // dim(H_G^k ∩ R(d))
  int rank_HG_to_Hk = 0;     // rank of the harmonic projection of H_G^k
  int dim_NLL_exact = 0;     // dim(N(LL_k) ∩ R(d))
  int rank_NLL_to_HLk = 0;   // dim of the image of N(LL_k) in H^k_L
  bool seq1_exact = false;
  bool seq2_exact = false;
  std::vector<BijectionInfo> bijections;
  double max_residual = 0.0;
  bool conclusive = true;
  Verdict verdict = Verdict::fail;
  std::string note;
};

template <class S>
SequenceReport sequence_checks(const DetourContext<S>& ctx, const ChainComplex<S>& cx,
                               const Tolerances& tol = {}) {
  internal::require_non_ricci_flat(ctx, "sequence_checks");
  if (ctx.k < 1)
    throw std::invalid_argument("sequence_checks: needs 1 <= k <= n/2");
  SequenceReport rep;
  rep.k = ctx.k;
  const int k = ctx.k;
  const DetourContext<S> down(ctx.n, k - 1, ctx.J);
  const double tau = scalar_traits<S>::is_exact ? 0.0 : tol.tau;

  rep.betti_km1 = betti(cx, k - 1, tol);
  rep.betti_k = betti(cx, k, tol);

  auto kerL_down = kernel_with_info<S>(l_matrix(down, cx), tol);
  auto rk_dm2 = rank_info<S>(cx.d_at(k - 2), tol);
  rep.conclusive = kerL_down.info.conclusive && rk_dm2.conclusive;
  rep.dim_HL_km1 = static_cast<int>(kerL_down.basis.cols() - rk_dm2.rank);

  const Mat<S> G = g_matrix(ctx, cx);
  auto kerHG = kernel_with_info<S>(vcat<S>(cx.d_at(k), G), tol);
  rep.conclusive = rep.conclusive && kerHG.info.conclusive;
  rep.dim_HG = static_cast<int>(kerHG.basis.cols());

  Mat<S> nll;
  {
    auto [z, x] = ll_matrices(ctx, cx);
    auto kerNLL = kernel_with_info<S>(vcat<S>(z, x), tol);
    rep.conclusive = rep.conclusive && kerNLL.info.conclusive;
    nll = kerNLL.basis;
  }
  rep.dim_NLL = static_cast<int>(nll.cols());

  auto kerL_here = kernel_with_info<S>(l_matrix(ctx, cx), tol);
  auto rk_dm1 = rank_info<S>(cx.d_at(k - 1), tol);
  rep.conclusive = rep.conclusive && kerL_here.info.conclusive && rk_dm1.conclusive;
  rep.dim_HL_k = static_cast<int>(kerL_here.basis.cols() - rk_dm1.rank);

  // The connecting map d restricted to N(L_{k-1}).
  Mat<S> d_on_NL = cx.d_at(k - 1) * kerL_down.basis;
  auto rk_conn = rank_info<S>(d_on_NL, tol);
  rep.conclusive = rep.conclusive && rk_conn.conclusive;
  rep.rank_d_on_NL = static_cast<int>(rk_conn.rank);

  // Its image lands in H_G^k and in N(LL_k).
  rep.max_residual = std::max(
      rep.max_residual, relative_action_residual<S>(vcat<S>(cx.d_at(k), G), d_on_NL));
  if (k >= 1) {
    auto [z, x] = ll_matrices(ctx, cx);
    rep.max_residual = std::max(rep.max_residual,
                                relative_action_residual<S>(vcat<S>(z, x), d_on_NL));
  }

  const Mat<S> g_k = cx.gram_at(k);
  Mat<S> range_d = orthonormalize<S>(cx.d_at(k - 1), g_k, tol);

  auto hg_exact = intersect_spans<S>(kerHG.basis, range_d, g_k, tol);
  rep.conclusive = rep.conclusive && hg_exact.info.conclusive;
  rep.dim_HG_exact = static_cast<int>(hg_exact.basis.cols());

  Mat<S> harm = harmonic_basis(cx, k, tol);
  Mat<S> classes;  // harmonic coordinates of H_G representatives
  if (g_k.size() == 0)
    classes = harm.transpose() * kerHG.basis;
  else
    classes = harm.transpose() * g_k * kerHG.basis;
  auto rk_classes = rank_info<S>(classes, tol);
  rep.conclusive = rep.conclusive && rk_classes.conclusive;
  rep.rank_HG_to_Hk = static_cast<int>(rk_classes.rank);

  auto nll_exact = intersect_spans<S>(nll, range_d, g_k, tol);
  rep.conclusive = rep.conclusive && nll_exact.info.conclusive;
  rep.dim_NLL_exact = static_cast<int>(nll_exact.basis.cols());

  // Surjectivity onto H^k_L: N(LL_k) together with R(d) spans N(L_k).
  auto rk_join = rank_info<S>(hcat<S>(nll, Mat<S>(cx.d_at(k - 1))), tol);
  rep.conclusive = rep.conclusive && rk_join.conclusive;
  rep.rank_NLL_to_HLk = static_cast<int>(rk_join.rank - rk_dm1.rank);

  rep.seq1_exact = rep.dim_HL_km1 - rep.rank_d_on_NL == rep.betti_km1 &&
                   rep.dim_HG_exact == rep.rank_d_on_NL &&
                   rep.rank_HG_to_Hk == rep.betti_k &&
                   rep.betti_km1 - rep.dim_HL_km1 + rep.dim_HG - rep.betti_k == 0;
  rep.seq2_exact = rep.dim_HL_km1 - rep.rank_d_on_NL == rep.betti_km1 &&
                   rep.dim_NLL_exact == rep.rank_d_on_NL &&
                   rep.rank_NLL_to_HLk == rep.dim_HL_k &&
                   rep.betti_km1 - rep.dim_HL_km1 + rep.dim_NLL - rep.dim_HL_k == 0;

  // d is a bijection H~^{k-1}(lambda) -> Hbar^k(lambda) for lambda != 0.
  const std::vector<S> lams = lambda_scalars(ctx);
  bool bijections_ok = true;
  for (int i = 1; i <= ctx.p(); ++i) {
    auto src = eigenspace<S>(cx, k - 1, OpTag::delta_d, lams[i - 1], tol);
    auto dst = eigenspace<S>(cx, k, OpTag::d_delta, lams[i - 1], tol);
    BijectionInfo bij;
    bij.lambda = scalar_traits<S>::to_string(lams[i - 1]);
    bij.dim_source = static_cast<int>(src.dim());
    bij.dim_target = static_cast<int>(dst.dim());
    Mat<S> image = cx.d_at(k - 1) * src.basis;
    auto rk_img = rank_info<S>(image, tol);
    rep.conclusive = rep.conclusive && rk_img.conclusive;
    bij.injective = rk_img.rank == src.dim();
    bij.residual = residual_in_span<S>(
        orthonormalize<S>(dst.basis, g_k, tol), image, g_k, tol);
    rep.max_residual = std::max(rep.max_residual, bij.residual);
    bijections_ok = bijections_ok && bij.injective &&
                    bij.dim_source == bij.dim_target && bij.residual <= tau;
    rep.bijections.push_back(std::move(bij));
  }

  const bool ok =
      rep.seq1_exact && rep.seq2_exact && bijections_ok && rep.max_residual <= tau;
  rep.verdict = !ok ? Verdict::fail
                    : (rep.conclusive ? Verdict::pass : Verdict::inconclusive);
  return rep;
}

}  // namespace detourlab
