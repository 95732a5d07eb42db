#pragma once

#include <stdexcept>
#include <utility>

#include "detourlab/chain_complex.hpp"
#include "detourlab/factored.hpp"

namespace detourlab {

/// s^k = prod_{i=1}^{p} 2i(n-2k-i+1)/n; equals 1 when p = 0. Relates the
/// Q-operator on harmonics to the power J^p.
template <class S>
S s_constant(const DetourContext<S>& ctx) {
  S s = S(1);
  for (int i = 1; i <= ctx.p(); ++i)
    s = s * frac<S>(2L * i * (ctx.n - 2 * ctx.k - i + 1), ctx.n);
  return s;
}

/// Shifts of P^m at form degree `deg`: c_i = 2i(n - 2*deg - i + 1) J / n,
/// i = 1..m (so the factors are E - lambda_i^{deg}).
template <class S>
FactoredPolynomial<S> detour_shifts(const DetourContext<S>& ctx, int deg, int m) {
  FactoredPolynomial<S> poly;
  for (int i = 1; i <= m; ++i)
    poly.shifts.push_back(frac<S>(2L * i * (ctx.n - 2 * deg - i + 1), ctx.n) * ctx.J);
  return poly;
}

/// Q_k = P^p_k[d delta] on degree k (identity when p = 0; (d delta)^p when
/// J = 0). Only its restriction to closed forms is the invariant operator.
template <class S>
Mat<S> q_matrix(const DetourContext<S>& ctx, const ChainComplex<S>& cx) {
  cx.require_degree(ctx.k);
  return factored_matrix(detour_shifts(ctx, ctx.k, ctx.p()), op_d_delta(cx, ctx.k));
}

/// G_k = delta P^p_k[d delta] : degree k -> k-1.
template <class S>
Mat<S> g_matrix(const DetourContext<S>& ctx, const ChainComplex<S>& cx) {
  cx.require_degree(ctx.k);
  return delta_at(cx, ctx.k) * q_matrix(ctx, cx);
}

/// The intertwined assembly P^p_k[delta d] delta, equal to g_matrix because
/// delta (d delta + c) = (delta d + c) delta factor by factor.
template <class S>
Mat<S> g_matrix_intertwined(const DetourContext<S>& ctx, const ChainComplex<S>& cx) {
  cx.require_degree(ctx.k);
  Mat<S> pol = factored_matrix(detour_shifts(ctx, ctx.k, ctx.p()),
                               op_delta_d(cx, ctx.k - 1));
  return pol * delta_at(cx, ctx.k);
}

/// L_k = delta P^{p-1}_{k+1}[d delta] d : degree k -> k (zero at k = n/2).
template <class S>
Mat<S> l_matrix(const DetourContext<S>& ctx, const ChainComplex<S>& cx) {
  cx.require_degree(ctx.k);
  if (ctx.p() == 0) return Mat<S>::Zero(cx.dim_at(ctx.k), cx.dim_at(ctx.k));
  cx.require_degree(ctx.k + 1);
  Mat<S> mid = factored_matrix(detour_shifts(ctx, ctx.k + 1, ctx.p() - 1),
                               op_d_delta(cx, ctx.k + 1));
  return delta_at(cx, ctx.k + 1) * mid * cx.d_at(ctx.k);
}

/// The alternative assembly L_k = delta d P^{p-1}_{k+1}[delta d] on degree k.
template <class S>
Mat<S> l_matrix_alt(const DetourContext<S>& ctx, const ChainComplex<S>& cx) {
  cx.require_degree(ctx.k);
  if (ctx.p() == 0) return Mat<S>::Zero(cx.dim_at(ctx.k), cx.dim_at(ctx.k));
  Mat<S> pol = factored_matrix(detour_shifts(ctx, ctx.k + 1, ctx.p() - 1),
                               op_delta_d(cx, ctx.k));
  return op_delta_d(cx, ctx.k) * pol;
}

/// Slot matrices of the two-slot operator at critical weight:
/// Z = (2p/k) delta d P^{p-1}_{k+1}[delta d] (degree k -> k) and
/// X = G_k (degree k -> k-1). Requires k >= 1; the k = 0 member is L_0.
template <class S>
std::pair<Mat<S>, Mat<S>> ll_matrices(const DetourContext<S>& ctx,
                                      const ChainComplex<S>& cx) {
  if (ctx.k < 1)
    throw std::invalid_argument("ll_matrices: k must be >= 1 (use L_0 at k = 0)");
  Mat<S> z = frac<S>(2L * ctx.p(), ctx.k) * l_matrix_alt(ctx, cx);
  return {std::move(z), g_matrix(ctx, cx)};
}

namespace internal {

template <class S>
double closedness_residual(const ChainComplex<S>& cx, int k, const Vec<S>& w) {
  Vec<S> dw = cx.d_at(k) * w;
  if constexpr (scalar_traits<S>::is_exact) {
    return dw.isZero(S(0)) ? 0.0 : 1.0;
  } else {
    const double wn = w.norm();
    if (wn == 0.0) return 0.0;
    return dw.norm() / (std::max(1.0, cx.d_at(k).norm()) * wn);
  }
}

}  // namespace internal

/// Q_k applied to a closed k-form (rejected with the residual otherwise).
template <class S>
Vec<S> apply_Q(const DetourContext<S>& ctx, const ChainComplex<S>& cx,
               const Vec<S>& w, const Tolerances& tol = {}) {
  cx.require_degree(ctx.k);
  if (w.size() != cx.dim_at(ctx.k))
    throw std::invalid_argument("apply_Q: dimension mismatch");
  const double resid = internal::closedness_residual(cx, ctx.k, w);
  if (resid > (scalar_traits<S>::is_exact ? 0.0 : tol.tau))
    throw std::invalid_argument("apply_Q: input is not closed, residual " +
                                std::to_string(resid));
  Mat<S> dd = op_d_delta(cx, ctx.k);
  return apply_factored(detour_shifts(ctx, ctx.k, ctx.p()),
                        [&dd](const Vec<S>& v) { return Vec<S>(dd * v); }, w);
}

template <class S>
Vec<S> apply_L(const DetourContext<S>& ctx, const ChainComplex<S>& cx, const Vec<S>& f) {
  return l_matrix(ctx, cx) * f;
}

template <class S>
Vec<S> apply_G(const DetourContext<S>& ctx, const ChainComplex<S>& cx, const Vec<S>& f) {
  return g_matrix(ctx, cx) * f;
}

template <class S>
std::pair<Vec<S>, Vec<S>> apply_LL(const DetourContext<S>& ctx,
                                   const ChainComplex<S>& cx, const Vec<S>& f) {
  auto [z, x] = ll_matrices(ctx, cx);
  return {Vec<S>(z * f), Vec<S>(x * f)};
}

/// G-orthonormal basis of the harmonic space N(d) ∩ N(delta) at degree k.
template <class S>
Mat<S> harmonic_basis(const ChainComplex<S>& cx, int k, const Tolerances& tol = {}) {
  cx.require_degree(k);
  Mat<S> stacked = vcat<S>(cx.d_at(k), delta_at(cx, k));
  return orthonormalize<S>(kernel_basis<S>(stacked, tol), cx.gram_at(k), tol);
}

/// G-orthonormal basis of the closed forms N(d_k).
template <class S>
Mat<S> closed_basis(const ChainComplex<S>& cx, int k, const Tolerances& tol = {}) {
  cx.require_degree(k);
  return orthonormalize<S>(kernel_basis<S>(cx.d_at(k), tol), cx.gram_at(k), tol);
}

}  // namespace detourlab
