#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "detourlab/linalg.hpp"
#include "detourlab/scalar.hpp"

namespace detourlab {

/// Finite-dimensional cochain complex with inner products: per-degree
/// dimensions, differentials d_j : degree j -> j+1, and optional symmetric
/// positive-definite Gram matrices (identity when absent).
template <class S>
struct ChainComplex {
  int n = 0;
  std::vector<int> dims;     // n+1 entries
  std::vector<Mat<S>> d;     // n entries, d[j] has shape dims[j+1] x dims[j]
  std::vector<Mat<S>> gram;  // empty, or n+1 SPD matrices

  bool has_gram() const { return !gram.empty(); }

  int dim_at(int j) const {
    return (j < 0 || j > n) ? 0 : dims[static_cast<std::size_t>(j)];
  }

  /// d_j with zero maps supplied at the boundary degrees.
  Mat<S> d_at(int j) const {
    if (j >= 0 && j < n) return d[static_cast<std::size_t>(j)];
    return Mat<S>::Zero(dim_at(j + 1), dim_at(j));
  }

  /// Gram matrix at degree j; empty stands for the identity.
  Mat<S> gram_at(int j) const {
    if (!has_gram() || j < 0 || j > n) return Mat<S>();
    return gram[static_cast<std::size_t>(j)];
  }

  void require_degree(int k, int lo = 0) const {
    if (k < lo || k > n)
      throw std::out_of_range("ChainComplex: degree " + std::to_string(k) +
                              " outside [" + std::to_string(lo) + ", " +
                              std::to_string(n) + "]");
  }
};

namespace internal {

template <class S>
Mat<S> solve_spd(const Mat<S>& g, const Mat<S>& rhs) {
  if constexpr (scalar_traits<S>::is_exact) {
    Eigen::FullPivLU<Mat<S>> lu(g);
    lu.setThreshold(S(0));
    return lu.solve(rhs);
  } else {
    return Eigen::LLT<Mat<double>>(g).solve(rhs);
  }
}

}  // namespace internal

/// Codifferential delta_k = G_{k-1}^{-1} d_{k-1}^T G_k (the Gram adjoint of
/// the differential); transpose when the Grams are the identity.
template <class S>
Mat<S> codifferential(const ChainComplex<S>& cx, int k) {
  cx.require_degree(k, 1);
  Mat<S> dt = cx.d_at(k - 1).transpose();
  if (!cx.has_gram()) return dt;
  return internal::solve_spd<S>(cx.gram_at(k - 1), Mat<S>(dt * cx.gram_at(k)));
}

/// delta_k with zero maps at the boundary (degree 0 has no codifferential).
template <class S>
Mat<S> delta_at(const ChainComplex<S>& cx, int k) {
  if (k < 1 || k > cx.n) return Mat<S>::Zero(cx.dim_at(k - 1), cx.dim_at(k));
  return codifferential(cx, k);
}

/// delta∘d acting on degree k.
template <class S>
Mat<S> op_delta_d(const ChainComplex<S>& cx, int k) {
  return delta_at(cx, k + 1) * cx.d_at(k);
}

/// d∘delta acting on degree k.
template <class S>
Mat<S> op_d_delta(const ChainComplex<S>& cx, int k) {
  return cx.d_at(k - 1) * delta_at(cx, k);
}

/// Form Laplacian delta d + d delta on degree k.
template <class S>
Mat<S> op_laplacian(const ChainComplex<S>& cx, int k) {
  return op_delta_d(cx, k) + op_d_delta(cx, k);
}

/// Structural validation: shapes, d∘d = 0 (exact, or relative 1e-12 in
/// floating point), Gram matrices symmetric positive-definite.
template <class S>
void validate_complex(const ChainComplex<S>& cx, double dd_tol = 1e-12) {
  if (cx.n < 0 || cx.dims.size() != static_cast<std::size_t>(cx.n) + 1 ||
      cx.d.size() != static_cast<std::size_t>(cx.n))
    throw std::invalid_argument("validate_complex: inconsistent sizes");
  for (int j = 0; j < cx.n; ++j)
    if (cx.d[j].rows() != cx.dims[j + 1] || cx.d[j].cols() != cx.dims[j])
      throw std::invalid_argument("validate_complex: d_" + std::to_string(j) +
                                  " has the wrong shape");
  for (int j = 0; j + 1 < cx.n; ++j) {
    Mat<S> dd = cx.d[j + 1] * cx.d[j];
    if constexpr (scalar_traits<S>::is_exact) {
      if (!dd.isZero(S(0)))
        throw std::invalid_argument("validate_complex: d∘d != 0 at degree " +
                                    std::to_string(j));
    } else {
      const double scale = cx.d[j + 1].norm() * cx.d[j].norm();
      if (dd.norm() > dd_tol * std::max(scale, 1.0))
        throw std::invalid_argument("validate_complex: d∘d residual " +
                                    std::to_string(dd.norm()) + " at degree " +
                                    std::to_string(j));
    }
  }
  if (cx.has_gram()) {
    if (cx.gram.size() != static_cast<std::size_t>(cx.n) + 1)
      throw std::invalid_argument("validate_complex: gram count");
    for (int j = 0; j <= cx.n; ++j) {
      const Mat<S>& g = cx.gram[j];
      if (g.rows() != cx.dims[j] || g.cols() != cx.dims[j])
        throw std::invalid_argument("validate_complex: gram shape at " +
                                    std::to_string(j));
      if constexpr (scalar_traits<S>::is_exact) {
        if (!(g - Mat<S>(g.transpose())).isZero(S(0)))
          throw std::invalid_argument("validate_complex: gram not symmetric");
        // Sylvester criterion on leading principal minors.
        for (int m = 1; m <= cx.dims[j]; ++m)
          if (!(Mat<S>(g.topLeftCorner(m, m)).determinant() > S(0)))
            throw std::invalid_argument("validate_complex: gram not positive definite");
      } else {
        if ((g - Mat<double>(g.transpose())).norm() > 1e-12 * std::max(1.0, g.norm()))
          throw std::invalid_argument("validate_complex: gram not symmetric");
        Eigen::SelfAdjointEigenSolver<Mat<double>> es(g, Eigen::EigenvaluesOnly);
        if (es.eigenvalues().minCoeff() <= 0.0)
          throw std::invalid_argument("validate_complex: gram not positive definite");
      }
    }
  }
}

template <class S>
struct HodgeSplit {
  Mat<S> exact;     // basis of range(d_{k-1})
  Mat<S> coexact;   // basis of range(delta_{k+1})
  Mat<S> harmonic;  // basis of N(d_k) ∩ N(delta_k)
};

/// Three mutually orthogonal summands of degree k; their dimensions add up
/// to dims[k] for positive-definite Grams.
template <class S>
HodgeSplit<S> hodge_decompose(const ChainComplex<S>& cx, int k,
                              const Tolerances& tol = {}) {
  cx.require_degree(k);
  const Mat<S> g = cx.gram_at(k);
  HodgeSplit<S> out;
  out.exact = orthonormalize<S>(cx.d_at(k - 1), g, tol);
  out.coexact = orthonormalize<S>(delta_at(cx, k + 1), g, tol);
  out.harmonic =
      orthonormalize<S>(kernel_basis<S>(vcat<S>(cx.d_at(k), delta_at(cx, k)), tol), g, tol);
  const Eigen::Index total =
      out.exact.cols() + out.coexact.cols() + out.harmonic.cols();
  if (total != cx.dim_at(k))
    throw std::runtime_error("hodge_decompose: summands span " +
                             std::to_string(total) + " of " +
                             std::to_string(cx.dim_at(k)) + " dimensions");
  return out;
}

enum class OpTag { d_delta, delta_d };

inline std::string to_string(OpTag t) {
  return t == OpTag::d_delta ? "d_delta" : "delta_d";
}

enum class SubspaceKind { exact_side, coexact_side, harmonic };

/// An eigenspace of d∘delta or delta∘d at a named eigenvalue.
template <class S>
struct SpectralSubspace {
  int degree = 0;
  OpTag tag = OpTag::delta_d;
  S lambda = S(0);
  Mat<S> basis;  // G-orthonormal columns (independent columns when exact)
  SubspaceKind kind = SubspaceKind::coexact_side;

  Eigen::Index dim() const { return basis.cols(); }
};

/// The lambda-eigenspace of the tagged operator in the Gram inner product;
/// empty when no eigenvalue lies within tau of lambda. Exact scalars take
/// the literal kernel of (op - lambda I).
template <class S>
SpectralSubspace<S> eigenspace(const ChainComplex<S>& cx, int k, OpTag tag,
                               const S& lambda, const Tolerances& tol = {}) {
  cx.require_degree(k);
  SpectralSubspace<S> out;
  out.degree = k;
  out.tag = tag;
  out.lambda = lambda;
  out.kind = tag == OpTag::d_delta ? SubspaceKind::exact_side
                                   : SubspaceKind::coexact_side;
  const int m = cx.dim_at(k);
  if (m == 0) {
    out.basis = Mat<S>(0, 0);
    return out;
  }
  if constexpr (scalar_traits<S>::is_exact) {
    Mat<S> op = tag == OpTag::d_delta ? op_d_delta(cx, k) : op_delta_d(cx, k);
    out.basis = kernel_basis<S>(Mat<S>(op - lambda * Mat<S>::Identity(m, m)), tol);
    return out;
  } else {
    // Generalized symmetric form: for delta d use d^T G d; for d delta use
    // G d G^{-1} d^T G; both against B = G.
    Mat<double> a_sym;
    const bool weighted = cx.has_gram();
    Mat<double> b = weighted ? cx.gram_at(k) : Mat<double>(Mat<double>::Identity(m, m));
    if (tag == OpTag::delta_d) {
      Mat<double> dk = cx.d_at(k);
      Mat<double> gup = weighted ? cx.gram_at(k + 1)
                                 : Mat<double>(Mat<double>::Identity(cx.dim_at(k + 1), cx.dim_at(k + 1)));
      a_sym = dk.transpose() * gup * dk;
    } else {
      Mat<double> ddn = cx.d_at(k - 1);
      if (weighted) {
        Mat<double> gdn_inv_dt =
            internal::solve_spd<double>(cx.gram_at(k - 1), Mat<double>(ddn.transpose()));
        a_sym = b * ddn * gdn_inv_dt * b;
      } else {
        a_sym = ddn * ddn.transpose();
      }
    }
    Eigen::GeneralizedSelfAdjointEigenSolver<Mat<double>> es(a_sym, b);
    if (es.info() != Eigen::Success)
      throw std::runtime_error("eigenspace: eigensolver failed");
    const Eigen::VectorXd evs = es.eigenvalues();
    const double scale = std::max(1.0, evs.cwiseAbs().maxCoeff());
    std::vector<Eigen::Index> keep;
    for (Eigen::Index i = 0; i < evs.size(); ++i)
      if (std::fabs(evs(i) - scalar_traits<S>::to_double(lambda)) <= tol.tau * scale)
        keep.push_back(i);
    Mat<double> basis(m, static_cast<Eigen::Index>(keep.size()));
    for (std::size_t c = 0; c < keep.size(); ++c) basis.col(c) = es.eigenvectors().col(keep[c]);
    out.basis = orthonormalize<double>(basis, b.isIdentity(1e-14) ? Mat<double>() : b, tol);
    return out;
  }
}

/// dim N(d_k) - rank(d_{k-1}); agrees with the harmonic dimension in the
/// positive-definite setting.
template <class S>
int betti(const ChainComplex<S>& cx, int k, const Tolerances& tol = {}) {
  cx.require_degree(k);
  const Eigen::Index zk = cx.dim_at(k) - rank_of<S>(cx.d_at(k), tol);
  return static_cast<int>(zk - rank_of<S>(cx.d_at(k - 1), tol));
}

}  // namespace detourlab
