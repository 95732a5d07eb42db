#pragma once

#include <Eigen/Dense>
#include <limits>
#include <stdexcept>
#include <vector>

#include "detourlab/scalar.hpp"

namespace detourlab {

/// Outcome of a rank decision. Floating-point ranks come with a
/// conclusiveness flag: when the smallest retained singular value sits within
/// gap_factor of the cut, the decision is numerically ambiguous and every
/// check built on it must report "inconclusive" rather than "pass".
struct RankInfo {
  Eigen::Index rank = 0;
  bool conclusive = true;
  double gap = std::numeric_limits<double>::infinity();
};

template <class S>
Mat<S> hcat(const Mat<S>& a, const Mat<S>& b) {
  if (a.cols() == 0) return b;
  if (b.cols() == 0) return a;
  if (a.rows() != b.rows()) throw std::invalid_argument("hcat: row mismatch");
  Mat<S> m(a.rows(), a.cols() + b.cols());
  m << a, b;
  return m;
}

template <class S>
Mat<S> vcat(const Mat<S>& a, const Mat<S>& b) {
  if (a.rows() == 0) return b;
  if (b.rows() == 0) return a;
  if (a.cols() != b.cols()) throw std::invalid_argument("vcat: col mismatch");
  Mat<S> m(a.rows() + b.rows(), a.cols());
  m << a, b;
  return m;
}

namespace internal {

inline double rank_cut(const Eigen::VectorXd& sv, Eigen::Index rows,
                       Eigen::Index cols, const Tolerances& tol) {
  const double smax = sv.size() > 0 ? sv(0) : 0.0;
  return tol.eps_rank * static_cast<double>(std::max(rows, cols)) * smax;
}

}  // namespace internal

/// Rank with conclusiveness. Exact scalars: literal rank, always conclusive.
template <class S>
RankInfo rank_info(const Mat<S>& a, const Tolerances& tol = {}) {
  RankInfo info;
  if (a.rows() == 0 || a.cols() == 0) return info;
  if constexpr (scalar_traits<S>::is_exact) {
    Eigen::FullPivLU<Mat<S>> lu(a);
    lu.setThreshold(S(0));
    info.rank = lu.rank();
    return info;
  } else {
    Eigen::JacobiSVD<Mat<double>> svd(a);
    const Eigen::VectorXd sv = svd.singularValues();
    const double cut = internal::rank_cut(sv, a.rows(), a.cols(), tol);
    Eigen::Index r = 0;
    while (r < sv.size() && sv(r) > cut) ++r;
    info.rank = r;
    if (r > 0 && cut > 0.0) {
      info.gap = sv(r - 1) / cut;
      info.conclusive = info.gap >= tol.gap_factor;
    }
    return info;
  }
}

template <class S>
Eigen::Index rank_of(const Mat<S>& a, const Tolerances& tol = {}) {
  return rank_info(a, tol).rank;
}

template <class S>
struct SubspaceResult {
  Mat<S> basis;
  RankInfo info;
};

/// Basis of the null space of `a`. Floating path returns orthonormal columns,
/// exact path independent columns.
template <class S>
SubspaceResult<S> kernel_with_info(const Mat<S>& a, const Tolerances& tol = {}) {
  SubspaceResult<S> out;
  if (a.cols() == 0) {
    out.basis = Mat<S>(0, 0);
    return out;
  }
  if (a.rows() == 0) {
    out.basis = Mat<S>::Identity(a.cols(), a.cols());
    return out;
  }
  if constexpr (scalar_traits<S>::is_exact) {
    Eigen::FullPivLU<Mat<S>> lu(a);
    lu.setThreshold(S(0));
    out.info.rank = lu.rank();
    out.basis = lu.rank() == a.cols() ? Mat<S>(a.cols(), 0) : Mat<S>(lu.kernel());
    return out;
  } else {
    Eigen::JacobiSVD<Mat<double>> svd(a, Eigen::ComputeFullV);
    const Eigen::VectorXd sv = svd.singularValues();
    const double cut = internal::rank_cut(sv, a.rows(), a.cols(), tol);
    Eigen::Index r = 0;
    while (r < sv.size() && sv(r) > cut) ++r;
    out.info.rank = r;
    if (r > 0 && cut > 0.0) {
      out.info.gap = sv(r - 1) / cut;
      out.info.conclusive = out.info.gap >= tol.gap_factor;
    }
    out.basis = svd.matrixV().rightCols(a.cols() - r);
    return out;
  }
}

template <class S>
Mat<S> kernel_basis(const Mat<S>& a, const Tolerances& tol = {}) {
  return kernel_with_info(a, tol).basis;
}

/// Basis of the column space. Floating path: orthonormal (left singular
/// vectors); exact path: a maximal independent subset of the columns.
template <class S>
Mat<S> image_basis(const Mat<S>& a, const Tolerances& tol = {}) {
  if (a.rows() == 0 || a.cols() == 0) return Mat<S>(a.rows(), 0);
  if constexpr (scalar_traits<S>::is_exact) {
    Eigen::FullPivLU<Mat<S>> lu(a);
    lu.setThreshold(S(0));
    return lu.rank() == 0 ? Mat<S>(a.rows(), 0) : Mat<S>(lu.image(a));
  } else {
    Eigen::JacobiSVD<Mat<double>> svd(a, Eigen::ComputeThinU);
    const Eigen::VectorXd sv = svd.singularValues();
    const double cut = internal::rank_cut(sv, a.rows(), a.cols(), tol);
    Eigen::Index r = 0;
    while (r < sv.size() && sv(r) > cut) ++r;
    return svd.matrixU().leftCols(r);
  }
}

/// <x, y> in the inner product given by SPD matrix `g` (identity when empty).
template <class S>
S gram_dot(const Mat<S>& g, const Vec<S>& x, const Vec<S>& y) {
  if (g.size() == 0) return x.dot(y);
  return x.dot(g * y);
}

template <class S>
double gram_norm(const Mat<S>& g, const Vec<S>& x) {
  return std::sqrt(std::max(0.0, scalar_traits<S>::to_double(gram_dot(g, x, x))));
}

/// G-orthonormal basis of span(v). Exact path keeps an independent subset of
/// the columns instead (unit norms are generally irrational).
template <class S>
Mat<S> orthonormalize(const Mat<S>& v, const Mat<S>& g = Mat<S>(),
                      const Tolerances& tol = {}) {
  if (v.cols() == 0) return v;
  if constexpr (scalar_traits<S>::is_exact) {
    return image_basis(v, tol);
  } else {
    Mat<double> c = v;
    Eigen::LLT<Mat<double>> llt;
    const bool weighted = g.size() != 0;
    if (weighted) {
      llt.compute(g);
      if (llt.info() != Eigen::Success)
        throw std::invalid_argument("orthonormalize: Gram matrix not SPD");
      c = llt.matrixU() * v;  // map into the Euclidean frame
    }
    Eigen::ColPivHouseholderQR<Mat<double>> qr(c);
    qr.setThreshold(tol.eps_rank * static_cast<double>(std::max(c.rows(), c.cols())));
    const Eigen::Index r = qr.rank();
    Mat<double> q = qr.householderQ() * Mat<double>::Identity(c.rows(), r);
    if (!weighted) return q;
    return llt.matrixU().solve(q);
  }
}

/// Largest relative distance from the columns of x to span(v); v must be
/// G-orthonormal (floating) or any basis (exact, returns 0/1).
template <class S>
double residual_in_span(const Mat<S>& v, const Mat<S>& x,
                        const Mat<S>& g = Mat<S>(), const Tolerances& tol = {}) {
  if (x.cols() == 0) return 0.0;
  if constexpr (scalar_traits<S>::is_exact) {
    const Eigen::Index rv = rank_of<S>(v, tol);
    return rank_of<S>(hcat<S>(v, x), tol) == rv ? 0.0 : 1.0;
  } else {
    double worst = 0.0;
    for (Eigen::Index j = 0; j < x.cols(); ++j) {
      Vec<double> col = x.col(j);
      const double nrm = gram_norm<double>(g, col);
      if (nrm == 0.0) continue;
      Vec<double> coef = v.cols() > 0
                             ? Vec<double>(v.transpose() * (g.size() ? Vec<double>(g * col) : col))
                             : Vec<double>();
      Vec<double> rem = v.cols() > 0 ? Vec<double>(col - v * coef) : col;
      worst = std::max(worst, gram_norm<double>(g, rem) / nrm);
    }
    return worst;
  }
}

/// Basis of span(a) intersect span(b): kernel of [a | -b] read back through a.
template <class S>
SubspaceResult<S> intersect_spans(const Mat<S>& a, const Mat<S>& b,
                                  const Mat<S>& g = Mat<S>(),
                                  const Tolerances& tol = {}) {
  SubspaceResult<S> out;
  if (a.cols() == 0 || b.cols() == 0) {
    out.basis = Mat<S>(a.rows(), 0);
    return out;
  }
  Mat<S> stacked = hcat<S>(a, Mat<S>(-b));
  auto ker = kernel_with_info<S>(stacked, tol);
  out.info = ker.info;
  if (ker.basis.cols() == 0) {
    out.basis = Mat<S>(a.rows(), 0);
    return out;
  }
  Mat<S> raw = a * ker.basis.topRows(a.cols());
  out.basis = orthonormalize<S>(raw, g, tol);
  return out;
}

/// Dimension of span(union of the given bases).
template <class S>
RankInfo span_rank(const std::vector<Mat<S>>& bases, const Tolerances& tol = {}) {
  Mat<S> all;
  for (const auto& b : bases) all = all.size() == 0 ? b : hcat<S>(all, b);
  if (all.size() == 0) return RankInfo{};
  return rank_info<S>(all, tol);
}

/// Relative operator residual |a*x| / (|a| |x|) column-wise max; exact path
/// demands literal zero.
template <class S>
double relative_action_residual(const Mat<S>& a, const Mat<S>& x) {
  if (x.cols() == 0 || a.rows() == 0) return 0.0;
  if constexpr (scalar_traits<S>::is_exact) {
    return (a * x).isZero(S(0)) ? 0.0 : 1.0;
  } else {
    const double an = a.norm();
    double worst = 0.0;
    for (Eigen::Index j = 0; j < x.cols(); ++j) {
      const double xn = x.col(j).norm();
      if (xn == 0.0) continue;
      worst = std::max(worst, (a * x.col(j)).norm() / (std::max(an, 1.0) * xn));
    }
    return worst;
  }
}

}  // namespace detourlab
