#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

#include "detourlab/chain_complex.hpp"
#include "detourlab/rng.hpp"

namespace detourlab {

/// Haar-ish random orthogonal matrix: QR of a Gaussian block with the sign
/// fixed from the R diagonal. The exact instantiation uses the Cayley
/// transform of a random rational skew matrix, which is orthogonal over Q.
template <class S>
Mat<S> random_orthogonal(int dim, CounterRng& rng) {
  if (dim == 0) return Mat<S>(0, 0);
  if constexpr (scalar_traits<S>::is_exact) {
    Mat<S> m = small_rational_matrix(dim, dim, rng);
    Mat<S> skew = m - Mat<S>(m.transpose());
    Mat<S> id = Mat<S>::Identity(dim, dim);
    Eigen::FullPivLU<Mat<S>> lu(Mat<S>(id + skew));
    lu.setThreshold(S(0));
    return lu.solve(Mat<S>(id - skew));
  } else {
    Mat<double> g = gaussian_matrix(dim, dim, rng);
    Eigen::HouseholderQR<Mat<double>> qr(g);
    Mat<double> q = qr.householderQ();
    Mat<double> r = qr.matrixQR().template triangularView<Eigen::Upper>();
    for (int j = 0; j < dim; ++j)
      if (r(j, j) < 0) q.col(j) = -q.col(j);
    return q;
  }
}

/// Prescribed-spectrum complex: identity Grams, d_j built from orthonormal
/// frames so that delta∘d on degree j has nonzero spectrum exactly
/// {sigma^2 : sigma in spectra[j]}, d∘delta on degree j+1 the same, d∘d = 0,
/// and extra[j] harmonic directions at degree j.
///
/// Frame layout at degree j: the first #spectra[j-1] columns of a random
/// orthogonal matrix receive the image of d_{j-1}, the next #spectra[j]
/// columns feed d_j, the remainder is harmonic.
template <class S>
ChainComplex<S> build_prescribed(int n, const std::vector<std::vector<S>>& spectra,
                                 const std::vector<int>& extra, CounterRng& rng,
                                 const Tolerances& tol = {}) {
  if (n < 1) throw std::invalid_argument("build_prescribed: n must be >= 1");
  if (spectra.size() != static_cast<std::size_t>(n) ||
      extra.size() != static_cast<std::size_t>(n) + 1)
    throw std::invalid_argument("build_prescribed: need n spectra lists and n+1 extras");
  for (const auto& list : spectra)
    for (const S& s : list)
      if (!(s > S(0)))
        throw std::invalid_argument("build_prescribed: singular values must be positive");

  ChainComplex<S> cx;
  cx.n = n;
  cx.dims.resize(n + 1);
  for (int j = 0; j <= n; ++j) {
    const int below = j >= 1 ? static_cast<int>(spectra[j - 1].size()) : 0;
    const int here = j <= n - 1 ? static_cast<int>(spectra[j].size()) : 0;
    if (extra[j] < 0) throw std::invalid_argument("build_prescribed: negative extra dim");
    cx.dims[j] = below + here + extra[j];
    if (cx.dims[j] > tol.dim_cap)
      throw std::invalid_argument("build_prescribed: dimension budget exceeds the cap");
  }

  std::vector<Mat<S>> frames(n + 1);
  for (int j = 0; j <= n; ++j) frames[j] = random_orthogonal<S>(cx.dims[j], rng);

  cx.d.resize(n);
  for (int j = 0; j < n; ++j) {
    const int r = static_cast<int>(spectra[j].size());
    const int below = j >= 1 ? static_cast<int>(spectra[j - 1].size()) : 0;
    Mat<S> target = frames[j + 1].leftCols(r);          // exact receivers upstairs
    Mat<S> source = frames[j].middleCols(below, r);     // coexact feeders here
    Mat<S> sig = Mat<S>::Zero(r, r);
    for (int i = 0; i < r; ++i) sig(i, i) = spectra[j][i];
    cx.d[j] = target * sig * Mat<S>(source.transpose());
  }
  return cx;
}

/// A square rational block B with B^T B = B B^T = lambda * I: size 1 when
/// lambda is a perfect rational square, otherwise the 4x4 quaternion matrix
/// of an integral four-square representation (scaled by the denominator).
inline Mat<Rational> exact_spectral_block(const Rational& lambda) {
  using boost::multiprecision::mpz_int;
  if (!(lambda > 0))
    throw std::invalid_argument("exact_spectral_block: lambda must be positive");
  const mpz_int num = boost::multiprecision::numerator(lambda);
  const mpz_int den = boost::multiprecision::denominator(lambda);
  const mpz_int rn = boost::multiprecision::sqrt(num);
  const mpz_int rd = boost::multiprecision::sqrt(den);
  if (rn * rn == num && rd * rd == den) {
    Mat<Rational> b(1, 1);
    b(0, 0) = Rational(rn, rd);
    return b;
  }
  // lambda = (num*den) / den^2; four squares for the integer N = num*den.
  const mpz_int N = num * den;
  long a = 0, b2 = 0, c = 0, e = 0;
  bool found = false;
  const long root = static_cast<long>(boost::multiprecision::sqrt(N));
  for (long i = 0; i <= root && !found; ++i)
    for (long j = i; 1L * i * i + 1L * j * j <= N && !found; ++j)
      for (long k = j; 1L * i * i + 1L * j * j + 1L * k * k <= N && !found; ++k) {
        const mpz_int rest = N - mpz_int(1L * i * i + 1L * j * j + 1L * k * k);
        const mpz_int rr = boost::multiprecision::sqrt(rest);
        if (rr * rr == rest) {
          a = i; b2 = j; c = k; e = static_cast<long>(rr);
          found = true;
        }
      }
  if (!found)
    throw std::runtime_error("exact_spectral_block: four-square search failed");
  Mat<Rational> q(4, 4);
  q << Rational(a), Rational(-b2), Rational(-c), Rational(-e),
       Rational(b2), Rational(a), Rational(-e), Rational(c),
       Rational(c), Rational(e), Rational(a), Rational(-b2),
       Rational(e), Rational(-c), Rational(b2), Rational(a);
  return Rational(1, den) * q;
}

/// Exact-rational prescribed complex with eigenvalue targets: every lambda in
/// targets[j] becomes an exact block of delta∘d on degree j (size 1 or 4, see
/// exact_spectral_block). Frames are Cayley-orthogonal, so all decomposition
/// identities downstream hold literally over Q.
inline ChainComplex<Rational> build_prescribed_exact(
    int n, const std::vector<std::vector<Rational>>& targets,
    const std::vector<int>& extra, CounterRng& rng) {
  if (n < 1 || targets.size() != static_cast<std::size_t>(n) ||
      extra.size() != static_cast<std::size_t>(n) + 1)
    throw std::invalid_argument("build_prescribed_exact: bad shape");
  std::vector<std::vector<Mat<Rational>>> blocks(n);
  std::vector<int> rank_at(n, 0);
  for (int j = 0; j < n; ++j)
    for (const Rational& lam : targets[j]) {
      blocks[j].push_back(exact_spectral_block(lam));
      rank_at[j] += static_cast<int>(blocks[j].back().rows());
    }

  ChainComplex<Rational> cx;
  cx.n = n;
  cx.dims.resize(n + 1);
  for (int j = 0; j <= n; ++j) {
    const int below = j >= 1 ? rank_at[j - 1] : 0;
    const int here = j <= n - 1 ? rank_at[j] : 0;
    cx.dims[j] = below + here + extra[j];
  }
  std::vector<Mat<Rational>> frames(n + 1);
  for (int j = 0; j <= n; ++j) frames[j] = random_orthogonal<Rational>(cx.dims[j], rng);

  cx.d.resize(n);
  for (int j = 0; j < n; ++j) {
    const int r = rank_at[j];
    const int below = j >= 1 ? rank_at[j - 1] : 0;
    Mat<Rational> sig = Mat<Rational>::Zero(r, r);
    int at = 0;
    for (const auto& b : blocks[j]) {
      sig.block(at, at, b.rows(), b.cols()) = b;
      at += static_cast<int>(b.rows());
    }
    cx.d[j] = Mat<Rational>(frames[j + 1].leftCols(r)) * sig *
              Mat<Rational>(frames[j].middleCols(below, r).transpose());
  }
  return cx;
}

/// Random complex: Gaussian d_0, later differentials projected against the
/// range of the previous one so that d∘d = 0 holds to working precision.
template <class S>
ChainComplex<S> build_random(int n, const std::vector<int>& dims, CounterRng& rng,
                             bool with_gram = false, const Tolerances& tol = {}) {
  if (n < 1 || dims.size() != static_cast<std::size_t>(n) + 1)
    throw std::invalid_argument("build_random: need n+1 dimensions");
  ChainComplex<S> cx;
  cx.n = n;
  cx.dims = dims;
  cx.d.resize(n);
  for (int j = 0; j < n; ++j) {
    Mat<S> r;
    if constexpr (scalar_traits<S>::is_exact)
      r = small_rational_matrix(dims[j + 1], dims[j], rng);
    else
      r = gaussian_matrix(dims[j + 1], dims[j], rng);
    if (j == 0) {
      cx.d[j] = r;
      continue;
    }
    Mat<S> u = image_basis<S>(cx.d[j - 1], tol);
    if (u.cols() == 0) {
      cx.d[j] = r;
      continue;
    }
    if constexpr (scalar_traits<S>::is_exact) {
      Eigen::FullPivLU<Mat<S>> lu(Mat<S>(u.transpose() * u));
      lu.setThreshold(S(0));
      cx.d[j] = r - Mat<S>(r * u) * lu.solve(Mat<S>(u.transpose()));
    } else {
      cx.d[j] = r - (r * u) * u.transpose();
    }
  }
  if (with_gram) {
    cx.gram.resize(n + 1);
    for (int j = 0; j <= n; ++j) {
      const int m = dims[j];
      if constexpr (scalar_traits<S>::is_exact) {
        Mat<S> v = small_rational_matrix(m, m, rng, 1, 3);
        cx.gram[j] = Mat<S>::Identity(m, m) + Mat<S>(v.transpose() * v);
      } else {
        Mat<double> v = gaussian_matrix(m, m, rng) * (0.3 / std::sqrt(std::max(1, m)));
        cx.gram[j] = Mat<double>::Identity(m, m) + v * v.transpose();
      }
    }
  }
  return cx;
}

/// Real Fourier truncation of the flat n-torus up to frequency cutoff M.
/// Degree-k space: {normalised trig mode, |m_i| <= M} x {dx^I, |I| = k}; the
/// differential acts mode-wise with integer coefficients, so d∘d = 0 exactly
/// and the trig basis is orthonormal (identity Grams).
template <class S>
ChainComplex<S> build_torus(int n, int M, const Tolerances& tol = {}) {
  if (n < 1 || M < 0) throw std::invalid_argument("build_torus: bad parameters");

  // Canonical modes: m = 0 once; otherwise the first nonzero entry positive,
  // each canonical mode carrying a cos and a sin basis function.
  std::vector<std::vector<int>> modes;
  std::vector<int> m(n, -M);
  while (true) {
    int first_nonzero = 0;
    for (int v : m) {
      if (v != 0) { first_nonzero = v; break; }
    }
    if (first_nonzero >= 0) modes.push_back(m);
    int pos = n - 1;
    while (pos >= 0 && m[pos] == M) m[pos--] = -M;
    if (pos < 0) break;
    ++m[pos];
  }

  struct Fn { int mode; int trig; };  // trig: 0 = cos, 1 = sin
  std::vector<Fn> fns;
  for (std::size_t i = 0; i < modes.size(); ++i) {
    bool zero = true;
    for (int v : modes[i]) zero = zero && v == 0;
    fns.push_back({static_cast<int>(i), 0});
    if (!zero) fns.push_back({static_cast<int>(i), 1});
  }

  // k-subsets of {0..n-1} in lexicographic order, with lookup indices.
  std::vector<std::vector<std::vector<int>>> subsets(n + 1);
  {
    std::vector<int> pick;
    auto rec = [&](auto&& self, int start, int k) -> void {
      if (k == 0) {
        subsets[pick.size()].push_back(pick);
        return;
      }
      for (int i = start; i <= n - k; ++i) {
        pick.push_back(i);
        self(self, i + 1, k - 1);
        pick.pop_back();
      }
    };
    subsets[0].push_back({});
    for (int k = 1; k <= n; ++k) {
      pick.clear();
      rec(rec, 0, k);
      // rec fills subsets[k] (pick.size() == k at the leaves)
    }
  }
  auto subset_index = [&](int k, const std::vector<int>& s) -> int {
    const auto& list = subsets[k];
    const auto it = std::lower_bound(list.begin(), list.end(), s);
    return static_cast<int>(it - list.begin());
  };

  ChainComplex<S> cx;
  cx.n = n;
  cx.dims.resize(n + 1);
  const int nf = static_cast<int>(fns.size());
  for (int k = 0; k <= n; ++k) {
    cx.dims[k] = nf * static_cast<int>(subsets[k].size());
    if (cx.dims[k] > tol.dim_cap)
      throw std::invalid_argument("build_torus: dimension " + std::to_string(cx.dims[k]) +
                                  " exceeds the cap at degree " + std::to_string(k));
  }
  // Basis index at degree k: fn * C(n,k) + subset index.
  cx.d.resize(n);
  for (int k = 0; k < n; ++k) {
    Mat<S> dk = Mat<S>::Zero(cx.dims[k + 1], cx.dims[k]);
    const int nsub = static_cast<int>(subsets[k].size());
    const int nsub_up = static_cast<int>(subsets[k + 1].size());
    for (int f = 0; f < nf; ++f) {
      const std::vector<int>& mode = modes[fns[f].mode];
      // The cos/sin partner of the same mode (derivatives swap them).
      int partner = f;
      bool zero = true;
      for (int v : mode) zero = zero && v == 0;
      if (!zero) partner = fns[f].trig == 0 ? f + 1 : f - 1;
      for (int si = 0; si < nsub; ++si) {
        const std::vector<int>& I = subsets[k][si];
        for (int j = 0; j < n; ++j) {
          if (std::binary_search(I.begin(), I.end(), j)) continue;
          if (mode[j] == 0) continue;
          std::vector<int> J = I;
          const auto at = std::lower_bound(J.begin(), J.end(), j);
          const int sign = (at - J.begin()) % 2 == 0 ? 1 : -1;
          J.insert(at, j);
          // d cos = -m_j sin dx^j ∧ ..., d sin = +m_j cos dx^j ∧ ...
          const long coeff = (fns[f].trig == 0 ? -1L : 1L) * mode[j] * sign;
          dk(partner * nsub_up + subset_index(k + 1, J), f * nsub + si) += S(coeff);
        }
      }
    }
    cx.d[k] = dk;
  }
  return cx;
}

}  // namespace detourlab
