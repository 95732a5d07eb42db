#pragma once

#include <Eigen/Dense>
#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <cmath>
#include <sstream>
#include <string>

namespace detourlab {

/// Exact rational scalar used by the symbolic engine and the exact
/// instantiations of the numeric machinery.
using Rational = boost::multiprecision::mpq_rational;

template <class S>
using Mat = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;
template <class S>
using Vec = Eigen::Matrix<S, Eigen::Dynamic, 1>;

/// Scalar-field policy. Everything numeric in this library is generic over
/// the field: `double` runs with tolerances, `Rational` runs exactly.
template <class S>
struct scalar_traits;

template <>
struct scalar_traits<double> {
  static constexpr bool is_exact = false;
  static double frac(long num, long den) {
    return static_cast<double>(num) / static_cast<double>(den);
  }
  static double abs(double x) { return std::fabs(x); }
  static double to_double(double x) { return x; }
  static std::string to_string(double x) {
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
  }
};

template <>
struct scalar_traits<Rational> {
  static constexpr bool is_exact = true;
  static Rational frac(long num, long den) { return Rational(num, den); }
  static Rational abs(const Rational& x) { return x < 0 ? Rational(-x) : x; }
  static double to_double(const Rational& x) { return x.convert_to<double>(); }
  static std::string to_string(const Rational& x) { return x.str(); }
};

/// Shorthand for exact-rational construction of n/d in the ambient field.
template <class S>
S frac(long num, long den = 1) {
  return scalar_traits<S>::frac(num, den);
}

/// Tolerances used by the floating-point instantiation. Exact instantiations
/// ignore them (every comparison is literal).
struct Tolerances {
  /// Eigen-membership: v belongs to eigenvalue lambda iff |Av - lambda v| <= tau |v|.
  double tau = 1e-8;
  /// Rank cut: singular values above eps_rank * max(dim) * sigma_max count.
  double eps_rank = 1e-10;
  /// Relative tolerance for pairing/entrywise comparisons.
  double tau_rel = 1e-8;
  /// A rank decision is conclusive only when the smallest retained singular
  /// value exceeds gap_factor times the cut.
  double gap_factor = 10.0;
  /// Hard cap on per-degree dimensions of generated complexes.
  int dim_cap = 2000;
  /// Cap on symbolic recursion depth.
  int p_cap = 64;
};

}  // namespace detourlab
