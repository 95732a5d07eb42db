#pragma once

#include <stdexcept>

#include "detourlab/chain_complex.hpp"
#include "detourlab/oppoly.hpp"

namespace detourlab {

/// Substitute the complex's d and delta matrices (and a scalar for J) into an
/// operator polynomial acting on degree k. Letters stepping outside [0, n]
/// hit zero spaces and kill the word. All terms must land in the same target
/// degree.
template <class S>
Mat<S> instantiate_poly(const OperatorPoly& poly, const ChainComplex<S>& cx,
                        int k, const S& J) {
  cx.require_degree(k);
  const auto net = poly.uniform_net_degree();
  if (!poly.is_zero() && !net)
    throw std::invalid_argument("instantiate_poly: mixed target degrees");
  const int target = poly.is_zero() || !net ? k : k + *net;
  Mat<S> acc = Mat<S>::Zero(cx.dim_at(target), cx.dim_at(k));
  for (const auto& [key, coeff] : poly.terms()) {
    const OperatorWord& w = key.first;
    Mat<S> cur = Mat<S>::Identity(cx.dim_at(k), cx.dim_at(k));
    int deg = k;
    bool dead = false;
    // Letters act right-to-left: the last letter of the word applies first.
    for (int pos = w.length() - 1; pos >= 0; --pos) {
      const Letter l = (pos % 2 == 0) ? w.first() : other(w.first());
      if (l == Letter::d) {
        if (deg + 1 > cx.n) { dead = true; break; }
        cur = cx.d_at(deg) * cur;
        ++deg;
      } else {
        if (deg - 1 < 0) { dead = true; break; }
        cur = delta_at(cx, deg) * cur;
        --deg;
      }
    }
    if (dead) continue;  // the word fell off the complex
    S jpow = S(1);
    for (int e = 0; e < key.second; ++e) jpow = jpow * J;
    const S c = coeff.template convert_to<S>();
    acc += (c * jpow) * cur;
  }
  return acc;
}

}  // namespace detourlab
