// Acceptance gate: runs every top-level criterion at its stated tolerance
// and prints one pass/fail line each. Exit status 0 iff all pass.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include <detourlab/detourlab.hpp>

using namespace detourlab;

namespace {

struct Criterion {
  int number;
  std::string label;
  double budget_seconds;
  std::function<bool(std::string&)> body;
};

const std::vector<std::pair<int, int>> kNumericCases = {
    {6, 1}, {6, 2}, {8, 1}, {8, 2}, {8, 3}};
constexpr int kComplexesPerCase = 20;

struct SeededSet {
  DetourContext<double> ctx;
  std::vector<SeededComplex<double>> complexes;
};

std::vector<SeededSet>& seeded_sets() {
  static std::vector<SeededSet> sets = [] {
    std::vector<SeededSet> out;
    Tolerances tol;
    for (const auto& [n, k] : kNumericCases) {
      SeededSet set{DetourContext<double>(n, k, -0.5 * n), {}};
      for (int trial = 0; trial < kComplexesPerCase; ++trial) {
        CounterRng rng(derive_seed(7100, n, k, trial));
        set.complexes.push_back(make_seeded_complex<double>(set.ctx, rng, tol));
      }
      out.push_back(std::move(set));
    }
    return out;
  }();
  return sets;
}

bool admissible(int n, int k) { return n != 4 || k == 1; }

}  // namespace

int main() {
  Tolerances tol;
  std::vector<Criterion> criteria;

  criteria.push_back({1, "symbolic formula identity over the full sweep", 10.0,
                      [&](std::string& detail) {
    int count = 0;
    for (int n : {4, 6, 8, 10, 12})
      for (int k = 1; k <= n / 2; ++k) {
        if (!admissible(n, k)) continue;
        const int pc = (n - 2 * k) / 2;
        for (int p = 1; p <= pc + 2; ++p, ++count)
          if (!verify_formula(n, k, p).equal) {
            detail = "mismatch at n=" + std::to_string(n) + " k=" +
                     std::to_string(k) + " p=" + std::to_string(p);
            return false;
          }
      }
    detail = std::to_string(count) + " exact identities";
    return true;
  }});

  criteria.push_back({2, "critical-weight collapse to the two-slot pair", 5.0,
                      [&](std::string& detail) {
    int count = 0;
    for (int n : {4, 6, 8, 10, 12})
      for (int k = 1; k <= n / 2; ++k) {
        if (!admissible(n, k)) continue;
        const int pc = (n - 2 * k) / 2;
        if (pc < 1) continue;
        const SlotExpression it = iterate_LL(n, k, pc);
        const OperatorPoly z_expect =
            Rational(2L * pc, k) *
            (OperatorPoly::delta_d() *
             factored_bracket(n, k + 1, pc - 1, OperatorPoly::delta_d()));
        const OperatorPoly x_expect =
            OperatorPoly::letter_delta() *
            factored_bracket(n, k, pc, OperatorPoly::d_delta());
        const bool ok = it.y.is_zero() && it.w.is_zero() &&
                        it.z == z_expect && it.x == x_expect;
        if (!ok) {
          detail = "collapse failed at n=" + std::to_string(n) + " k=" + std::to_string(k);
          return false;
        }
        ++count;
      }
    detail = std::to_string(count) + " exact collapses";
    return true;
  }});

  criteria.push_back({3, "operator identities as exact polynomials", 5.0,
                      [&](std::string& detail) {
    int count = 0;
    for (int n : {4, 6, 8, 10, 12})
      for (int k = 0; k <= n / 2; ++k) {
        if (k >= 1 && !admissible(n, k)) continue;
        const int pc = (n - 2 * k) / 2;
        OperatorFormulas f;
        try {
          f = extract_operator_formulas(n, k);
        } catch (const std::exception& e) {
          detail = e.what();
          return false;
        }
        bool ok = (OperatorPoly::letter_d() * f.Q * OperatorPoly::letter_d()).is_zero();
        ok = ok && f.G == OperatorPoly::letter_delta() * f.Q;
        ok = ok && f.G == factored_bracket(n, k, pc, OperatorPoly::delta_d()) *
                              OperatorPoly::letter_delta();
        if (k < n / 2) {
          const OperatorPoly q_up =
              factored_bracket(n, k + 1, pc - 1, OperatorPoly::d_delta());
          ok = ok && f.L == OperatorPoly::letter_delta() * q_up * OperatorPoly::letter_d();
        }
        if (!ok) {
          detail = "identity failed at n=" + std::to_string(n) + " k=" + std::to_string(k);
          return false;
        }
        ++count;
      }
    detail = std::to_string(count) + " (n, k) pairs";
    return true;
  }});

  criteria.push_back({4, "null-space decomposition of the detour operator", 60.0,
                      [&](std::string& detail) {
    int checked = 0;
    for (const auto& set : seeded_sets())
      for (const auto& seeded : set.complexes) {
        auto rep = null_L_decomposition(set.ctx, seeded.cx, tol);
        if (rep.verdict != Verdict::pass || rep.max_residual > 1e-8) {
          detail = rep.space + " verdict " + to_string(rep.verdict);
          return false;
        }
        for (const auto& [lam, mult] : seeded.coexact_side) {
          bool found = false;
          for (const auto& s : rep.summands)
            found = found || (s.kind == "Htilde" &&
                              s.lambda == scalar_traits<double>::to_string(lam) &&
                              s.dim == mult);
          if (!found) {
            detail = "seeded multiplicity mismatch in " + rep.space;
            return false;
          }
        }
        ++checked;
      }
    detail = std::to_string(checked) + " complexes";
    return true;
  }});

  criteria.push_back({5, "conformal harmonics and the two-slot null space", 60.0,
                      [&](std::string& detail) {
    int checked = 0;
    for (const auto& set : seeded_sets())
      for (const auto& seeded : set.complexes) {
        auto hg = harmonics_G(set.ctx, seeded.cx, tol);
        auto ll = null_LL_decomposition(set.ctx, seeded.cx, tol);
        if (hg.verdict != Verdict::pass || hg.max_residual > 1e-8) {
          detail = hg.space + " verdict " + to_string(hg.verdict);
          return false;
        }
        if (ll.verdict != Verdict::pass || ll.max_residual > 1e-8) {
          detail = ll.space + " verdict " + to_string(ll.verdict);
          return false;
        }
        for (const auto& [lam, mult] : seeded.exact_side) {
          bool found = false;
          for (const auto& s : hg.summands)
            found = found || (s.kind == "Hbar" &&
                              s.lambda == scalar_traits<double>::to_string(lam) &&
                              s.dim == mult);
          if (!found) {
            detail = "seeded multiplicity mismatch in " + hg.space;
            return false;
          }
        }
        ++checked;
      }
    detail = std::to_string(checked) + " complexes, both decompositions";
    return true;
  }});

  criteria.push_back({6, "exact sequences with final-map surjectivity", 60.0,
                      [&](std::string& detail) {
    int checked = 0;
    for (const auto& set : seeded_sets())
      for (const auto& seeded : set.complexes) {
        auto rep = sequence_checks(set.ctx, seeded.cx, tol);
        if (rep.verdict != Verdict::pass || !rep.seq1_exact || !rep.seq2_exact) {
          detail = "sequences failed at n=" + std::to_string(set.ctx.n) +
                   " k=" + std::to_string(set.ctx.k);
          return false;
        }
        ++checked;
      }
    detail = std::to_string(checked) + " complexes, zero failures";
    return true;
  }});

  criteria.push_back({7, "positive-curvature vanishing", 30.0,
                      [&](std::string& detail) {
    int checked = 0;
    for (const auto& [n, k] : kNumericCases) {
      const DetourContext<double> ctx(n, k, 0.5 * n);
      for (int trial = 0; trial < kComplexesPerCase; ++trial) {
        CounterRng rng(derive_seed(7200, n, k, trial));
        std::vector<int> dims(k + 3);
        for (auto& d : dims) d = static_cast<int>(rng.uniform_int(4, 9));
        auto cx = build_random<double>(k + 2, dims, rng, false, tol);
        for (int deg = 0; deg <= cx.n; ++deg)
          for (int m = 0; m <= n / 2; ++m) {
            const DetourContext<double> cm(n, m, ctx.J);
            for (double lam : lambda_scalars(cm)) {
              if (eigenspace<double>(cx, deg, OpTag::delta_d, lam, tol).dim() != 0 ||
                  eigenspace<double>(cx, deg, OpTag::d_delta, lam, tol).dim() != 0) {
                detail = "nonempty eigenspace at a negative eigenvalue";
                return false;
              }
            }
          }
        auto kerL = kernel_with_info<double>(l_matrix(ctx, cx), tol);
        if (kerL.basis.cols() != closed_basis(cx, k, tol).cols()) {
          detail = "N(L) != closed forms under positive curvature";
          return false;
        }
        auto hg = kernel_with_info<double>(
            vcat<double>(cx.d_at(k), g_matrix(ctx, cx)), tol);
        if (hg.basis.cols() != harmonic_basis(cx, k, tol).cols()) {
          detail = "H_G != harmonics under positive curvature";
          return false;
        }
        ++checked;
      }
    }
    detail = std::to_string(checked) + " random complexes";
    return true;
  }});

  criteria.push_back({8, "Ricci-flat branch on the torus", 120.0,
                      [&](std::string& detail) {
    const auto cx = build_torus<double>(4, 1, tol);
    for (int k = 0; k <= 4; ++k) {
      long binom = 1;
      for (int i = 0; i < k; ++i) binom = binom * (4 - i) / (i + 1);
      if (betti(cx, k, tol) != binom) {
        detail = "torus betti mismatch at degree " + std::to_string(k);
        return false;
      }
    }
    CounterRng rng(7300);
    for (int k = 0; k <= 2; ++k) {
      const DetourContext<double> ctx(4, k, 0.0);
      const Mat<double> closed = closed_basis(cx, k, tol);
      const Mat<double> dd = op_d_delta(cx, k);
      for (int t = 0; t < 50; ++t) {
        Vec<double> coef = Vec<double>::NullaryExpr(
            closed.cols(), [&](Eigen::Index) { return rng.gaussian(); });
        Vec<double> w = closed * coef;
        Vec<double> direct = w;
        for (int i = 0; i < ctx.p(); ++i) direct = dd * direct;
        if ((apply_Q(ctx, cx, w, tol) - direct).norm() > 1e-10 * std::max(1.0, w.norm())) {
          detail = "Q action differs from the d-delta power at k = " + std::to_string(k);
          return false;
        }
      }
      auto pr = pairing_suite(ctx, cx, tol);
      const double want = k < 2 ? 0.0 : 1.0;
      if (pr.predicted_constant != want || pr.theta_harmonic_residual > 1e-10) {
        detail = "quadratic form mismatch at k = " + std::to_string(k);
        return false;
      }
    }
    detail = "betti, 150 action vectors, pairings";
    return true;
  }});

  criteria.push_back({9, "pairing descent and the harmonic constant", 30.0,
                      [&](std::string& detail) {
    // Spot value: s^1 = 8/3 at n = 6.
    if (s_constant(DetourContext<Rational>(6, 1, Rational(1))) != Rational(8, 3)) {
      detail = "s^1 spot value";
      return false;
    }
    int checked = 0;
    for (const auto& set : seeded_sets())
      for (const auto& seeded : set.complexes) {
        auto rep = pairing_suite(set.ctx, seeded.cx, tol);
        if (rep.descent_residual > 1e-8 || rep.theta_harmonic_residual > 1e-8 ||
            rep.theta_mixed_residual > 1e-8 || rep.verdict != Verdict::pass) {
          detail = "pairing failure at n=" + std::to_string(set.ctx.n) +
                   " k=" + std::to_string(set.ctx.k);
          return false;
        }
        ++checked;
      }
    detail = std::to_string(checked) + " complexes";
    return true;
  }});

  criteria.push_back({10, "degree-zero pairing against the harmonic component", 10.0,
                      [&](std::string& detail) {
    for (int n : {6, 8}) {
      const DetourContext<double> ctx(n, 0, -0.5 * n);
      for (int trial = 0; trial < 5; ++trial) {
        CounterRng rng(derive_seed(7400, n, 0, trial));
        auto seeded = make_seeded_complex<double>(ctx, rng, tol);
        auto rep = pairing_suite(ctx, seeded.cx, tol);
        if (rep.k0_residual > 1e-8) {
          detail = "residual " + std::to_string(rep.k0_residual);
          return false;
        }
      }
    }
    detail = "n in {6, 8}, 5 seeded complexes each";
    return true;
  }});

  criteria.push_back({11, "cross-engine agreement", 30.0,
                      [&](std::string& detail) {
    int checked = 0;
    for (auto [n, k] : {std::pair{6, 1}, {6, 2}, {8, 1}, {8, 3}, {10, 2}}) {
      CounterRng rng(derive_seed(7500, n, k, 0));
      std::vector<int> dims(k + 3);
      for (auto& d : dims) d = static_cast<int>(rng.uniform_int(4, 9));
      auto cx = build_random<double>(k + 2, dims, rng, false, tol);
      const double J = -0.5 * n;
      const DetourContext<double> ctx(n, k, J);
      const OperatorFormulas f = extract_operator_formulas(n, k);
      auto rel = [](const Mat<double>& a, const Mat<double>& b) {
        return (a - b).norm() / std::max(1.0, b.norm());
      };
      if (rel(instantiate_poly<double>(f.Q, cx, k, J), q_matrix(ctx, cx)) > 1e-10 ||
          rel(instantiate_poly<double>(f.G, cx, k, J), g_matrix(ctx, cx)) > 1e-10 ||
          rel(instantiate_poly<double>(f.L, cx, k, J), l_matrix(ctx, cx)) > 1e-10) {
        detail = "disagreement at n=" + std::to_string(n) + " k=" + std::to_string(k);
        return false;
      }
      ++checked;
    }
    detail = std::to_string(checked) + " random complexes";
    return true;
  }});

  int failures = 0;
  for (auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = false;
    try {
      ok = c.body(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > c.budget_seconds) {
      ok = false;
      detail += " [over budget " + std::to_string(c.budget_seconds) + " s]";
    }
    std::printf("criterion %2d [%s] %s (%s; %.2f s)\n", c.number,
                ok ? "pass" : "FAIL", c.label.c_str(), detail.c_str(), secs);
    std::fflush(stdout);
    if (!ok) ++failures;
  }
  std::printf("ACCEPTANCE: %zu/%zu criteria passed\n", criteria.size() - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
