#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "detourlab/complex_io.hpp"
#include "detourlab/generators.hpp"
#include "detourlab/instantiate.hpp"
#include "detourlab/pairings.hpp"
#include "detourlab/report.hpp"
#include "detourlab/slots.hpp"

namespace detourlab {

/// A prescribed complex seeded with every eigenvalue target of the detour
/// theory at degree k: d∘delta at k carries each lambda_i^k and delta∘d at k
/// carries each lambda_i^{k+1}, with recorded multiplicities, plus noise
/// spectrum bounded away from all targets and harmonic padding.
template <class S>
struct SeededComplex {
  ChainComplex<S> cx;
  std::vector<std::pair<S, int>> exact_side;    // (lambda_i^k, multiplicity)
  std::vector<std::pair<S, int>> coexact_side;  // (lambda_i^{k+1}, multiplicity)
  int harmonic_at_k = 0;
};

template <class S>
SeededComplex<S> make_seeded_complex(const DetourContext<S>& ctx, CounterRng& rng,
                                     const Tolerances& tol = {}) {
  if (!(ctx.J < S(0)))
    throw std::invalid_argument(
        "make_seeded_complex: needs J < 0 so the targets are positive");
  const int top = std::max(2, ctx.k + 2);

  // Every lambda_i^m in play, to keep the noise spectrum away from them.
  std::vector<double> avoid = {0.0};
  double lam_max = 1.0;
  for (int m = 0; m <= ctx.n / 2; ++m) {
    const DetourContext<S> c(ctx.n, m, ctx.J);
    for (const S& lam : lambda_scalars(c)) {
      const double v = scalar_traits<S>::to_double(lam);
      avoid.push_back(v);
      lam_max = std::max(lam_max, v);
    }
  }
  auto noise = [&]() {
    for (;;) {
      const double v = 0.3 + rng.uniform() * (lam_max + 1.7);
      bool clear = true;
      for (double a : avoid) clear = clear && std::fabs(v - a) > 0.15;
      if (clear) return std::sqrt(v);
    }
  };

  SeededComplex<S> out;
  std::vector<std::vector<S>> spectra(top);
  std::vector<int> extra(top + 1);
  // Targets for d∘delta at degree k live in the spectrum one level down.
  if (ctx.k >= 1) {
    for (const S& lam : lambda_scalars(ctx)) {
      const int mult = static_cast<int>(rng.uniform_int(1, 2));
      out.exact_side.push_back({lam, mult});
      for (int c = 0; c < mult; ++c)
        spectra[ctx.k - 1].push_back(
            S(std::sqrt(scalar_traits<S>::to_double(lam))));
    }
  }
  // Targets for delta∘d at degree k.
  for (int i = 1; i <= ctx.p() - 1; ++i) {
    const S lam = lambda_value(ctx.n, ctx.k + 1, i, ctx.J);
    const int mult = static_cast<int>(rng.uniform_int(1, 2));
    out.coexact_side.push_back({lam, mult});
    for (int c = 0; c < mult; ++c)
      spectra[ctx.k].push_back(S(std::sqrt(scalar_traits<S>::to_double(lam))));
  }
  for (int j = 0; j < top; ++j) {
    const long extra_noise = rng.uniform_int(1, 2);
    for (long c = 0; c < extra_noise; ++c) spectra[j].push_back(S(noise()));
  }
  for (int j = 0; j <= top; ++j) extra[j] = static_cast<int>(rng.uniform_int(1, 3));
  out.harmonic_at_k = extra[ctx.k];
  out.cx = build_prescribed<S>(top, spectra, extra, rng, tol);
  return out;
}

namespace checks {

inline nlohmann::ordered_json dims_json(const DecompositionReport& rep) {
  nlohmann::ordered_json d;
  d["space"] = rep.total_dim;
  d["summand_total"] = rep.summand_dim;
  d["span"] = rep.span_dim;
  nlohmann::ordered_json parts = nlohmann::ordered_json::array();
  for (const auto& s : rep.summands) {
    nlohmann::ordered_json e;
    e["kind"] = s.kind;
    if (!s.lambda.empty()) e["lambda"] = s.lambda;
    e["dim"] = s.dim;
    parts.push_back(std::move(e));
  }
  d["summands"] = std::move(parts);
  return d;
}

inline CheckResult from_report(std::string id, nlohmann::ordered_json params,
                               const DecompositionReport& rep, std::string ref) {
  CheckResult c;
  c.id = std::move(id);
  c.params = std::move(params);
  c.verdict = rep.verdict;
  c.dims = dims_json(rep);
  c.residuals["max"] = rep.max_residual;
  c.paper_ref = std::move(ref);
  c.note = rep.note;
  return c;
}

/// Symbolic battery for one (n, k): the recursion/closed-form identity for
/// p = 1..(n-2k)/2 + extra, the critical-weight collapse, the operator
/// identities in canonical form, and the polynomial intertwinings.
inline void symbolic_battery(RunReport& rep, int n, int k, int p_extra = 2,
                             int p_cap = 64) {
  const int pc = (n - 2 * k) / 2;
  for (int p = 1; p <= pc + p_extra; ++p) {
    CheckResult c;
    c.id = "formula";
    c.params["n"] = n;
    c.params["k"] = k;
    c.params["p"] = p;
    c.paper_ref = "formula";
    auto v = verify_formula(n, k, p, p_cap);
    c.verdict = v.equal ? Verdict::pass : Verdict::fail;
    if (!v.equal) c.note = "difference: " + v.difference.str();
    rep.add(std::move(c));
  }
  if (pc >= 1) {
    CheckResult c;
    c.id = "critical_collapse";
    c.params["n"] = n;
    c.params["k"] = k;
    c.paper_ref = "LLk";
    const SlotExpression it = iterate_LL(n, k, pc, p_cap);
    const OperatorPoly z_expect =
        Rational(2L * pc, k) *
        (OperatorPoly::delta_d() * factored_bracket(n, k + 1, pc - 1, OperatorPoly::delta_d()));
    const OperatorPoly x_expect =
        OperatorPoly::letter_delta() * factored_bracket(n, k, pc, OperatorPoly::d_delta());
    const bool ok = it.y.is_zero() && it.w.is_zero() && it.z == z_expect && it.x == x_expect;
    c.verdict = ok ? Verdict::pass : Verdict::fail;
    rep.add(std::move(c));
  }
  {
    CheckResult c;
    c.id = "operator_identities";
    c.params["n"] = n;
    c.params["k"] = k;
    c.paper_ref = "mainthm";
    bool ok = true;
    try {
      const OperatorFormulas f = extract_operator_formulas(n, k, p_cap);
      // G in both assembly orders.
      const OperatorPoly g_alt =
          factored_bracket(n, k, pc, OperatorPoly::delta_d()) * OperatorPoly::letter_delta();
      ok = ok && f.G == g_alt;
      ok = ok && (OperatorPoly::letter_d() * f.Q * OperatorPoly::letter_d()).is_zero();
      if (k + 1 <= n / 2) {
        const OperatorPoly q_up = factored_bracket(n, k + 1, pc - 1, OperatorPoly::d_delta());
        ok = ok && f.L == OperatorPoly::letter_delta() * q_up * OperatorPoly::letter_d();
      }
    } catch (const std::exception& e) {
      ok = false;
      c.note = e.what();
    }
    c.verdict = ok ? Verdict::pass : Verdict::fail;
    rep.add(std::move(c));
  }
  {
    CheckResult c;
    c.id = "intertwine";
    c.params["n"] = n;
    c.params["k"] = k;
    c.paper_ref = "nullG";
    bool ok = true;
    for (int m = 0; m <= pc + 1; ++m) {
      const OperatorPoly pk_dd = factored_bracket(n, k, m, OperatorPoly::d_delta());
      const OperatorPoly pk_sd = factored_bracket(n, k, m, OperatorPoly::delta_d());
      ok = ok && OperatorPoly::letter_delta() * pk_dd == pk_sd * OperatorPoly::letter_delta();
      ok = ok && pk_dd * OperatorPoly::letter_d() == OperatorPoly::letter_d() * pk_sd;
    }
    c.verdict = ok ? Verdict::pass : Verdict::fail;
    rep.add(std::move(c));
  }
}

/// Numeric battery over one non-Ricci-flat (ctx, complex) pair; the seeding
/// record, when supplied, pins the expected summand multiplicities.
template <class S>
void complex_battery(RunReport& rep, const DetourContext<S>& ctx,
                     const ChainComplex<S>& cx, nlohmann::ordered_json params,
                     const Tolerances& tol = {},
                     const SeededComplex<S>* seeding = nullptr) {
  auto seeded_dim_ok = [&](const DecompositionReport& r) {
    if (!seeding) return true;
    // Every seeded eigenvalue must appear as a summand of that exact size.
    for (const auto& [lam, mult] : seeding->exact_side)
      for (const auto& s : r.summands)
        if (s.kind == "Hbar" && s.lambda == scalar_traits<S>::to_string(lam) &&
            s.dim != mult)
          return false;
    for (const auto& [lam, mult] : seeding->coexact_side)
      for (const auto& s : r.summands)
        if (s.kind == "Htilde" && s.lambda == scalar_traits<S>::to_string(lam) &&
            s.dim != mult)
          return false;
    return true;
  };
  auto downgrade = [&](CheckResult c, const DecompositionReport& r) {
    if (!seeded_dim_ok(r)) {
      c.verdict = Verdict::fail;
      c.note += "seeded multiplicity mismatch; ";
    }
    rep.add(std::move(c));
  };

  if (2 * ctx.k < ctx.n) {
    auto r = null_L_decomposition(ctx, cx, tol);
    downgrade(from_report("null_L", params, r, "nullL"), r);
  }
  {
    auto r = harmonics_G(ctx, cx, tol);
    downgrade(from_report("harmonics_G", params, r, "decomp"), r);
  }
  {
    auto r = null_LL_decomposition(ctx, cx, tol);
    downgrade(from_report("null_LL", params, r, "nullLG"), r);
  }
  if (ctx.k >= 1) {
    auto r = cohomology_HL(ctx, cx, tol);
    rep.add(from_report("cohomology_HL", params, r, "Hkl"));
  }
  if (ctx.k >= 1) {
    auto r = sequence_checks(ctx, cx, tol);
    CheckResult c;
    c.id = "sequences";
    c.params = params;
    c.verdict = r.verdict;
    c.paper_ref = "crnrf";
    c.dims["betti_km1"] = r.betti_km1;
    c.dims["H_L_km1"] = r.dim_HL_km1;
    c.dims["H_G_k"] = r.dim_HG;
    c.dims["betti_k"] = r.betti_k;
    c.dims["N_LL_k"] = r.dim_NLL;
    c.dims["H_L_k"] = r.dim_HL_k;
    c.dims["rank_d_on_NL"] = r.rank_d_on_NL;
    c.residuals["max"] = r.max_residual;
    c.note = r.note;
    if (!r.seq1_exact) c.note += "first sequence not exact; ";
    if (!r.seq2_exact) c.note += "second sequence not exact; ";
    rep.add(std::move(c));
  }
  {
    auto r = null_Q(ctx, cx, tol);
    downgrade(from_report("null_Q", params, r, "nullQ"), r);
  }
  if (ctx.k >= 1) {
    auto r = b_space(ctx, cx, tol);
    downgrade(from_report("b_space", params, r, "Bk"), r);
  }
  {
    auto r = pairing_suite(ctx, cx, tol);
    CheckResult c;
    c.id = "pairings";
    c.params = params;
    c.verdict = r.verdict;
    c.paper_ref = "Qdes";
    c.residuals["descent"] = r.descent_residual;
    c.residuals["theta_mixed"] = r.theta_mixed_residual;
    c.residuals["theta_harmonic"] = r.theta_harmonic_residual;
    if (ctx.k == 0) c.residuals["k0"] = r.k0_residual;
    c.dims["predicted_constant"] =
        scalar_traits<S>::to_string(r.predicted_constant);
    c.note = r.note;
    rep.add(std::move(c));
  }
}

/// Positive-curvature battery (J > 0): all lambda eigenspace queries come
/// back empty, N(L_k) collapses to the closed forms and H_G^k to the
/// harmonics.
template <class S>
void positive_battery(RunReport& rep, const DetourContext<S>& ctx,
                      const ChainComplex<S>& cx, nlohmann::ordered_json params,
                      const Tolerances& tol = {}) {
  CheckResult c;
  c.id = "positive_vanishing";
  c.params = std::move(params);
  c.paper_ref = "pn";
  bool ok = true;
  bool conclusive = true;
  for (int deg = 0; deg <= cx.n; ++deg) {
    for (int m = 0; m <= ctx.n / 2; ++m) {
      const DetourContext<S> cm(ctx.n, m, ctx.J);
      for (const S& lam : lambda_scalars(cm)) {
        ok = ok && eigenspace<S>(cx, deg, OpTag::delta_d, lam, tol).dim() == 0;
        ok = ok && eigenspace<S>(cx, deg, OpTag::d_delta, lam, tol).dim() == 0;
      }
    }
  }
  if (2 * ctx.k < ctx.n) {
    auto kerL = kernel_with_info<S>(l_matrix(ctx, cx), tol);
    conclusive = conclusive && kerL.info.conclusive;
    const Mat<S> closed = closed_basis(cx, ctx.k, tol);
    ok = ok && kerL.basis.cols() == closed.cols();
    c.dims["null_L"] = static_cast<int>(kerL.basis.cols());
    c.dims["closed"] = static_cast<int>(closed.cols());
  }
  {
    auto hg = kernel_with_info<S>(
        vcat<S>(cx.d_at(ctx.k), g_matrix(ctx, cx)), tol);
    conclusive = conclusive && hg.info.conclusive;
    const Mat<S> harm = harmonic_basis(cx, ctx.k, tol);
    ok = ok && hg.basis.cols() == harm.cols();
    c.dims["H_G"] = static_cast<int>(hg.basis.cols());
    c.dims["harmonic"] = static_cast<int>(harm.cols());
  }
  c.verdict = !ok ? Verdict::fail
                  : (conclusive ? Verdict::pass : Verdict::inconclusive);
  rep.add(std::move(c));
}

/// Ricci-flat battery on the torus model: Betti numbers are binomial
/// coefficients, Q_k acts as the p-th power of d∘delta on closed forms, and
/// the quadratic form on harmonics is zero below the middle degree and the
/// plain Gram pairing there.
inline void ricci_flat_battery(RunReport& rep, int n, int M, CounterRng& rng,
                               const Tolerances& tol = {}, int action_vectors = 50) {
  const ChainComplex<double> cx = build_torus<double>(n, M, tol);
  {
    CheckResult c;
    c.id = "torus_betti";
    c.params["n"] = n;
    c.params["M"] = M;
    c.paper_ref = "crnrf";
    bool ok = true;
    nlohmann::ordered_json found = nlohmann::ordered_json::array();
    for (int k = 0; k <= n; ++k) {
      long binom = 1;
      for (int i = 0; i < k; ++i) binom = binom * (n - i) / (i + 1);
      const int b = betti(cx, k, tol);
      found.push_back(b);
      ok = ok && b == binom;
    }
    c.dims["betti"] = std::move(found);
    c.verdict = ok ? Verdict::pass : Verdict::fail;
    rep.add(std::move(c));
  }
  for (int k = 0; k <= n / 2; ++k) {
    const DetourContext<double> ctx(n, k, 0.0);
    CheckResult c;
    c.id = "torus_q_power";
    c.params["n"] = n;
    c.params["M"] = M;
    c.params["k"] = k;
    c.paper_ref = "crnrf";
    const Mat<double> closed = closed_basis(cx, k, tol);
    const Mat<double> dd = op_d_delta(cx, k);
    double worst = 0.0;
    for (int t = 0; t < action_vectors; ++t) {
      Vec<double> coef = Vec<double>::NullaryExpr(closed.cols(),
                                                  [&](Eigen::Index) { return rng.gaussian(); });
      Vec<double> w = closed * coef;
      Vec<double> via_q = apply_Q(ctx, cx, w, tol);
      Vec<double> direct = w;
      for (int i = 0; i < ctx.p(); ++i) direct = dd * direct;
      const double scale = std::max(1.0, w.norm());
      worst = std::max(worst, (via_q - direct).norm() / scale);
    }
    c.residuals["action"] = worst;
    c.verdict = worst <= 1e-10 ? Verdict::pass : Verdict::fail;
    rep.add(std::move(c));

    auto pr = pairing_suite(ctx, cx, tol);
    CheckResult p;
    p.id = "torus_pairings";
    p.params["n"] = n;
    p.params["M"] = M;
    p.params["k"] = k;
    p.paper_ref = "Rpairs";
    p.verdict = pr.verdict;
    p.residuals["theta_harmonic"] = pr.theta_harmonic_residual;
    p.dims["predicted_constant"] =
        scalar_traits<double>::to_string(pr.predicted_constant);
    rep.add(std::move(p));
  }
}

/// Cross-engine agreement: the canonical operator polynomials instantiated
/// on a complex match the direct matrix assemblies.
template <class S>
void cross_engine_battery(RunReport& rep, const DetourContext<S>& ctx,
                          const ChainComplex<S>& cx, nlohmann::ordered_json params,
                          const Tolerances& tol = {}) {
  CheckResult c;
  c.id = "cross_engine";
  c.params = std::move(params);
  c.paper_ref = "mainthm";
  const OperatorFormulas f = extract_operator_formulas(ctx.n, ctx.k);
  auto rel = [](const Mat<S>& a, const Mat<S>& b) {
    if constexpr (scalar_traits<S>::is_exact) {
      return Mat<S>(a - b).isZero(S(0)) ? 0.0 : 1.0;
    } else {
      const double na = std::max(1.0, a.norm());
      return (a - b).norm() / na;
    }
  };
  const double dq = rel(instantiate_poly<S>(f.Q, cx, ctx.k, ctx.J), q_matrix(ctx, cx));
  const double dg = rel(instantiate_poly<S>(f.G, cx, ctx.k, ctx.J), g_matrix(ctx, cx));
  const double dl = rel(instantiate_poly<S>(f.L, cx, ctx.k, ctx.J), l_matrix(ctx, cx));
  c.residuals["Q"] = dq;
  c.residuals["G"] = dg;
  c.residuals["L"] = dl;
  const double tau = scalar_traits<S>::is_exact ? 0.0 : 1e-10;
  c.verdict = (dq <= tau && dg <= tau && dl <= tau) ? Verdict::pass : Verdict::fail;
  rep.add(std::move(c));
}

}  // namespace checks

/// Batch configuration. Identical config and seed produce a byte-identical
/// report apart from the timestamp.
struct SuiteConfig {
  std::uint64_t seed = 1;
  std::vector<int> sweep_n = {4, 6, 8, 10, 12};
  int p_extra = 2;
  std::vector<std::pair<int, int>> numeric_cases = {
      {6, 1}, {6, 2}, {8, 1}, {8, 2}, {8, 3}};
  int trials = 3;
  int positive_trials = 3;
  int cross_trials = 2;
  int torus_n = 4;
  int torus_M = 1;
  Tolerances tol;
  std::string out_path;         // empty: stdout only
  std::string format = "json";  // or "text"
};

inline std::uint64_t derive_seed(std::uint64_t seed, long a, long b, long c) {
  CounterRng mix(seed ^ (0x9E3779B97F4A7C15ull * static_cast<std::uint64_t>(
                                                     a * 1000003 + b * 10007 + c + 1)));
  return mix.next_u64();
}

/// The full battery: symbolic sweep, seeded decompositions, positive and
/// Ricci-flat branches, and cross-engine agreement.
inline RunReport run_suite(const SuiteConfig& cfg) {
  RunReport rep;
  rep.config["seed"] = cfg.seed;
  rep.config["sweep_n"] = cfg.sweep_n;
  rep.config["p_extra"] = cfg.p_extra;
  rep.config["trials"] = cfg.trials;
  rep.config["torus"] = {{"n", cfg.torus_n}, {"M", cfg.torus_M}};
  rep.config["tolerances"] = {{"tau", cfg.tol.tau},
                              {"eps_rank", cfg.tol.eps_rank},
                              {"tau_rel", cfg.tol.tau_rel}};

  for (int n : cfg.sweep_n)
    for (int k = 1; k <= n / 2; ++k) {
      if (n == 4 && k != 1) continue;
      checks::symbolic_battery(rep, n, k, cfg.p_extra, cfg.tol.p_cap);
    }

  for (const auto& [n, k] : cfg.numeric_cases) {
    const double J = -0.5 * n;
    for (int trial = 0; trial < cfg.trials; ++trial) {
      CounterRng rng(derive_seed(cfg.seed, n, k, trial));
      const DetourContext<double> ctx(n, k, J);
      auto seeded = make_seeded_complex<double>(ctx, rng, cfg.tol);
      nlohmann::ordered_json params;
      params["n"] = n;
      params["k"] = k;
      params["J"] = J;
      params["trial"] = trial;
      checks::complex_battery<double>(rep, ctx, seeded.cx, params, cfg.tol, &seeded);
    }
  }

  for (const auto& [n, k] : cfg.numeric_cases) {
    const double J = 0.5 * n;
    for (int trial = 0; trial < cfg.positive_trials; ++trial) {
      CounterRng rng(derive_seed(cfg.seed, n, k, 1000 + trial));
      const DetourContext<double> ctx(n, k, J);
      std::vector<int> dims(k + 3);
      for (int j = 0; j < static_cast<int>(dims.size()); ++j)
        dims[j] = static_cast<int>(rng.uniform_int(4, 9));
      auto cx = build_random<double>(k + 2, dims, rng, false, cfg.tol);
      nlohmann::ordered_json params;
      params["n"] = n;
      params["k"] = k;
      params["J"] = J;
      params["trial"] = trial;
      checks::positive_battery<double>(rep, ctx, cx, params, cfg.tol);
    }
  }

  {
    CounterRng rng(derive_seed(cfg.seed, cfg.torus_n, cfg.torus_M, 2000));
    checks::ricci_flat_battery(rep, cfg.torus_n, cfg.torus_M, rng, cfg.tol);
  }

  for (const auto& [n, k] : cfg.numeric_cases) {
    for (int trial = 0; trial < cfg.cross_trials; ++trial) {
      CounterRng rng(derive_seed(cfg.seed, n, k, 3000 + trial));
      const DetourContext<double> ctx(n, k, -0.5 * n);
      std::vector<int> dims(k + 3);
      for (int j = 0; j < static_cast<int>(dims.size()); ++j)
        dims[j] = static_cast<int>(rng.uniform_int(4, 9));
      auto cx = build_random<double>(k + 2, dims, rng, false, cfg.tol);
      nlohmann::ordered_json params;
      params["n"] = n;
      params["k"] = k;
      params["trial"] = trial;
      checks::cross_engine_battery<double>(rep, ctx, cx, params, cfg.tol);
    }
  }
  return rep;
}

/// Registry of check statements for the `explain` command: the mathematical
/// statement each check certifies and the formula it uses.
struct CheckDoc {
  std::string title;
  std::string formula;
};

inline const std::map<std::string, CheckDoc>& explain_registry() {
  static const std::map<std::string, CheckDoc> reg = {
      {"lambda",
       {"The eigenvalue family entering every factored detour operator.",
        "lambda_i^k = -2i(n-2k-i+1) J / n,  i = 1..(n-2k)/2"}},
      {"distinct",
       {"For J != 0 the lambda_i^k are mutually distinct, and negative when "
        "J > 0; this makes the factored polynomials decomposable.",
        "2i(n-2k-i+1) = 2j(n-2k-j+1) forces i = j for i,j <= (n-2k)/2"}},
      {"fundthm",
       {"Null space of a factored operator polynomial with distinct roots "
        "splits canonically into eigenspace summands via explicit projectors.",
        "Proj_i = y_i prod_{j != i}(E - lambda_j), y_i = prod_{j != i} "
        "1/(lambda_i - lambda_j)"}},
      {"formula",
       {"The p-step Laplacian-power recursion applied to the splitting "
        "operator equals its closed form, slot by slot, as exact-rational "
        "operator polynomials.",
        "Y: -p(n-2k-2p) delta P^{p-1}_k[dD]; Z: (1/k)[(n-2k-2p) dD P^{p-1}_k[dD]"
        " + (n-2k) Dd P^{p-1}_{k+1}[Dd]]; X: delta(dD + p(n-2k+2)J/n) P^{p-1}_k[dD]"}},
      {"LLk",
       {"At the critical weight p = (n-2k)/2 the Y slot vanishes and the "
        "operator reduces to the two-slot pair (Z, X).",
        "Z = (2p/k) Dd P^{p-1}_{k+1}[Dd], X = delta P^p_k[dD]"}},
      {"mainthm",
       {"Factored Einstein-scale formulas for the gauge companion and the "
        "Q-operator on closed forms; the middle-degree members are delta and "
        "the identity.",
        "G_k = delta prod_{i=1}^{p}(dD + 2i(n-2k-i+1)J/n), Q_k = prod(...)"}},
      {"QCC", {"Q_k maps closed forms to closed forms.", "d Q_k w = 0 for dw = 0"}},
      {"L_k",
       {"Factored formula for the long detour operator; zero at the middle "
        "degree.",
        "L_k = delta prod_{i=1}^{(n-2k-2)/2}(dD + 2i(n-2k-i-1)J/n) d = "
        "delta Q_{k+1} d"}},
      {"nullL",
       {"Null space of the detour operator as closed forms plus coexact "
        "eigenspaces.",
        "N(L_k) = H~(0) (+) sum_{i=1}^{p-1} H~(lambda_i^{k+1})"}},
      {"nullG",
       {"Null space of the gauge companion: coclosed forms plus exact-side "
        "eigenspaces; uses the intertwining delta P[dD] = P[Dd] delta.",
        "N(G_k) = N(delta) (+) sum_{i=1}^{p} Hbar(lambda_i^k)"}},
      {"decomp",
       {"Conformal harmonics split into harmonic forms plus exact-side "
        "eigenspaces.",
        "H_G^k = H_sigma^k (+) sum_{i=1}^{p} Hbar(lambda_i^k)"}},
      {"nullLG",
       {"Null space of the two-slot operator; N(delta) at the middle degree.",
        "N(LL_k) = (N(delta) ∩ N(Dd)) (+) sum H~(lambda_i^{k+1}) (+) sum "
        "Hbar(lambda_i^k)"}},
      {"Hkl",
       {"Detour cohomology as eigenspace summands plus de Rham cohomology.",
        "H^{k-1}_L = sum_i H~^{k-1}(lambda_i^k) (+) H~^{k-1}(0)/R(d)"}},
      {"coco",
       {"Four-term sequence tying detour cohomology, conformal harmonics and "
        "de Rham cohomology; exact, with the final map onto (k-regularity) "
        "in the compact Riemannian regime.",
        "0 -> H^{k-1} -> H^{k-1}_L -d-> H_G^k -> H^k -> 0"}},
      {"coco2",
       {"Companion sequence through the null space of the two-slot operator.",
        "0 -> H^{k-1} -> H^{k-1}_L -d-> N(LL_k) -> H^k_L -> 0"}},
      {"bi",
       {"d and delta are inverse bijections between the nonzero-eigenvalue "
        "coexact and exact eigenspaces of neighbouring degrees.",
        "d: H~^{k-1}(lambda) <-> Hbar^k(lambda): delta, lambda != 0"}},
      {"between",
       {"The middle summand of N(LL_k) sits between the harmonics and the "
        "Laplacian kernel; equalities in the positive-definite model.",
        "N(delta) ∩ N(d) ⊆ N(delta) ∩ N(Dd) ⊆ N(dD + Dd)"}},
      {"nullQ",
       {"Null space of Q_k on closed forms: the exact-side eigenspaces, all "
        "inside the range of d.",
        "N(Q_k|C^k) = sum_{i=1}^{p} Hbar(lambda_i^k) ⊆ R(d)"}},
      {"Qres",
       {"Q_k vanishes on each exact-side eigenspace and is a constant times "
        "the identity on harmonics.",
        "Q_k|Hbar(lambda_i^k) = 0, Q_k|harmonics = s^k J^{(n-2k)/2} id"}},
      {"sk",
       {"The harmonic constant of the Q-operator; equals 1 at the middle "
        "degree.",
        "s^k = prod_{i=1}^{(n-2k)/2} 2i(n-2k-i+1)/n"}},
      {"Bk",
       {"The space of exact forms whose Q-image is coexact: all exact-side "
        "eigenspaces when J != 0, zero when J = 0.",
        "B^k = {df : Q_k df in R(delta)}"}},
      {"pn",
       {"Positive scalar curvature leaves no room for the lambda "
        "eigenspaces: every query at lambda_i^k is empty.",
        "J > 0 => H~(lambda_i^k) = Hbar(lambda_i^k) = 0 (operators PSD, "
        "lambda negative)"}},
      {"crnrf",
       {"Compact Riemannian regime: exact sequences with surjective final "
        "maps, N(L_k) = closed forms (+) coexact eigenspaces, and the "
        "Ricci-flat branch Q_k = (dD)^p.",
        "see coco/coco2/nullL/decomp/nullLG with H~(0) = C^k"}},
      {"simpl",
       {"The Q-pairing of N(L_k) against closed forms kills the coexact "
        "eigenspace part, so it descends to closed x closed.",
        "<u_1, Q_k w> = <u', d Q_k w> = 0"}},
      {"Qdes",
       {"The quadratic form on conformal harmonics descends to cohomology "
        "and is s^k J^p times the Gram pairing on harmonics.",
        "Theta(u, w) = s^k J^{(n-2k)/2} <u, w>"}},
      {"Rpairs",
       {"The descended quadratic form on de Rham cohomology; zero in the "
        "Ricci-flat case below the middle degree and the plain pairing "
        "there.",
        "H^k x H^k -> R via Theta"}},
      {"k0",
       {"Degree zero: pairing a null vector of the dimension-order operator "
        "against Q of a harmonic recovers the harmonic component.",
        "<f, Q_0 1> = c <1, Q_0 1>, c the harmonic component of f"}},
      {"pair",
       {"The global pairing underlying everything here, modelled by the Gram "
        "inner product of the complex.",
        "<phi, psi> = phi^T G psi"}},
  };
  return reg;
}

inline std::string explain(const std::string& id) {
  const auto& reg = explain_registry();
  const auto it = reg.find(id);
  if (it == reg.end())
    throw std::invalid_argument("explain: unknown check id '" + id + "'");
  return it->second.title + "\n  " + it->second.formula + "\n";
}

}  // namespace detourlab
