#include <catch2/catch_amalgamated.hpp>

#include <detourlab/decompositions.hpp>
#include <detourlab/generators.hpp>
#include <detourlab/suite.hpp>

using namespace detourlab;

namespace {

int summand_dim(const DecompositionReport& rep, const std::string& kind,
                const std::string& lambda) {
  for (const auto& s : rep.summands)
    if (s.kind == kind && s.lambda == lambda) return s.dim;
  return -1;
}

}  // namespace

TEST_CASE("null space of L on a seeded complex") {
  DetourContext<double> ctx(6, 1, -3.0);
  CounterRng rng(101);
  auto seeded = make_seeded_complex<double>(ctx, rng);
  validate_complex(seeded.cx);

  auto rep = null_L_decomposition(ctx, seeded.cx);
  CHECK(rep.verdict == Verdict::pass);
  CHECK(rep.summand_dim == rep.total_dim);
  CHECK(rep.span_dim == rep.total_dim);
  CHECK(rep.max_residual <= 1e-8);
  // The seeded coexact multiplicity shows up exactly.
  for (const auto& [lam, mult] : seeded.coexact_side)
    CHECK(summand_dim(rep, "Htilde", scalar_traits<double>::to_string(lam)) == mult);
}

TEST_CASE("null space of L with zero differentials is everything") {
  ChainComplex<double> cx;
  cx.n = 2;
  cx.dims = {2, 4, 3};
  cx.d = {Mat<double>::Zero(4, 2), Mat<double>::Zero(3, 4)};
  DetourContext<double> ctx(6, 1, -3.0);
  auto rep = null_L_decomposition(ctx, cx);
  CHECK(rep.verdict == Verdict::pass);
  CHECK(rep.total_dim == 4);
  CHECK(summand_dim(rep, "Htilde", "0") == 4);
}

TEST_CASE("conformal harmonics on a seeded complex") {
  DetourContext<double> ctx(6, 1, -3.0);
  CounterRng rng(103);
  auto seeded = make_seeded_complex<double>(ctx, rng);
  auto rep = harmonics_G(ctx, seeded.cx);
  CHECK(rep.verdict == Verdict::pass);
  int expected = seeded.harmonic_at_k;
  for (const auto& [lam, mult] : seeded.exact_side) {
    CHECK(summand_dim(rep, "Hbar", scalar_traits<double>::to_string(lam)) == mult);
    expected += mult;
  }
  CHECK(rep.total_dim == expected);
}

TEST_CASE("conformal harmonics with zero differentials is all of degree k") {
  ChainComplex<double> cx;
  cx.n = 2;
  cx.dims = {2, 4, 3};
  cx.d = {Mat<double>::Zero(4, 2), Mat<double>::Zero(3, 4)};
  DetourContext<double> ctx(6, 1, -3.0);
  auto rep = harmonics_G(ctx, cx);
  CHECK(rep.verdict == Verdict::pass);
  CHECK(rep.total_dim == 4);
}

TEST_CASE("null space of the two-slot operator") {
  DetourContext<double> ctx(8, 2, -4.0);
  CounterRng rng(107);
  auto seeded = make_seeded_complex<double>(ctx, rng);
  auto rep = null_LL_decomposition(ctx, seeded.cx);
  CHECK(rep.verdict == Verdict::pass);
  CHECK(rep.note.empty());

  // Middle degree: N(LL) = N(delta).
  DetourContext<double> mid(8, 4, -4.0);
  CounterRng rng2(109);
  auto seeded2 = make_seeded_complex<double>(mid, rng2);
  auto rep2 = null_LL_decomposition(mid, seeded2.cx);
  CHECK(rep2.verdict == Verdict::pass);
  auto ndelta = kernel_basis<double>(delta_at(seeded2.cx, 4));
  CHECK(rep2.total_dim == ndelta.cols());

  // k = 0 reduces to the null space of L_0.
  DetourContext<double> zero(8, 0, -4.0);
  CounterRng rng3(113);
  auto seeded3 = make_seeded_complex<double>(zero, rng3);
  auto rep3 = null_LL_decomposition(zero, seeded3.cx);
  CHECK(rep3.verdict == Verdict::pass);
  auto repL = null_L_decomposition(zero, seeded3.cx);
  CHECK(rep3.total_dim == repL.total_dim);
}

TEST_CASE("detour cohomology bookkeeping") {
  DetourContext<double> ctx(6, 1, -3.0);
  CounterRng rng(127);
  auto seeded = make_seeded_complex<double>(ctx, rng);
  auto rep = cohomology_HL(ctx, seeded.cx);
  CHECK(rep.verdict == Verdict::pass);
  CHECK(rep.total_dim == rep.summand_dim);

  // Zero differentials: H_L^{k-1} is the whole degree.
  ChainComplex<double> cx;
  cx.n = 2;
  cx.dims = {3, 4, 2};
  cx.d = {Mat<double>::Zero(4, 3), Mat<double>::Zero(2, 4)};
  auto rep2 = cohomology_HL(ctx, cx);
  CHECK(rep2.verdict == Verdict::pass);
  CHECK(rep2.total_dim == 3);
}

TEST_CASE("exact sequences with k-regularity on seeded complexes") {
  for (auto [n, k] : {std::pair{6, 1}, {6, 2}, {8, 2}}) {
    DetourContext<double> ctx(n, k, -0.5 * n);
    CounterRng rng(131 + n * 10 + k);
    auto seeded = make_seeded_complex<double>(ctx, rng);
    auto rep = sequence_checks(ctx, seeded.cx);
    INFO("n=" << n << " k=" << k);
    CHECK(rep.verdict == Verdict::pass);
    CHECK(rep.seq1_exact);
    CHECK(rep.seq2_exact);
    // Alternating-sum identity, forced by exactness with zero ends.
    CHECK(rep.betti_km1 - rep.dim_HL_km1 + rep.dim_HG - rep.betti_k == 0);
    for (const auto& b : rep.bijections) {
      CHECK(b.dim_source == b.dim_target);
      CHECK(b.injective);
    }
  }
}

TEST_CASE("null space of Q on closed forms") {
  DetourContext<double> ctx(6, 1, -3.0);
  CounterRng rng(137);
  auto seeded = make_seeded_complex<double>(ctx, rng);
  auto rep = null_Q(ctx, seeded.cx);
  CHECK(rep.verdict == Verdict::pass);
  int expect = 0;
  for (const auto& [lam, mult] : seeded.exact_side) expect += mult;
  CHECK(rep.total_dim == expect);

  // Middle degree: Q is the identity, the null space is trivial.
  DetourContext<double> mid(6, 3, -3.0);
  CounterRng rng2(139);
  auto seeded2 = make_seeded_complex<double>(mid, rng2);
  auto rep2 = null_Q(mid, seeded2.cx);
  CHECK(rep2.verdict == Verdict::pass);
  CHECK(rep2.total_dim == 0);
}

TEST_CASE("the B space") {
  DetourContext<double> ctx(6, 1, -3.0);
  CounterRng rng(149);
  auto seeded = make_seeded_complex<double>(ctx, rng);
  auto rep = b_space(ctx, seeded.cx);
  CHECK(rep.verdict == Verdict::pass);
  int expect = 0;
  for (const auto& [lam, mult] : seeded.exact_side) expect += mult;
  CHECK(rep.total_dim == expect);

  // Ricci-flat: B = 0 on the torus.
  DetourContext<double> flat(4, 1, 0.0);
  auto torus = build_torus<double>(4, 1);
  auto rep2 = b_space(flat, torus);
  CHECK(rep2.verdict == Verdict::pass);
  CHECK(rep2.total_dim == 0);

  // Zero differentials: no exact forms at all.
  ChainComplex<double> cx;
  cx.n = 2;
  cx.dims = {2, 3, 2};
  cx.d = {Mat<double>::Zero(3, 2), Mat<double>::Zero(2, 3)};
  auto rep3 = b_space(ctx, cx);
  CHECK(rep3.verdict == Verdict::pass);
  CHECK(rep3.total_dim == 0);
}

TEST_CASE("positive curvature collapses everything") {
  for (int trial = 0; trial < 3; ++trial) {
    CounterRng rng(151 + trial);
    auto cx = build_random<double>(3, {5, 8, 7, 4}, rng);
    DetourContext<double> ctx(6, 1, 3.0);
    RunReport rep;
    checks::positive_battery<double>(rep, ctx, cx, {{"trial", trial}});
    REQUIRE(rep.checks.size() == 1);
    CHECK(rep.checks[0].verdict == Verdict::pass);
  }
}

TEST_CASE("J = 0 is routed away from the factored decompositions") {
  auto torus = build_torus<double>(2, 1);
  DetourContext<double> ctx(4, 1, 0.0);
  CHECK_THROWS_AS(null_L_decomposition(ctx, torus), std::invalid_argument);
  CHECK_THROWS_AS(harmonics_G(ctx, torus), std::invalid_argument);
  CHECK_THROWS_AS(null_LL_decomposition(ctx, torus), std::invalid_argument);
  CHECK_THROWS_AS(sequence_checks(ctx, torus), std::invalid_argument);
}

TEST_CASE("every decomposition identity holds literally over the rationals") {
  DetourContext<Rational> ctx(6, 1, Rational(-3));
  CounterRng rng(157);
  // Eigenvalue targets: d delta at degree 1 wants {4, 6}; delta d wants {2}.
  std::vector<std::vector<Rational>> targets = {
      {Rational(4), Rational(6)}, {Rational(2)}, {}};
  std::vector<int> extra = {1, 2, 2, 1};
  auto cx = build_prescribed_exact(3, targets, extra, rng);
  validate_complex(cx);

  CHECK(null_L_decomposition(ctx, cx).verdict == Verdict::pass);
  CHECK(harmonics_G(ctx, cx).verdict == Verdict::pass);
  CHECK(null_LL_decomposition(ctx, cx).verdict == Verdict::pass);
  CHECK(cohomology_HL(ctx, cx).verdict == Verdict::pass);
  auto seq = sequence_checks(ctx, cx);
  CHECK(seq.verdict == Verdict::pass);
  CHECK(seq.max_residual == 0.0);
  CHECK(null_Q(ctx, cx).verdict == Verdict::pass);
  CHECK(b_space(ctx, cx).verdict == Verdict::pass);
}

TEST_CASE("ambiguous rank decisions are flagged, not passed") {
  Tolerances tol;
  // Singular values 1 and 3*cut with cut = eps * 2 * 1: inside the 10x gap.
  Mat<double> a = Mat<double>::Zero(2, 2);
  a(0, 0) = 1.0;
  a(1, 1) = 3.0 * tol.eps_rank * 2.0;
  auto info = rank_info<double>(a, tol);
  CHECK(info.rank == 2);
  CHECK_FALSE(info.conclusive);

  Mat<double> clear = Mat<double>::Zero(2, 2);
  clear(0, 0) = 1.0;
  clear(1, 1) = 0.5;
  CHECK(rank_info<double>(clear, tol).conclusive);
}
