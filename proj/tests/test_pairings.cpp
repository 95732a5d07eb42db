#include <catch2/catch_amalgamated.hpp>

#include <detourlab/generators.hpp>
#include <detourlab/pairings.hpp>
#include <detourlab/suite.hpp>

using namespace detourlab;

TEST_CASE("quadratic form on harmonics carries the exact constant") {
  // n = 6, k = 1, J = -3: s^1 J^2 = (8/3) * 9 = 24.
  DetourContext<double> ctx(6, 1, -3.0);
  CounterRng rng(211);
  auto seeded = make_seeded_complex<double>(ctx, rng);
  auto rep = pairing_suite(ctx, seeded.cx);
  CHECK(rep.verdict == Verdict::pass);
  CHECK(rep.predicted_constant == Catch::Approx(24.0));
  CHECK(rep.theta_harmonic_residual <= 1e-8);

  // Verify the constant against explicit vectors too.
  Mat<double> h = harmonic_basis(seeded.cx, 1);
  REQUIRE(h.cols() >= 1);
  Mat<double> q = q_matrix(ctx, seeded.cx);
  const double theta = h.col(0).dot(q * h.col(0));
  CHECK(theta == Catch::Approx(24.0 * h.col(0).dot(h.col(0))));
}

TEST_CASE("pairing against an exact-side eigenvector vanishes") {
  DetourContext<double> ctx(6, 1, -3.0);
  CounterRng rng(223);
  auto seeded = make_seeded_complex<double>(ctx, rng);
  auto sub = eigenspace<double>(seeded.cx, 1, OpTag::d_delta, 4.0);
  REQUIRE(sub.dim() > 0);
  Mat<double> q = q_matrix(ctx, seeded.cx);
  // Theta(u, v) = <u, Q v> dies when either argument is the eigenvector.
  Mat<double> hg = kernel_basis<double>(
      vcat<double>(seeded.cx.d_at(1), g_matrix(ctx, seeded.cx)));
  Mat<double> left = sub.basis.transpose() * q * hg;
  Mat<double> right = hg.transpose() * q * sub.basis;
  CHECK(left.cwiseAbs().maxCoeff() <= 1e-8);
  CHECK(right.cwiseAbs().maxCoeff() <= 1e-8);
  CHECK(pairing_suite(ctx, seeded.cx).theta_mixed_residual <= 1e-8);
}

TEST_CASE("descent: coexact eigenspace components pair to zero") {
  for (auto [n, k] : {std::pair{6, 1}, {8, 2}}) {
    DetourContext<double> ctx(n, k, -0.5 * n);
    CounterRng rng(227 + n + k);
    auto seeded = make_seeded_complex<double>(ctx, rng);
    auto rep = pairing_suite(ctx, seeded.cx);
    INFO("n=" << n << " k=" << k);
    CHECK(rep.descent_residual <= 1e-8);
    CHECK(rep.verdict == Verdict::pass);
  }
}

TEST_CASE("Ricci-flat branch on the torus") {
  auto torus = build_torus<double>(4, 1);
  // Below the middle degree the quadratic form is zero on harmonics.
  for (int k : {0, 1}) {
    DetourContext<double> ctx(4, k, 0.0);
    auto rep = pairing_suite(ctx, torus);
    INFO("k=" << k);
    CHECK(rep.predicted_constant == 0.0);
    CHECK(rep.theta_harmonic_residual <= 1e-10);
    CHECK(rep.verdict == Verdict::pass);
  }
  // At the middle degree it is the plain Gram pairing.
  DetourContext<double> mid(4, 2, 0.0);
  auto rep = pairing_suite(mid, torus);
  CHECK(rep.predicted_constant == 1.0);
  CHECK(rep.theta_harmonic_residual <= 1e-10);
  Mat<double> h = harmonic_basis(torus, 2);
  Mat<double> q = q_matrix(mid, torus);
  CHECK((h.transpose() * q * h - h.transpose() * h).norm() <= 1e-12);
}

TEST_CASE("degree-zero pairing recovers the harmonic component") {
  DetourContext<double> ctx(6, 0, -3.0);
  CounterRng rng(229);
  auto seeded = make_seeded_complex<double>(ctx, rng);
  auto rep = pairing_suite(ctx, seeded.cx);
  CHECK(rep.k0_residual <= 1e-8);
  CHECK(rep.verdict == Verdict::pass);

  // Explicit: f in N(L_0), h harmonic, <f, Q h> = c <h, Q h>.
  Mat<double> kerL = kernel_basis<double>(l_matrix(ctx, seeded.cx));
  Mat<double> h = harmonic_basis(seeded.cx, 0);
  REQUIRE(kerL.cols() > 0);
  REQUIRE(h.cols() > 0);
  Mat<double> q = q_matrix(ctx, seeded.cx);
  Vec<double> one = h.col(0);
  Vec<double> f = kerL.col(0);
  const double c = f.dot(one) / one.dot(one);
  CHECK(f.dot(q * one) == Catch::Approx(c * one.dot(q * one)).margin(1e-8));
}

TEST_CASE("pairings are exact over the rationals") {
  DetourContext<Rational> ctx(6, 1, Rational(-3));
  CounterRng rng(233);
  std::vector<std::vector<Rational>> targets = {
      {Rational(4), Rational(6)}, {Rational(2)}, {}};
  std::vector<int> extra = {1, 2, 1, 1};
  auto cx = build_prescribed_exact(3, targets, extra, rng);
  auto rep = pairing_suite(ctx, cx);
  CHECK(rep.verdict == Verdict::pass);
  CHECK(rep.predicted_constant == Rational(24));
  CHECK(rep.descent_residual == 0.0);
  CHECK(rep.theta_harmonic_residual == 0.0);
}
