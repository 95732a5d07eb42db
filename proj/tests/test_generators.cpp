#include <catch2/catch_amalgamated.hpp>

#include <map>

#include <detourlab/generators.hpp>

using namespace detourlab;

TEST_CASE("random orthogonal frames") {
  CounterRng rng(1);
  Mat<double> q = random_orthogonal<double>(7, rng);
  CHECK((q.transpose() * q - Mat<double>::Identity(7, 7)).norm() <= 1e-13);

  Mat<Rational> qr = random_orthogonal<Rational>(5, rng);
  CHECK(Mat<Rational>(Mat<Rational>(qr.transpose()) * qr -
                      Mat<Rational>::Identity(5, 5))
            .isZero(Rational(0)));
}

TEST_CASE("prescribed spectrum round-trips through an eigensolver") {
  CounterRng rng(2);
  std::vector<std::vector<double>> spectra = {{2.0, 2.0, 0.7}, {1.3}, {}};
  std::vector<int> extra = {1, 2, 1, 2};
  auto cx = build_prescribed<double>(3, spectra, extra, rng);
  validate_complex(cx);
  REQUIRE(cx.dims == std::vector<int>{4, 6, 2, 2});

  // delta d at degree 0 must have nonzero spectrum {4, 4, 0.49} exactly.
  Eigen::SelfAdjointEigenSolver<Mat<double>> es(op_delta_d(cx, 0));
  std::vector<double> nz;
  for (int i = 0; i < es.eigenvalues().size(); ++i)
    if (es.eigenvalues()(i) > 1e-10) nz.push_back(es.eigenvalues()(i));
  REQUIRE(nz.size() == 3);
  CHECK(nz[0] == Catch::Approx(0.49));
  CHECK(nz[1] == Catch::Approx(4.0));
  CHECK(nz[2] == Catch::Approx(4.0));

  // d∘delta one degree up carries the same nonzero spectrum.
  Eigen::SelfAdjointEigenSolver<Mat<double>> up(op_d_delta(cx, 1));
  std::vector<double> nz_up;
  for (int i = 0; i < up.eigenvalues().size(); ++i)
    if (up.eigenvalues()(i) > 1e-10) nz_up.push_back(up.eigenvalues()(i));
  REQUIRE(nz_up.size() == 3);
  CHECK(nz_up[2] == Catch::Approx(4.0));

  // Harmonic padding is exactly the requested extra dimension.
  CHECK(hodge_decompose(cx, 1).harmonic.cols() == 2);
}

TEST_CASE("prescribed d∘d vanishes to near machine precision") {
  CounterRng rng(3);
  std::vector<std::vector<double>> spectra = {{1.0, 2.5}, {0.3, 0.9}, {1.1}};
  std::vector<int> extra = {1, 1, 1, 1};
  auto cx = build_prescribed<double>(3, spectra, extra, rng);
  for (int j = 0; j + 1 < cx.n; ++j) {
    const double scale = cx.d_at(j + 1).norm() * cx.d_at(j).norm();
    CHECK((cx.d_at(j + 1) * cx.d_at(j)).norm() <= 1e-13 * std::max(1.0, scale));
  }
}

TEST_CASE("prescribed generator input validation") {
  CounterRng rng(4);
  std::vector<std::vector<double>> spectra = {{-1.0}};
  std::vector<int> extra = {1, 1};
  CHECK_THROWS_AS(build_prescribed<double>(1, spectra, extra, rng),
                  std::invalid_argument);
  Tolerances tol;
  tol.dim_cap = 3;
  std::vector<std::vector<double>> big = {{1.0, 1.0, 1.0, 1.0}};
  CHECK_THROWS_AS(build_prescribed<double>(1, big, extra, rng, tol),
                  std::invalid_argument);
}

TEST_CASE("exact spectral blocks") {
  auto b4 = exact_spectral_block(Rational(4));
  REQUIRE(b4.rows() == 1);
  CHECK(b4(0, 0) == Rational(2));

  auto b6 = exact_spectral_block(Rational(6));
  REQUIRE(b6.rows() == 4);
  CHECK(Mat<Rational>(Mat<Rational>(b6.transpose()) * b6 -
                      Rational(6) * Mat<Rational>::Identity(4, 4))
            .isZero(Rational(0)));

  auto bq = exact_spectral_block(Rational(3, 2));
  Mat<Rational> btb = Mat<Rational>(bq.transpose()) * bq;
  CHECK(btb(0, 0) == Rational(3, 2));

  CHECK_THROWS_AS(exact_spectral_block(Rational(-1)), std::invalid_argument);
}

TEST_CASE("exact prescribed complex has the requested exact kernels") {
  CounterRng rng(6);
  std::vector<std::vector<Rational>> targets = {{Rational(4), Rational(6)}, {}, {}};
  std::vector<int> extra = {0, 1, 1, 0};
  auto cx = build_prescribed_exact(3, targets, extra, rng);
  validate_complex(cx);
  // delta d at degree 0: eigenvalue 4 with multiplicity 1, 6 with 4.
  auto e4 = eigenspace<Rational>(cx, 0, OpTag::delta_d, Rational(4));
  auto e6 = eigenspace<Rational>(cx, 0, OpTag::delta_d, Rational(6));
  CHECK(e4.dim() == 1);
  CHECK(e6.dim() == 4);
  auto up4 = eigenspace<Rational>(cx, 1, OpTag::d_delta, Rational(4));
  CHECK(up4.dim() == 1);
}

TEST_CASE("random complex differentials compose to zero") {
  CounterRng rng(7);
  auto cx = build_random<double>(4, {5, 9, 8, 6, 4}, rng);
  validate_complex(cx);
  auto cxg = build_random<double>(2, {4, 6, 5}, rng, true);
  validate_complex(cxg);
}

TEST_CASE("torus truncation dimensions and harmonics") {
  auto cx = build_torus<double>(4, 1);
  validate_complex(cx);
  const std::vector<int> expect = {81, 324, 486, 324, 81};
  CHECK(cx.dims == expect);
  for (int k = 0; k <= 4; ++k) {
    long binom = 1;
    for (int i = 0; i < k; ++i) binom = binom * (4 - i) / (i + 1);
    CHECK(betti(cx, k) == binom);
    CHECK(hodge_decompose(cx, k).harmonic.cols() == binom);
  }
}

TEST_CASE("torus Laplacian spectrum is the mode frequency square sum") {
  // At degree k every normalised trig function of mode m contributes C(n, k)
  // eigenvalue copies of |m|^2; count them against a direct assembly.
  auto cx = build_torus<double>(2, 1);  // dims: 9, 18, 9
  for (int k = 0; k <= 2; ++k) {
    Eigen::SelfAdjointEigenSolver<Mat<double>> es(op_laplacian(cx, k));
    std::map<int, int> counts;
    for (int i = 0; i < es.eigenvalues().size(); ++i)
      counts[static_cast<int>(std::llround(es.eigenvalues()(i)))]++;
    const long binom = k == 1 ? 2 : 1;
    // |m|^2 = 0 once, 1 on four functions, 2 on four functions.
    CHECK(counts[0] == 1 * binom);
    CHECK(counts[1] == 4 * binom);
    CHECK(counts[2] == 4 * binom);
  }
}

TEST_CASE("torus zero-frequency sector is harmonic") {
  auto cx = build_torus<double>(2, 1);
  // The constant-mode block sits in the first C(n,k) columns at each degree;
  // d and delta both kill it.
  for (int k = 0; k <= 2; ++k) {
    const int nsub = k == 1 ? 2 : 1;
    Mat<double> consts = Mat<double>::Zero(cx.dims[k], nsub);
    for (int j = 0; j < nsub; ++j) consts(j, j) = 1.0;
    CHECK((cx.d_at(k) * consts).norm() == 0.0);
    CHECK((delta_at(cx, k) * consts).norm() == 0.0);
  }
}

TEST_CASE("torus resource guard") {
  Tolerances tol;
  tol.dim_cap = 100;
  CHECK_THROWS_AS(build_torus<double>(4, 1, tol), std::invalid_argument);
}

TEST_CASE("generation is deterministic in the seed") {
  CounterRng a(99), b(99);
  std::vector<std::vector<double>> spectra = {{1.0, 0.5}, {2.0}};
  std::vector<int> extra = {1, 1, 1};
  auto cx1 = build_prescribed<double>(2, spectra, extra, a);
  auto cx2 = build_prescribed<double>(2, spectra, extra, b);
  for (int j = 0; j < 2; ++j) CHECK((cx1.d[j] - cx2.d[j]).norm() == 0.0);
}
