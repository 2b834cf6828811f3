#include "doctest.h"
#include "moloconv/dynmat.hpp"
#include "support.hpp"

using namespace moloconv;
using cd = std::complex<double>;

TEST_CASE("decoupled modes give a diagonal coefficient matrix") {
  ModeParams<double> p{1.5, 0.0, 0.0, 30.0, 29.0, 2.0, 0.5, 0.1};
  const auto sys = build_full(p);
  Matrix6c<double> expected = Matrix6c<double>::Zero();
  const cd i(0, 1);
  expected.diagonal() << i * 1.5 + 2.0, i * 29.0 + 0.5, i * 30.0 + 0.1, -i * 1.5 + 2.0, -i * 29.0 + 0.5,
      -i * 30.0 + 0.1;
  CHECK(sys.m == expected);
}

TEST_CASE("coefficient matrix entries at the reference point") {
  const auto p = testing::fig4_mode(true, 3.0);
  const auto sys = build_full(p);
  const cd i(0, 1);
  const double w = kTwoPi;
  CHECK(testing::rel_err(sys.m(0, 2), i * 3.0 * w) < 1e-15);
  CHECK(testing::rel_err(sys.m(2, 0), i * 3.0 * w) < 1e-15);
  CHECK(sys.m(0, 0) == i * 30.0 * w + 30.0 * w);
  CHECK(sys.m(0, 1) == 0.0);
  CHECK(sys.m(1, 0) == 0.0);
  CHECK(testing::rel_err(sys.m(1, 2), i * std::sqrt(1e7) * 1e-4 * w) < 1e-14);
  // Q: only (a,B) and (c,B) couplings.
  CHECK(sys.m(0, 5) == sys.m(0, 2));
  CHECK(sys.m(2, 3) == sys.m(0, 2));
  CHECK(sys.m(1, 5) == sys.m(1, 2));
  CHECK(sys.m(0, 3) == 0.0);
  CHECK(sys.m(1, 4) == 0.0);
  CHECK(sys.m(2, 5) == 0.0);
}

TEST_CASE("damping matrix") {
  const auto p = testing::fig4_mode(false, 1.0);
  const auto sys = build_full(p);
  const double w = kTwoPi;
  Eigen::Matrix<double, 6, 1> expected;
  expected << std::sqrt(60.0 * w), std::sqrt(1.0 * w), std::sqrt(0.2 * w), std::sqrt(60.0 * w), std::sqrt(1.0 * w),
      std::sqrt(0.2 * w);
  CHECK((sys.l.diagonal() - expected).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("block structure holds for random draws") {
  testing::StableDraws draws(3);
  for (int k = 0; k < 200; ++k) {
    const auto sys = build_full(draws.next());
    const Matrix3c<double> pm = sys.m.topLeftCorner<3, 3>(), qm = sys.m.topRightCorner<3, 3>();
    CHECK(sys.m.bottomRightCorner<3, 3>() == pm.conjugate());
    CHECK(sys.m.bottomLeftCorner<3, 3>() == qm.conjugate());
    CHECK(qm == qm.transpose());
  }
}

TEST_CASE("rotating-wave matrices") {
  const cd i(0, 1);
  SUBCASE("red model shares the top-left block") {
    testing::StableDraws draws(5);
    for (int k = 0; k < 50; ++k) {
      const auto p = draws.next();
      CHECK(build_rwa(RwaKind::RedDetuned, p).m3 == build_full(p).p_block());
    }
  }

  SUBCASE("blue model decoupled") {
    ModeParams<double> p{-30.0, 0.0, 0.0, 30.0, 28.0, 30.0, 0.5, 0.1};
    const auto sys = build_rwa(RwaKind::BlueDetuned, p);
    Matrix3c<double> expected = Matrix3c<double>::Zero();
    expected.diagonal() << -i * 30.0 + 30.0, -i * 28.0 + 0.5, -i * 30.0 + 0.1;
    CHECK(sys.m3 == expected);
  }

  SUBCASE("blue model, complex coupling entered by hand") {
    const double w = kTwoPi;
    ModeParams<double> p{-30.0 * w, cd(1.0, 1.0) * w, 0.3 * w, 30.0 * w, 30.0 * w, 30.0 * w, 0.5 * w, 0.1 * w};
    const auto sys = build_rwa(RwaKind::BlueDetuned, p);
    Matrix3c<double> by_hand;
    by_hand << cd(30.0 * w, -30.0 * w), 0.0, cd(-w, w),                 //
        0.0, cd(0.5 * w, -30.0 * w), cd(0.0, -0.3 * w),                  //
        cd(-w, -w), cd(0.0, -0.3 * w), cd(0.1 * w, -30.0 * w);
    CHECK((sys.m3 - by_hand).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(sys.j3.diagonal()(0) == doctest::Approx(std::sqrt(60.0 * w)));
  }
}

TEST_CASE("long double instantiation matches double") {
  const auto p = testing::fig4_mode(true, 2.0);
  const auto hi = build_full(p.cast<long double>());
  CHECK((hi.m.cast<cd>() - build_full(p).m).cwiseAbs().maxCoeff() < 1e-12);
}
