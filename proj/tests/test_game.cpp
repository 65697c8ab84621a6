#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "nesim/game.hpp"

using namespace nesim;
using namespace nesim::testing;

TEST_CASE("pseudogradient of the two-player game") {
  QuadraticGame g2 = two_player_game();
  Eigen::VectorXd z(2);
  z << 0, 2;
  CHECK(pseudogradient(g2, z).cwiseAbs().maxCoeff() <= 1e-14);
  z << 0, 0;
  Eigen::VectorXd expected(2);
  expected << -2, -4;
  CHECK((pseudogradient(g2, z) - expected).cwiseAbs().maxCoeff() <= 1e-14);
  z << 1, 1;
  expected << 1, -1;
  CHECK((pseudogradient(g2, z) - expected).cwiseAbs().maxCoeff() <= 1e-14);

  z << 1, std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(pseudogradient(g2, z), ValidationError);
}

TEST_CASE("extended pseudogradient") {
  QuadraticGame g2 = two_player_game();
  SUBCASE("consensus at the equilibrium") {
    Eigen::MatrixXd Z(2, 2);
    Z << 0, 2, 0, 2;
    CHECK(extended_pseudogradient(g2, Z).cwiseAbs().maxCoeff() <= 1e-14);
  }
  SUBCASE("rows evaluated independently") {
    Eigen::MatrixXd Z(2, 2);
    Z << 1, 1, 0, 0;
    Eigen::VectorXd expected(2);
    expected << 1, -4;
    CHECK((extended_pseudogradient(g2, Z) - expected).cwiseAbs().maxCoeff() <= 1e-14);
  }
  SUBCASE("zero matrix") {
    Eigen::VectorXd expected(2);
    expected << -2, -4;
    CHECK((extended_pseudogradient(g2, Eigen::MatrixXd::Zero(2, 2)) - expected)
              .cwiseAbs()
              .maxCoeff() <= 1e-14);
  }
  SUBCASE("consensus consistency with the plain pseudogradient") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> dist(-2.0, 2.0);
    QuadraticGame g3 = three_player_game();
    for (int trial = 0; trial < 50; ++trial) {
      Eigen::VectorXd y(3);
      for (int i = 0; i < 3; ++i) y(i) = dist(rng);
      Eigen::MatrixXd Z = Eigen::VectorXd::Ones(3) * y.transpose();
      CHECK((extended_pseudogradient(g3, Z) - pseudogradient(g3, y))
                .cwiseAbs()
                .maxCoeff() == 0.0);
    }
  }
}

TEST_CASE("game constants") {
  SUBCASE("two-player game") {
    auto c = two_player_game().constants();
    CHECK(c.mono_lower == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(c.lip_F == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(c.lip_extF == doctest::Approx(std::sqrt(5.0)).epsilon(1e-12));
    CHECK(c.l() == doctest::Approx(3.0).epsilon(1e-12));
  }
  SUBCASE("decoupled game is isotropic") {
    Eigen::VectorXd cvec(3);
    cvec << 1, -1, 2;
    auto c = decoupled_game(cvec).constants();
    CHECK(c.mono_lower == doctest::Approx(2.0));
    CHECK(c.lip_F == doctest::Approx(2.0));
    CHECK(c.lip_extF == doctest::Approx(2.0));
  }
  SUBCASE("non-monotone instances are rejected") {
    // Jacobian [[1,2],[0,1]] has singular symmetric part.
    Eigen::MatrixXd Q1(2, 2), Q2(2, 2);
    Q1 << 1, 2, 2, 0;
    Q2 << 0, 0, 0, 1;
    Eigen::VectorXd b = Eigen::VectorXd::Zero(2);
    CHECK_THROWS_AS(QuadraticGame({Q1, Q2}, {b, b}), ValidationError);
  }
}

TEST_CASE("game validation") {
  Eigen::MatrixXd asym(2, 2);
  asym << 2, 1, 0, 0;
  Eigen::MatrixXd ok(2, 2);
  ok << 0, 1, 1, 2;
  Eigen::VectorXd b = Eigen::VectorXd::Zero(2);
  CHECK_THROWS_AS(QuadraticGame({asym, ok}, {b, b}), ValidationError);

  // Own-variable curvature must be positive.
  Eigen::MatrixXd flat(2, 2);
  flat << 0, 1, 1, 2;
  CHECK_THROWS_AS(QuadraticGame({flat, ok}, {b, b}), ValidationError);
}

TEST_CASE("nash equilibrium oracle") {
  SUBCASE("two-player game") {
    Eigen::VectorXd z = two_player_game().nash_equilibrium();
    CHECK(z(0) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(z(1) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(pseudogradient(two_player_game(), z).cwiseAbs().maxCoeff() <= 1e-10);
  }
  SUBCASE("decoupled game recovers the targets") {
    Eigen::VectorXd c(4);
    c << 0.5, -2, 3, 0;
    Eigen::VectorXd z = decoupled_game(c).nash_equilibrium();
    CHECK((z - c).cwiseAbs().maxCoeff() <= 1e-12);
  }
  SUBCASE("homogeneous game has the zero equilibrium") {
    QuadraticGame g2 = two_player_game();
    std::vector<Eigen::MatrixXd> Q = {g2.Q(0), g2.Q(1)};
    std::vector<Eigen::VectorXd> b = {Eigen::VectorXd::Zero(2),
                                      Eigen::VectorXd::Zero(2)};
    CHECK(QuadraticGame(Q, b).nash_equilibrium().cwiseAbs().maxCoeff() <= 1e-14);
  }
}

TEST_CASE("finite difference check") {
  QuadraticGame g2 = two_player_game();
  Eigen::VectorXd z(2);
  z << 0.3, -1.2;
  CHECK(finite_difference_check(g2, z) <= 1e-6);
  CHECK(finite_difference_check(g2, g2.nash_equilibrium()) <= 1e-8);

  Eigen::VectorXd c(3);
  c << 1, 2, 3;
  QuadraticGame dec = decoupled_game(c);
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> dist(-3.0, 3.0);
  for (int trial = 0; trial < 20; ++trial) {
    Eigen::VectorXd x(3);
    for (int i = 0; i < 3; ++i) x(i) = dist(rng);
    CHECK(finite_difference_check(dec, x) <= 1e-6);
  }
}

TEST_CASE("monotonicity and Lipschitz certificates") {
  QuadraticGame g2 = two_player_game();
  auto c = g2.constants();
  std::mt19937 rng(23);
  std::uniform_real_distribution<double> dist(-5.0, 5.0);
  const double tol = 1e-9;
  for (int trial = 0; trial < 200; ++trial) {
    Eigen::VectorXd z1(2), z2(2);
    for (int i = 0; i < 2; ++i) {
      z1(i) = dist(rng);
      z2(i) = dist(rng);
    }
    Eigen::VectorXd df = pseudogradient(g2, z1) - pseudogradient(g2, z2);
    Eigen::VectorXd dz = z1 - z2;
    CHECK(dz.dot(df) >= (c.mono_lower - tol) * dz.squaredNorm());
    CHECK(df.norm() <= (c.lip_F + tol) * dz.norm());

    Eigen::MatrixXd Z1(2, 2), Z2(2, 2);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        Z1(i, j) = dist(rng);
        Z2(i, j) = dist(rng);
      }
    Eigen::VectorXd dF =
        extended_pseudogradient(g2, Z1) - extended_pseudogradient(g2, Z2);
    CHECK(dF.norm() <= (c.lip_extF + tol) * (Z1 - Z2).norm());
  }
}
