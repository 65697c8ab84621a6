#include <doctest.h>

#include "helpers.hpp"
#include "nesim/dynamics.hpp"

using namespace nesim;
using namespace nesim::testing;

namespace {

Eigen::MatrixXd consensus_ne_state(const QuadraticGame& game) {
  Eigen::VectorXd z_star = game.nash_equilibrium();
  return Eigen::VectorXd::Ones(game.size()) * z_star.transpose();
}

// Independent 2x2 symmetric eigenvalue formula for the certificate matrix.
double min_eig_2x2(double a, double b, double d) {
  double tr = a + d;
  double det = a * d - b * b;
  return 0.5 * (tr - std::sqrt(tr * tr - 4.0 * det));
}

}  // namespace

TEST_CASE("balanced field") {
  QuadraticGame g2 = two_player_game();
  DiGraph k2 = two_node_undirected();

  SUBCASE("zero at the consensus equilibrium") {
    CHECK(field_balanced(k2, g2, 3.7, consensus_ne_state(g2))
              .cwiseAbs()
              .maxCoeff() <= 1e-12);
  }
  SUBCASE("zero game reduces to pure consensus") {
    Eigen::VectorXd zero = Eigen::VectorXd::Zero(2);
    QuadraticGame trivial = decoupled_game(zero);
    Eigen::MatrixXd Z(2, 2);
    Z << 1, 2, 3, 4;
    // decoupled_game(0) has F(z) = 2 z_i on the diagonal, so cancel it.
    Eigen::MatrixXd expected = -2.0 * (k2.laplacian() * Z);
    Eigen::MatrixXd field = field_balanced(k2, trivial, 2.0, Z);
    expected.diagonal() -= 2.0 * Z.diagonal();
    CHECK((field - expected).cwiseAbs().maxCoeff() <= 1e-12);
  }
  SUBCASE("hand-evaluated example") {
    Eigen::MatrixXd Z(2, 2);
    Z << 1, 1, 0, 0;
    Eigen::MatrixXd expected(2, 2);
    expected << -2, -1, 1, 5;
    CHECK((field_balanced(k2, g2, 1.0, Z) - expected).cwiseAbs().maxCoeff() <= 1e-14);
  }
}

TEST_CASE("nominal field") {
  QuadraticGame g2 = two_player_game();
  DiGraph g = two_node_unbalanced();
  Eigen::VectorXd xi(2);
  xi << 1.0 / 3, 2.0 / 3;

  SUBCASE("zero at the consensus equilibrium in both modes") {
    for (auto mode : {ScalingMode::BalanceCorrected, ScalingMode::PaperLiteral}) {
      CHECK(field_nominal(g, g2, 9.0, xi, mode, consensus_ne_state(g2))
                .cwiseAbs()
                .maxCoeff() <= 1e-12);
    }
  }
  SUBCASE("uniform xi on a balanced graph matches the balanced field") {
    DiGraph ring = DiGraph::ring(3);
    QuadraticGame g3 = three_player_game();
    Eigen::VectorXd u = Eigen::VectorXd::Constant(3, 1.0 / 3);
    Eigen::MatrixXd Z(3, 3);
    Z << 1, 0, -1, 2, 0.5, 0, -1, 1, 3;
    Eigen::MatrixXd nominal =
        field_nominal(ring, g3, 6.0, u, ScalingMode::BalanceCorrected, Z);
    Eigen::MatrixXd balanced = field_balanced(ring, g3, 2.0, Z);
    CHECK((nominal - balanced).cwiseAbs().maxCoeff() <= 1e-12);
  }
  SUBCASE("hand-evaluated example, balance-corrected, alpha = 9") {
    Eigen::MatrixXd Z(2, 2);
    Z << 1, 1, 0, 0;
    Eigen::MatrixXd expected(2, 2);
    expected << -7, -6, 6, 10;
    CHECK((field_nominal(g, g2, 9.0, xi, ScalingMode::BalanceCorrected, Z) -
           expected)
              .cwiseAbs()
              .maxCoeff() <= 1e-13);
  }
  SUBCASE("rejects nonpositive xi") {
    Eigen::VectorXd bad(2);
    bad << -1.0, 2.0;
    CHECK_THROWS_AS(field_nominal(g, g2, 9.0, bad, ScalingMode::BalanceCorrected,
                                  Eigen::MatrixXd::Zero(2, 2)),
                    ValidationError);
  }
}

TEST_CASE("estimator field") {
  DiGraph g = two_node_unbalanced();
  SUBCASE("consensus rows are stationary") {
    Eigen::VectorXd c(2);
    c << 0.4, 0.6;
    Eigen::MatrixXd Xi = Eigen::VectorXd::Ones(2) * c.transpose();
    CHECK(estimator_field(g, Xi).cwiseAbs().maxCoeff() <= 1e-14);
  }
  SUBCASE("identity input returns -L") {
    Eigen::MatrixXd expected(2, 2);
    expected << -2, 2, 1, -1;
    CHECK((estimator_field(g, Eigen::MatrixXd::Identity(2, 2)) - expected)
              .cwiseAbs()
              .maxCoeff() == 0.0);
  }
}

TEST_CASE("adaptive field") {
  QuadraticGame g2 = two_player_game();
  DiGraph g = two_node_unbalanced();
  Eigen::VectorXd xi(2);
  xi << 1.0 / 3, 2.0 / 3;

  SUBCASE("joint equilibrium is stationary") {
    SeekerState s;
    s.Z = consensus_ne_state(g2);
    s.Xi = Eigen::VectorXd::Ones(2) * xi.transpose();
    s.has_xi = true;
    auto d = field_adaptive(g, g2, 9.0, ScalingMode::BalanceCorrected, s);
    CHECK(d.Z.cwiseAbs().maxCoeff() <= 1e-12);
    CHECK(d.Xi.cwiseAbs().maxCoeff() <= 1e-12);
  }
  SUBCASE("identity estimates reproduce the balanced formula") {
    SeekerState s = initial_state(2);
    s.Z << 1, 1, 0, 0;
    auto d = field_adaptive(g, g2, 1.0, ScalingMode::BalanceCorrected, s);
    CHECK((d.Z - field_balanced(g, g2, 1.0, s.Z)).cwiseAbs().maxCoeff() <= 1e-14);
  }
  SUBCASE("converged estimates reproduce the nominal formula") {
    SeekerState s;
    s.Z.resize(2, 2);
    s.Z << 1, 1, 0, 0;
    s.Xi = Eigen::VectorXd::Ones(2) * xi.transpose();
    s.has_xi = true;
    auto d = field_adaptive(g, g2, 9.0, ScalingMode::BalanceCorrected, s);
    Eigen::MatrixXd expected(2, 2);
    expected << -7, -6, 6, 10;
    CHECK((d.Z - expected).cwiseAbs().maxCoeff() <= 1e-13);
  }
  SUBCASE("degenerate estimate is an error") {
    SeekerState s = initial_state(2);
    s.Xi(0, 0) = 0.0;
    CHECK_THROWS_AS(field_adaptive(g, g2, 9.0, ScalingMode::BalanceCorrected, s),
                    DegenerateEstimate);
  }
}

TEST_CASE("gain threshold") {
  GameConstants c{1.0, 3.0, std::sqrt(5.0)};
  CHECK(min_gain(c, 4.0 / 3) == doctest::Approx(9.0).epsilon(1e-12));
  CHECK(min_gain(c, 2.0) == doctest::Approx(6.0).epsilon(1e-12));
  GameConstants unit{1.0, 1.0, 1.0};
  CHECK(min_gain(unit, 1.0) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK_THROWS_AS(min_gain(c, 0.0), ValidationError);
}

TEST_CASE("lyapunov decay rate") {
  GameConstants c{1.0, 3.0, 1.0};
  SUBCASE("matches the 2x2 closed form") {
    double nu = lyapunov_decay_rate(c, 6.5, 2.0, 2);
    double expected = 2.0 * min_eig_2x2(0.5, -3.0 / std::sqrt(2.0), 10.0);
    CHECK(nu == doctest::Approx(expected).epsilon(1e-12));
    CHECK(nu > 0.0);
  }
  SUBCASE("large-alpha limit approaches 2 l_lower / n") {
    double nu = lyapunov_decay_rate(c, 1e9, 2.0, 2);
    CHECK(nu == doctest::Approx(2.0 * 1.0 / 2.0).epsilon(1e-6));
  }
  SUBCASE("threshold boundary is rejected") {
    double threshold = min_gain(c, 2.0);
    CHECK_THROWS_AS(lyapunov_decay_rate(c, threshold, 2.0, 2), ValidationError);
  }
}

TEST_CASE("initial state") {
  SUBCASE("default spread") {
    SeekerState s = initial_state(3);
    CHECK((s.Xi - Eigen::MatrixXd::Identity(3, 3)).cwiseAbs().maxCoeff() == 0.0);
    for (int i = 0; i < 3; ++i) {
      CHECK(s.Z(i, 0) == doctest::Approx((i + 1) / 3.0));
      CHECK(s.Z.row(i).minCoeff() == s.Z.row(i).maxCoeff());
    }
  }
  SUBCASE("caller-supplied Z passes through") {
    Eigen::MatrixXd Z(2, 2);
    Z << 5, 6, 7, 8;
    SeekerState s = initial_state(2, Z);
    CHECK((s.Z - Z).cwiseAbs().maxCoeff() == 0.0);
    CHECK((s.Xi - Eigen::MatrixXd::Identity(2, 2)).cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("dimension mismatch rejected") {
    CHECK_THROWS_AS(initial_state(3, Eigen::MatrixXd::Zero(2, 2)), ValidationError);
  }
}

TEST_CASE("variant dispatch") {
  QuadraticGame g2 = two_player_game();
  DiGraph g = two_node_unbalanced();
  AlgorithmSpec spec;
  spec.variant = Variant::NominalUnbalanced;
  spec.alpha = 9.0;
  CHECK_THROWS_AS(make_field(spec, g, g2), ValidationError);  // xi missing
  spec.alpha = -1.0;
  CHECK_THROWS_AS(make_field(spec, g, g2), ValidationError);
}
