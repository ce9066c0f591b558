#include "helpers.hpp"
#include "oracle/oracle.hpp"

#include "erisk/linsolve.hpp"
#include "erisk/solver.hpp"

#include <doctest.h>

using namespace erisk;
using testing::Builder;

namespace {

std::vector<Rational> dyadic_factors(const Game& g) {
  std::vector<Rational> f;
  for (std::size_t s = 0; s < g.size(); ++s) f.push_back(pow2(-static_cast<std::int64_t>(g.reward(s))));
  return f;
}

}  // namespace

TEST_CASE("bareiss solves rational systems exactly") {
  Matrix<Rational> a(3, 3);
  a << Rational(0), Rational(2), Rational(1),  //
      Rational(1), Rational(1), Rational(0),   //
      Rational(3), Rational(0), Rational(1, 2);
  Vector<Rational> b(3);
  b << Rational(1), Rational(2), Rational(3);
  EliminationStats stats;
  const Vector<Rational> x = bareiss_solve<Rational>(a, b, &stats);
  const Vector<Rational> r = a * x - b;
  for (Eigen::Index i = 0; i < 3; ++i) CHECK(r(i).is_zero());
  CHECK(stats.max_bits > 0);

  Matrix<Rational> sing(2, 2);
  sing << Rational(1), Rational(2), Rational(2), Rational(4);
  Vector<Rational> rhs(2);
  rhs << Rational(1), Rational(1);
  CHECK_THROWS_AS(bareiss_solve<Rational>(sing, rhs), SingularSystemError);
}

TEST_CASE("tarjan components are sink first") {
  const std::vector<std::vector<std::size_t>> adj{{1}, {0, 2}, {2}, {0}};
  std::size_t count = 0;
  const auto comp = strongly_connected_components(adj, &count);
  CHECK(count == 3);
  CHECK(comp[0] == comp[1]);
  CHECK(comp[2] < comp[0]);
  CHECK(comp[3] > comp[0]);
}

TEST_CASE("evaluate_profile on the running example") {
  const Game g = testing::running_example().game;
  const auto f = dyadic_factors(g);
  const BoundarySets bs = compute_boundary_sets(g);
  const auto safe = evaluate_profile<Rational>(g, f, &bs, {1, 0, 0, 0});
  CHECK(safe[0] == Rational(1, 64));
  CHECK(safe[3] == Rational(1, 16));
  const auto risk = evaluate_profile<Rational>(g, f, &bs, {0, 0, 0, 0});
  CHECK(risk[0] == Rational(1, 8));
  // Without anchors the bottom components decide.
  const auto raw = evaluate_profile<Rational>(g, f, nullptr, {0, 0, 0, 0});
  CHECK(raw[1] == Rational(0));
  CHECK(raw[2] == Rational(1));
}

TEST_CASE("one-player policy iteration picks safe") {
  const Game g = testing::running_example().game;
  const auto sol = solve_game<Rational>(g, dyadic_factors(g));
  CHECK(sol.values[0] == Rational(1, 64));
  CHECK(sol.max.choice[0] == 1);
  CHECK_FALSE(sol.enumerated);
}

TEST_CASE("all states in Sinf give zero") {
  Builder b;
  const auto x = b.state(Player::kMax, 1);
  const auto y = b.state(Player::kMin, 2);
  b.action(x, {{y, Rational(1)}}).loop(y);
  const Game g = b.build();
  const auto sol = solve_game<Rational>(g, dyadic_factors(g));
  CHECK(sol.values[0].is_zero());
  CHECK(sol.values[1].is_zero());
}

TEST_CASE("least fixpoint on zero-reward cycles") {
  // Max can loop at zero reward forever (utility 1) or take a reward; the
  // minimizing player prefers the reward.
  Builder b;
  const auto x = b.state(Player::kMax, 0);
  const auto y = b.state(Player::kMax, 0);
  const auto r = b.state(Player::kMax, 1);
  const auto end = b.state(Player::kMax, 0);
  b.action(x, {{y, Rational(1)}}).action(x, {{r, Rational(1)}});
  b.action(y, {{x, Rational(1)}});
  b.action(r, {{end, Rational(1)}});
  b.loop(end);
  const Game g = b.build();
  const auto sol = solve_game<Rational>(g, dyadic_factors(g));
  CHECK(sol.values[0] == Rational(1, 2));
  CHECK(sol.max.choice[0] == 1);
}

TEST_CASE("enumeration respects its limit") {
  Builder b;
  std::vector<std::size_t> xs;
  for (int i = 0; i < 4; ++i) xs.push_back(b.state(Player::kMax, static_cast<std::uint64_t>(i % 2)));
  const auto m = b.state(Player::kMin, 0);
  for (std::size_t i = 0; i < xs.size(); ++i)
    b.action(xs[i], {{m, Rational(1)}}).action(xs[i], {{xs[(i + 1) % xs.size()], Rational(1)}});
  b.loop(m).action(m, {{xs[0], Rational(1)}});
  const Game g = b.build();
  SolverOptions opts;
  opts.enumeration_limit = 4;
  CHECK_THROWS_AS(detail::enumerate_max<Rational>(g, dyadic_factors(g), opts), ResourceLimitError);
  opts.enumeration_limit = 16;
  const auto full = detail::enumerate_max<Rational>(g, dyadic_factors(g), opts);
  CHECK(full.enumerated);
  const auto si = solve_game<Rational>(g, dyadic_factors(g));
  for (std::size_t s = 0; s < g.size(); ++s) CHECK(full.values[s] == si.values[s]);
}

TEST_CASE("strategy iteration matches brute force on random games") {
  std::mt19937_64 rng(3);
  oracle::RandomGameSpec spec;
  spec.max_states = 5;
  for (int i = 0; i < 150; ++i) {
    const Game g = oracle::random_game(rng, spec);
    const auto f = dyadic_factors(g);
    const auto sol = solve_game<Rational>(g, f);
    const auto ref = oracle::brute_force_values<Rational>(g, f);
    for (std::size_t s = 0; s < g.size(); ++s) {
      REQUIRE(sol.values[s] == ref.maxmin[s]);
      REQUIRE(ref.maxmin[s] == ref.minmax[s]);
    }
    // The returned profile realizes the values.
    const auto realized = evaluate_profile<Rational>(g, f, nullptr, combine(g, sol.max, sol.min));
    for (std::size_t s = 0; s < g.size(); ++s) REQUIRE(realized[s] == sol.values[s]);
  }
}
