#include <doctest.h>

#include <cmath>
#include <numbers>

#include "test_support.hpp"

using namespace shoot;

TEST_CASE("registry contents") {
  const auto reg = registry();
  REQUIRE(reg.size() == 4);

  const auto& ex1 = reg[0];
  CHECK(ex1.name == "ex1");
  CHECK(ex1.problem.dimension() == 2);
  CHECK(ex1.problem.initial_selector().indices() == std::vector<std::size_t>{0});
  CHECK(ex1.problem.terminal_selector().indices() == std::vector<std::size_t>{0});
  CHECK(ex1.problem.initial_values() == Vector{0.0});
  CHECK(ex1.problem.terminal_values() == Vector{2.0});

  const auto& ex2 = reg[1];
  CHECK(ex2.problem.dimension() == 5);
  CHECK(ex2.problem.a() == 0.0);
  CHECK(ex2.problem.b() == 5.0);
  CHECK(ex2.problem.initial_selector().indices() == std::vector<std::size_t>{0, 1, 3});
  CHECK(ex2.problem.terminal_selector().indices() == std::vector<std::size_t>{1, 3});
  CHECK(ex2.problem.initial_values() == Vector{0.0, 1.0, 1.0});
  CHECK(ex2.problem.terminal_values() == Vector{0.0, 0.0});
  CHECK(ex2.parameters.at("k") == 0.71);
  CHECK(ex2.default_guesses == std::vector<Vector>{{0.0, 0.0}, {-1.0, -1.0}, {-2.0, 0.0}});

  const auto& ex3 = reg[2];
  CHECK(ex3.default_guesses == std::vector<Vector>{{0.0}, {5.0}});

  const auto& ex4 = reg[3];
  CHECK(ex4.problem.a() == 1.0);
  CHECK(ex4.problem.b() == 2.0);
  CHECK(ex4.problem.initial_values() == Vector{2.0});
  CHECK(ex4.problem.terminal_values() == Vector{2.5});
}

TEST_CASE("parameter overrides") {
  const auto ex2 = make_example("ex2", {{"k", 0.5}});
  CHECK(ex2.parameters.at("k") == 0.5);
  // theta'' = -k theta' f  at f = 2, theta' = 1
  CHECK(ex2.problem.rhs()(0.0, {2.0, 0.0, 0.0, 0.0, 1.0})[4] == -1.0);
  CHECK_THROWS_AS(make_example("ex2", {{"q", 1.0}}), Error);
  CHECK_THROWS_AS(make_example("ex1", {{"k", 1.0}}), Error);
  CHECK_THROWS_AS(make_example("ex9"), Error);
}

TEST_CASE("Bratu theta roots") {
  const double s = std::sqrt(2.0 * std::numbers::e);
  const double t1 = bratu_theta(1);
  const double t2 = bratu_theta(2);
  CHECK(std::abs(t1 - 3.0362318) <= 1e-6);
  CHECK(std::abs(t2 - 7.1350055) <= 1e-6);
  CHECK(std::abs(t1 - s * std::cosh(t1 / 4)) <= 1e-12);
  CHECK(std::abs(t2 - s * std::cosh(t2 / 4)) <= 1e-12);
  CHECK_THROWS_AS(bratu_theta(3), Error);
}

TEST_CASE("closed-form references") {
  const double a = ex1_constant();
  CHECK(std::abs(a - 1.0768740) <= 1e-6);
  CHECK(std::abs(a * std::tan(a) - 2.0) <= 1e-12);
  CHECK(std::abs(reference_solution("ex1")(0.0)[1] - 1.1596576) <= 1e-6);

  const double t1 = bratu_theta(1);
  CHECK(std::abs(reference_solution("ex3", 1)(0.0)[1] - t1 * std::tanh(t1 / 4)) <= 1e-12);
  CHECK(std::abs(reference_solution("ex3", 1)(0.0)[1] - 1.9447725) <= 1e-6);
  CHECK(std::abs(reference_solution("ex3", 2)(0.0)[1] - 6.7432737) <= 1e-6);

  CHECK(std::abs(reference_solution("ex4")(2.0)[1] - 0.75) <= 1e-15);

  try {
    reference_solution("ex2");
    FAIL("expected NoReference");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NoReference);
  }
  CHECK_THROWS_AS(reference_solution("ex3"), Error);
}

TEST_CASE("references satisfy their boundary conditions and ODEs") {
  struct Case {
    const char* name;
    std::optional<int> branch;
  };
  for (const Case& cs : {Case{"ex1", {}}, Case{"ex3", 1}, Case{"ex3", 2}, Case{"ex4", {}}}) {
    const auto ex = make_example(cs.name);
    const auto ref = reference_solution(cs.name, cs.branch);
    const BvProblem& p = ex.problem;
    const Vector xa = ref(p.a());
    const Vector xb = ref(p.b());
    for (std::size_t k = 0; k < p.fixed_count(); ++k) {
      CHECK(std::abs(xa[p.initial_selector()[k]] - p.initial_values()[k]) <= 1e-6);
    }
    for (std::size_t k = 0; k < p.free_count(); ++k) {
      CHECK(std::abs(xb[p.terminal_selector()[k]] - p.terminal_values()[k]) <= 1e-6);
    }
    // ODE residual by central differences of the reference
    for (int s = 0; s < 50; ++s) {
      const double t = p.a() + (p.b() - p.a()) * (s + 0.5) / 50.0;
      const double h = 1e-5;
      const Vector xp = ref(t + h), xm = ref(t - h);
      const Vector f = p.rhs()(t, ref(t));
      for (std::size_t i = 0; i < p.dimension(); ++i) {
        CHECK_MESSAGE(std::abs((xp[i] - xm[i]) / (2 * h) - f[i]) <= 1e-6 * (1.0 + std::abs(f[i])),
                      cs.name);
      }
    }
  }
}

TEST_CASE("shooting solutions match the closed forms") {
  struct Case {
    const char* name;
    std::size_t guess;
    std::optional<int> branch;
  };
  for (const Case& cs : {Case{"ex1", 0, {}}, Case{"ex3", 0, 1}, Case{"ex3", 1, 2}, Case{"ex4", 0, {}}}) {
    const auto ex = make_example(cs.name);
    const auto r = solve_bvp(ex.problem, ex.default_guesses[cs.guess]);
    REQUIRE(r.converged);
    const auto ref = reference_solution(cs.name, cs.branch);
    for (int s = 0; s <= 100; ++s) {
      const double t = ex.problem.a() + (ex.problem.b() - ex.problem.a()) * s / 100.0;
      const Vector x = interpolate(r.final_trajectory, t);
      const Vector xr = ref(t);
      for (std::size_t i = 0; i < x.size(); ++i) {
        CHECK_MESSAGE(std::abs(x[i] - xr[i]) <= 1e-6 * (1.0 + inf_norm(xr)), cs.name << " t=" << t);
      }
    }
  }
}

TEST_CASE("Example 1 first integral y' - y^2") {
  const auto ex1 = make_example("ex1");
  const auto r = solve_bvp(ex1.problem, Vector{1.0});
  REQUIRE(r.converged);
  const auto inv = [](const Vector& x) { return x[1] - x[0] * x[0]; };
  CHECK(std::abs(inv(r.final_state) - inv(r.initial_state)) <= 1e-7);
}

TEST_CASE("Bratu branches are distinct") {
  const auto ex3 = make_example("ex3");
  const auto r1 = solve_bvp(ex3.problem, Vector{0.0});
  const auto r2 = solve_bvp(ex3.problem, Vector{5.0});
  CHECK(std::abs(r1.c_final[0] - r2.c_final[0]) > 4.0);
}

TEST_CASE("Example 2 case 1 basin") {
  const auto ex2 = make_example("ex2");
  const auto a = solve_bvp(ex2.problem, Vector{0.0, 0.0});
  const auto b = solve_bvp(ex2.problem, Vector{-1.0, -1.0});
  REQUIRE(a.converged);
  REQUIRE(b.converged);
  CHECK(std::abs(a.c_final[0] - b.c_final[0]) <= 1e-6);
  CHECK(std::abs(a.c_final[1] - b.c_final[1]) <= 1e-6);
}
