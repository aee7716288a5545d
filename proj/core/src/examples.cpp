#include "shoot/examples.hpp"

#include <cmath>
#include <functional>
#include <numbers>

#include "shoot/error.hpp"

namespace shoot {

namespace {

double scalar_newton(const std::function<double(double)>& g,
                     const std::function<double(double)>& dg, double x, const char* what) {
  for (int it = 0; it < 100; ++it) {
    const double gx = g(x);
    if (std::abs(gx) <= 1e-13) return x;
    x -= gx / dg(x);
    if (!std::isfinite(x)) break;
  }
  if (std::isfinite(x) && std::abs(g(x)) <= 1e-12) return x;
  throw Error(Errc::NotConverged, std::string("scalar Newton failed for ") + what);
}

ExampleSpec make_ex1() {
  RhsFunction rhs{2, [](double, const Vector& x) { return Vector{x[1], 2.0 * x[0] * x[1]}; }};
  auto jac = [](double, const Vector& x) {
    return Matrix(2, 2, {0.0, 1.0, 2.0 * x[1], 2.0 * x[0]});
  };
  return ExampleSpec{"ex1",
                     "y'' = 2 y y', y(0) = 0, y(1) = 2",
                     BvProblem(2, 0.0, 1.0, rhs, {{0, 0.0}}, {{0, 2.0}}, jac),
                     {"y", "y'"},
                     {{1.0}},
                     {},
                     true};
}

ExampleSpec make_ex2(double k) {
  // state (f, f', f'', theta, theta')
  RhsFunction rhs{5, [k](double, const Vector& x) {
                    return Vector{x[1], x[2], -x[0] * x[2] + x[1] * x[1], x[4], -k * x[4] * x[0]};
                  }};
  auto jac = [k](double, const Vector& x) {
    Matrix j(5, 5);
    j(0, 1) = 1.0;
    j(1, 2) = 1.0;
    j(2, 0) = -x[2];
    j(2, 1) = 2.0 * x[1];
    j(2, 2) = -x[0];
    j(3, 4) = 1.0;
    j(4, 0) = -k * x[4];
    j(4, 4) = -k * x[0];
    return j;
  };
  return ExampleSpec{"ex2",
                     "f''' + f f'' - f'^2 = 0, theta'' + k theta' f = 0 on [0, 5]",
                     BvProblem(5, 0.0, 5.0, rhs, {{0, 0.0}, {1, 1.0}, {3, 1.0}},
                               {{1, 0.0}, {3, 0.0}}, jac),
                     {"f", "f'", "f''", "theta", "theta'"},
                     {{0.0, 0.0}, {-1.0, -1.0}, {-2.0, 0.0}},
                     {{"k", k}},
                     false};
}

ExampleSpec make_ex3() {
  RhsFunction rhs{2, [](double, const Vector& x) { return Vector{x[1], -std::exp(x[0] + 1.0)}; }};
  auto jac = [](double, const Vector& x) {
    return Matrix(2, 2, {0.0, 1.0, -std::exp(x[0] + 1.0), 0.0});
  };
  return ExampleSpec{"ex3",
                     "u'' + exp(u + 1) = 0, u(0) = u(1) = 0",
                     BvProblem(2, 0.0, 1.0, rhs, {{0, 0.0}}, {{0, 0.0}}, jac),
                     {"u", "u'"},
                     {{0.0}, {5.0}},
                     {},
                     true};
}

ExampleSpec make_ex4() {
  RhsFunction rhs{2, [](double t, const Vector& x) {
                    return Vector{x[1], 2.0 * x[0] * x[0] * x[0] - 6.0 * x[0] - 2.0 * t * t * t};
                  }};
  auto jac = [](double, const Vector& x) {
    return Matrix(2, 2, {0.0, 1.0, 6.0 * x[0] * x[0] - 6.0, 0.0});
  };
  return ExampleSpec{"ex4",
                     "x1' = x2, x2' = 2 x1^3 - 6 x1 - 2 t^3, x1(1) = 2, x1(2) = 2.5",
                     BvProblem(2, 1.0, 2.0, rhs, {{0, 2.0}}, {{0, 2.5}}, jac),
                     {"x1", "x2"},
                     {{0.2}},
                     {},
                     true};
}

}  // namespace

std::vector<ExampleSpec> registry() {
  std::vector<ExampleSpec> out;
  for (const char* name : {"ex1", "ex2", "ex3", "ex4"}) out.push_back(make_example(name));
  return out;
}

ExampleSpec make_example(std::string_view name, const Parameters& overrides) {
  Parameters params;
  if (name == "ex2") params["k"] = 0.71;
  for (const auto& [key, value] : overrides) {
    if (!params.contains(key)) {
      throw Error(Errc::InvalidArgument,
                  "problem " + std::string(name) + " has no parameter '" + key + "'");
    }
    if (!std::isfinite(value)) {
      throw Error(Errc::InvalidArgument, "parameter '" + key + "' must be finite");
    }
    params[key] = value;
  }
  if (name == "ex1") return make_ex1();
  if (name == "ex2") return make_ex2(params.at("k"));
  if (name == "ex3") return make_ex3();
  if (name == "ex4") return make_ex4();
  throw Error(Errc::InvalidArgument, "unknown problem '" + std::string(name) + "'");
}

double bratu_theta(int branch) {
  if (branch != 1 && branch != 2) {
    throw Error(Errc::InvalidArgument, "Bratu branch must be 1 or 2");
  }
  const double s = std::sqrt(2.0 * std::numbers::e);
  return scalar_newton([s](double th) { return th - s * std::cosh(th / 4.0); },
                       [s](double th) { return 1.0 - s * std::sinh(th / 4.0) / 4.0; },
                       branch == 1 ? 3.0 : 7.0, "Bratu theta");
}

double ex1_constant() {
  return scalar_newton([](double a) { return a * std::tan(a) - 2.0; },
                       [](double a) {
                         const double c = std::cos(a);
                         return std::tan(a) + a / (c * c);
                       },
                       1.0, "a tan(a) = 2");
}

ReferenceSolution reference_solution(std::string_view name, std::optional<int> branch) {
  if (name == "ex1") {
    const double a = ex1_constant();
    return [a](double t) {
      const double tn = std::tan(a * t);
      return Vector{a * tn, a * a * (1.0 + tn * tn)};
    };
  }
  if (name == "ex3") {
    if (!branch) throw Error(Errc::InvalidArgument, "ex3 reference needs a branch (1 or 2)");
    const double th = bratu_theta(*branch);
    return [th](double t) {
      const double z = (t - 0.5) * th / 2.0;
      return Vector{-2.0 * std::log(std::cosh(z) / std::cosh(th / 4.0)), -th * std::tanh(z)};
    };
  }
  if (name == "ex4") {
    return [](double t) { return Vector{t + 1.0 / t, 1.0 - 1.0 / (t * t)}; };
  }
  if (name == "ex2") throw Error(Errc::NoReference, "ex2 has no closed-form solution");
  throw Error(Errc::InvalidArgument, "unknown problem '" + std::string(name) + "'");
}

}  // namespace shoot
