#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "shoot/bvp.hpp"

namespace shoot {

using Parameters = std::map<std::string, double>;

/// One of the built-in boundary value problems, reduced to first order with
/// state ordering (function, derivatives ascending) per equation.
struct ExampleSpec {
  std::string name;
  std::string title;
  BvProblem problem;
  /// Display names of the state components, e.g. "y" and "y'".
  std::vector<std::string> labels;
  std::vector<Vector> default_guesses;
  Parameters parameters;
  bool has_reference = false;
};

/// ex1 .. ex4 with default parameters.
std::vector<ExampleSpec> registry();

/// Builds a single example. Throws Errc::InvalidArgument for an unknown name or
/// an override naming a parameter the example does not have.
ExampleSpec make_example(std::string_view name, const Parameters& overrides = {});

/// Root of theta = sqrt(2e) cosh(theta / 4): branch 1 near 3.04, branch 2 near 7.14.
double bratu_theta(int branch);

/// Root of a tan(a) = 2 near 1.08; the constant in the ex1 closed form.
double ex1_constant();

using ReferenceSolution = std::function<Vector(double)>;

/// Closed-form solution t -> x(t). `branch` selects the ex3 solution and is
/// required there. Throws Errc::NoReference for ex2.
ReferenceSolution reference_solution(std::string_view name, std::optional<int> branch = {});

}  // namespace shoot
