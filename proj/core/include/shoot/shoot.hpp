#pragma once

#include "shoot/adjoint.hpp"
#include "shoot/bvp.hpp"
#include "shoot/error.hpp"
#include "shoot/examples.hpp"
#include "shoot/linalg.hpp"
#include "shoot/newton.hpp"
#include "shoot/ode.hpp"
#include "shoot/sensitivity.hpp"
