#pragma once

#include "growthopt/conditions.hpp"
#include "growthopt/direct_solver.hpp"
#include "growthopt/dp_solver.hpp"
#include "growthopt/errors.hpp"
#include "growthopt/functions.hpp"
#include "growthopt/integrator.hpp"
#include "growthopt/io.hpp"
#include "growthopt/problem.hpp"
#include "growthopt/regularity.hpp"
#include "growthopt/scenario.hpp"
#include "growthopt/solve_report.hpp"
