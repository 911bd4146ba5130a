// Convenience umbrella: the whole library.
#pragma once

#include "gatesched/conflict.hpp"
#include "gatesched/core.hpp"
#include "gatesched/feasibility.hpp"
#include "gatesched/generate.hpp"
#include "gatesched/io.hpp"
#include "gatesched/objectives.hpp"
#include "gatesched/oracle.hpp"
#include "gatesched/ramp.hpp"
#include "gatesched/solve_result.hpp"
#include "gatesched/tabu.hpp"
