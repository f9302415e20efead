#pragma once

// Umbrella header for the ranger library: a stochastic local-search
// refutation engine based on randomized bounded resolution over a fixed-size
// working multiset, with unit propagation look-ahead and extended resolution
// as optional reasoning extensions, plus DIMACS I/O, a random 3-SAT
// generator, a brute-force oracle and a benchmark harness.

#include "ranger/assignment.hpp"
#include "ranger/bench.hpp"
#include "ranger/clause.hpp"
#include "ranger/dimacs.hpp"
#include "ranger/engine.hpp"
#include "ranger/ext_res.hpp"
#include "ranger/formula.hpp"
#include "ranger/generate.hpp"
#include "ranger/literal.hpp"
#include "ranger/oracle.hpp"
#include "ranger/params.hpp"
#include "ranger/propagate.hpp"
#include "ranger/propagator.hpp"
#include "ranger/rng.hpp"
#include "ranger/scoring.hpp"
#include "ranger/solver_state.hpp"
#include "ranger/upla.hpp"
