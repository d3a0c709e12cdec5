#pragma once

// Single include for the whole library: graphs, dynamics, energy bookkeeping,
// retention estimators, randomized theorem checks, and experiment plumbing.

#include "majority/checks.hpp"
#include "majority/dynamics.hpp"
#include "majority/error.hpp"
#include "majority/experiment.hpp"
#include "majority/generators.hpp"
#include "majority/graph.hpp"
#include "majority/growth.hpp"
#include "majority/io.hpp"
#include "majority/lightcone.hpp"
#include "majority/lyapunov.hpp"
#include "majority/rational.hpp"
#include "majority/retention.hpp"
#include "majority/rng.hpp"
#include "majority/weighting.hpp"
