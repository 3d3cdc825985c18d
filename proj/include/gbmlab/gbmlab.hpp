#pragma once

// Umbrella header: sampling, exact statistics, closed-form limits,
// the quadrature oracle, and the Monte Carlo experiment harness.

#include "gbmlab/adjacency.hpp"
#include "gbmlab/experiment.hpp"
#include "gbmlab/format.hpp"
#include "gbmlab/graph_io.hpp"
#include "gbmlab/limits.hpp"
#include "gbmlab/model.hpp"
#include "gbmlab/parallel.hpp"
#include "gbmlab/quadrature.hpp"
#include "gbmlab/rng.hpp"
#include "gbmlab/stats.hpp"
