#pragma once

// Umbrella header: the whole toolkit.

#include "tailkit/backtest.hpp"
#include "tailkit/copula.hpp"
#include "tailkit/core.hpp"
#include "tailkit/csv.hpp"
#include "tailkit/dist.hpp"
#include "tailkit/evt.hpp"
#include "tailkit/garch.hpp"
#include "tailkit/jsonout.hpp"
#include "tailkit/linalg.hpp"
#include "tailkit/mc.hpp"
#include "tailkit/ols.hpp"
#include "tailkit/optim.hpp"
#include "tailkit/pipeline.hpp"
#include "tailkit/risk.hpp"
#include "tailkit/rng.hpp"
#include "tailkit/serialize.hpp"
#include "tailkit/stat_tests.hpp"
