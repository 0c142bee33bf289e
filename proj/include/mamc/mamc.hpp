#pragma once

#include "mamc/backtest.hpp"
#include "mamc/closed_form.hpp"
#include "mamc/date.hpp"
#include "mamc/errors.hpp"
#include "mamc/market_data.hpp"
#include "mamc/mc_engine.hpp"
#include "mamc/metrics.hpp"
#include "mamc/returns_ar.hpp"
#include "mamc/rng.hpp"
#include "mamc/types.hpp"
