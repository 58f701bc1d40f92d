#pragma once

#include "qperisk/angles.hpp"
#include "qperisk/bayes_sim.hpp"
#include "qperisk/emit.hpp"
#include "qperisk/errors.hpp"
#include "qperisk/fit.hpp"
#include "qperisk/loss_model.hpp"
#include "qperisk/minimize.hpp"
#include "qperisk/quadrature.hpp"
#include "qperisk/random.hpp"
#include "qperisk/risk_engine.hpp"
#include "qperisk/special_functions.hpp"
#include "qperisk/states.hpp"
#include "qperisk/toeplitz_core.hpp"
#include "qperisk/version.hpp"
