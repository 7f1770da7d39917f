#pragma once

#include "blfsim/approximator.hpp"
#include "blfsim/barrier.hpp"
#include "blfsim/config.hpp"
#include "blfsim/controller.hpp"
#include "blfsim/errors.hpp"
#include "blfsim/observer.hpp"
#include "blfsim/plant.hpp"
#include "blfsim/report.hpp"
#include "blfsim/rk4.hpp"
#include "blfsim/run_config.hpp"
#include "blfsim/signals.hpp"
#include "blfsim/simengine.hpp"
