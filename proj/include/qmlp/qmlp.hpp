#pragma once

#include "qmlp/quaternion.hpp"
#include "qmlp/qlinalg.hpp"
#include "qmlp/activation.hpp"
#include "qmlp/slp.hpp"
#include "qmlp/mlp.hpp"
#include "qmlp/training.hpp"
#include "qmlp/timeseries.hpp"
#include "qmlp/gradcheck.hpp"
#include "qmlp/experiment.hpp"
