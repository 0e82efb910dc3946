#pragma once

#include "sweep/bridge.hpp"
#include "sweep/csv.hpp"
#include "sweep/dynamics.hpp"
#include "sweep/errors.hpp"
#include "sweep/monotone_interp.hpp"
#include "sweep/polynomial.hpp"
#include "sweep/projection.hpp"
#include "sweep/random.hpp"
#include "sweep/region.hpp"
#include "sweep/set_family.hpp"
#include "sweep/time_function.hpp"
#include "sweep/trajectory.hpp"
#include "sweep/types.hpp"
#include "sweep/variational.hpp"
