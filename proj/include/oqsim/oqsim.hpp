// oqsim.hpp - umbrella header for the whole library.
#pragma once

#include "oqsim/numerics.hpp"
#include "oqsim/plot.hpp"
#include "oqsim/quantifiers.hpp"
#include "oqsim/record.hpp"
#include "oqsim/runner.hpp"
#include "oqsim/spin_boson.hpp"
#include "oqsim/spin_spin.hpp"
#include "oqsim/states.hpp"
