#pragma once

// Convenience umbrella: pulls in the whole library.

#include "bounds.hpp"
#include "config.hpp"
#include "driver.hpp"
#include "dual.hpp"
#include "errors.hpp"
#include "grid.hpp"
#include "mappings.hpp"
#include "mass_correction.hpp"
#include "physics.hpp"
#include "problems.hpp"
#include "riemann.hpp"
#include "sets.hpp"
#include "spectral.hpp"
#include "stepper.hpp"
#include "tableau.hpp"
