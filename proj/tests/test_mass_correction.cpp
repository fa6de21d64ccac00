#include <catch2/catch_amalgamated.hpp>

#include "bprk/mass_correction.hpp"
