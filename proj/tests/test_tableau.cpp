#include <catch2/catch_amalgamated.hpp>

#include "bprk/tableau.hpp"
