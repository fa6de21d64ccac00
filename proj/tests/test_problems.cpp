#include <catch2/catch_amalgamated.hpp>

#include "bprk/problems.hpp"
