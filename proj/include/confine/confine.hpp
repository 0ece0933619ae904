#pragma once

// Umbrella header: the whole library in one include.

#include "confine/balance.hpp"
#include "confine/constructions.hpp"
#include "confine/errors.hpp"
#include "confine/generators.hpp"
#include "confine/geometry.hpp"
#include "confine/harness.hpp"
#include "confine/instance.hpp"
#include "confine/io.hpp"
#include "confine/oracle.hpp"
#include "confine/permutation.hpp"
#include "confine/rng.hpp"
#include "confine/search.hpp"
#include "confine/subset.hpp"
#include "confine/vec2.hpp"
