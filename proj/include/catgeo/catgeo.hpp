#pragma once

#include "analysis.hpp"
#include "complex.hpp"
#include "driver.hpp"
#include "errors.hpp"
#include "gen.hpp"
#include "io.hpp"
#include "oracle.hpp"
#include "orthant.hpp"
#include "pip.hpp"
#include "star_geodesic.hpp"
