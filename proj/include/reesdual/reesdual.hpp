// Umbrella header.
#pragma once

#include "reesdual/bourbaki.hpp"
#include "reesdual/groebner.hpp"
#include "reesdual/hypotheses.hpp"
#include "reesdual/instance.hpp"
#include "reesdual/instance_io.hpp"
#include "reesdual/matrix.hpp"
#include "reesdual/parse.hpp"
#include "reesdual/poly.hpp"
#include "reesdual/rees_dual.hpp"
