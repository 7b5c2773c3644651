#pragma once

#include "ramsey/artifacts.hpp"
#include "ramsey/blocks.hpp"
#include "ramsey/canonical.hpp"
#include "ramsey/catalog.hpp"
#include "ramsey/cnf.hpp"
#include "ramsey/encoder.hpp"
#include "ramsey/error.hpp"
#include "ramsey/partial.hpp"
#include "ramsey/propagate.hpp"
#include "ramsey/sat_runner.hpp"
#include "ramsey/tournament.hpp"
#include "ramsey/vertex_set.hpp"
