// Umbrella header.
#pragma once

#include "starwalk/basis.hpp"
#include "starwalk/core.hpp"
#include "starwalk/eigen.hpp"
#include "starwalk/hub.hpp"
#include "starwalk/parallel.hpp"
#include "starwalk/random_spec.hpp"
#include "starwalk/report.hpp"
#include "starwalk/search.hpp"
#include "starwalk/spec_io.hpp"
#include "starwalk/spectral.hpp"
#include "starwalk/subgraph.hpp"
#include "starwalk/tolerance.hpp"
#include "starwalk/walk.hpp"
