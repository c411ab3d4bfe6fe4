#pragma once

#include "nrp/aco.hpp"
#include "nrp/baselines.hpp"
#include "nrp/bench.hpp"
#include "nrp/generator.hpp"
#include "nrp/instance.hpp"
#include "nrp/instance_io.hpp"
#include "nrp/local_search.hpp"
#include "nrp/random.hpp"
#include "nrp/solution.hpp"
#include "nrp/solvers.hpp"
