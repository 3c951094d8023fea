#pragma once

#include "boip/rational.hpp"
#include "boip/model.hpp"
#include "boip/simplex.hpp"
#include "boip/ipsolve.hpp"
#include "boip/scalarize.hpp"
#include "boip/boxer.hpp"
#include "boip/baselines.hpp"
#include "boip/metrics.hpp"
#include "boip/oracle.hpp"
#include "boip/generate.hpp"
#include "boip/io.hpp"
#include "boip/report.hpp"
#include "boip/experiment.hpp"
