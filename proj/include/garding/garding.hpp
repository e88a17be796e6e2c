#pragma once

// Umbrella include.

#include "garding/classify.hpp"
#include "garding/cxcalc.hpp"
#include "garding/cxlinalg.hpp"
#include "garding/errors.hpp"
#include "garding/expression.hpp"
#include "garding/grid.hpp"
#include "garding/harness.hpp"
#include "garding/report.hpp"
#include "garding/rng.hpp"
#include "garding/symcone.hpp"
