#pragma once

#include "dioph/bigint.hpp"
#include "dioph/boxsolver.hpp"
#include "dioph/census.hpp"
#include "dioph/decimal.hpp"
#include "dioph/eqdsl.hpp"
#include "dioph/errors.hpp"
#include "dioph/explorer.hpp"
#include "dioph/families.hpp"
#include "dioph/numtheory.hpp"
#include "dioph/polynomial.hpp"
#include "dioph/reduction.hpp"
#include "dioph/squares.hpp"
