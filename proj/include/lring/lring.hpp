#pragma once

// Umbrella header for the whole library.

#include "lring/error.hpp"
#include "lring/rational.hpp"
#include "lring/operand.hpp"
#include "lring/varkey.hpp"
#include "lring/monomial.hpp"
#include "lring/poly.hpp"
#include "lring/ratfn.hpp"
#include "lring/tseries.hpp"
#include "lring/partitions.hpp"
#include "lring/expr.hpp"
#include "lring/parse.hpp"
#include "lring/lambda_context.hpp"
#include "lring/simplify.hpp"
#include "lring/motives.hpp"
#include "lring/groups.hpp"
#include "lring/higgs.hpp"
