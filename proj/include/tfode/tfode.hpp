#pragma once

#include "tfode/errors.hpp"
#include "tfode/expr.hpp"
#include "tfode/harness.hpp"
#include "tfode/quadrature.hpp"
#include "tfode/solver.hpp"
#include "tfode/specfun.hpp"
#include "tfode/tempered_ops.hpp"
