#pragma once

#include "dlpq/algebra.hpp"
#include "dlpq/char_ops.hpp"
#include "dlpq/charpoly.hpp"
#include "dlpq/errors.hpp"
#include "dlpq/expr_parser.hpp"
#include "dlpq/io.hpp"
#include "dlpq/matrix_rep.hpp"
#include "dlpq/scalar.hpp"
#include "dlpq/tolerance.hpp"
#include "dlpq/working_precision.hpp"
#include "dlpq/zero_divisor.hpp"
