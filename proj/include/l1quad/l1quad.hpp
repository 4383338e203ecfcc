#pragma once

#include "l1quad/bounds.hpp"
#include "l1quad/corpus.hpp"
#include "l1quad/errors.hpp"
#include "l1quad/expr.hpp"
#include "l1quad/kernel.hpp"
#include "l1quad/means.hpp"
#include "l1quad/quadrature.hpp"
#include "l1quad/reference.hpp"
#include "l1quad/seminorm.hpp"
#include "l1quad/summation.hpp"
#include "l1quad/verify.hpp"
