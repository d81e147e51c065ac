#pragma once

#include "monosq/checked.hpp"
#include "monosq/colour.hpp"
#include "monosq/colouring.hpp"
#include "monosq/colouring_io.hpp"
#include "monosq/dimacs.hpp"
#include "monosq/errors.hpp"
#include "monosq/extremal.hpp"
#include "monosq/finder.hpp"
#include "monosq/json_io.hpp"
#include "monosq/oracle.hpp"
#include "monosq/structured.hpp"
#include "monosq/threshold.hpp"
