#pragma once

#include "ffdyn/cli.hpp"
#include "ffdyn/elem_set.hpp"
#include "ffdyn/errors.hpp"
#include "ffdyn/experiments.hpp"
#include "ffdyn/exponents.hpp"
#include "ffdyn/field.hpp"
#include "ffdyn/linalg.hpp"
#include "ffdyn/poly.hpp"
#include "ffdyn/rational.hpp"
#include "ffdyn/report.hpp"
#include "ffdyn/rng.hpp"
#include "ffdyn/setcalc.hpp"
#include "ffdyn/subfield_orbit.hpp"
