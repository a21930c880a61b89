#pragma once

#include "qwg/ambiguity.hpp"
#include "qwg/bohm.hpp"
#include "qwg/bohr.hpp"
#include "qwg/constants.hpp"
#include "qwg/dispersion.hpp"
#include "qwg/errors.hpp"
#include "qwg/fft.hpp"
#include "qwg/grid.hpp"
#include "qwg/kg_solver.hpp"
#include "qwg/nonlinear.hpp"
#include "qwg/potential.hpp"
#include "qwg/report.hpp"
#include "qwg/rng.hpp"
#include "qwg/stationary.hpp"
#include "qwg/zigzag.hpp"
