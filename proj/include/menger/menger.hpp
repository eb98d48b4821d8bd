#pragma once

#include "curve.hpp"
#include "curve_io.hpp"
#include "energy.hpp"
#include "error.hpp"
#include "flow.hpp"
#include "geometry.hpp"
#include "parallel.hpp"
#include "params.hpp"
#include "presets.hpp"
#include "sobolev.hpp"
#include "symbol.hpp"
#include "variation.hpp"
