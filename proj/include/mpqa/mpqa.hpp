#pragma once

#include "approximant.hpp"
#include "bessel.hpp"
#include "error_analysis.hpp"
#include "errors.hpp"
#include "fde.hpp"
#include "gamma.hpp"
#include "io.hpp"
#include "quadrature.hpp"
