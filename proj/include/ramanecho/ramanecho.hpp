#pragma once

#include "density_matrix.hpp"
#include "ensemble.hpp"
#include "error.hpp"
#include "lambda_system.hpp"
#include "liouvillian.hpp"
#include "multimode.hpp"
#include "parallel.hpp"
#include "photon_echo.hpp"
#include "properties.hpp"
#include "sequences.hpp"
#include "units.hpp"
