#pragma once

#include "mirrorrad/beta.hpp"
#include "mirrorrad/common.hpp"
#include "mirrorrad/convergence.hpp"
#include "mirrorrad/fermion_mirror.hpp"
#include "mirrorrad/quadrature.hpp"
#include "mirrorrad/scalar_mirror.hpp"
#include "mirrorrad/specfun.hpp"
#include "mirrorrad/spectrum.hpp"
#include "mirrorrad/trajectory.hpp"
