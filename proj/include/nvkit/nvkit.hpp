#ifndef NVKIT_NVKIT_HPP
#define NVKIT_NVKIT_HPP

#include "nvkit/core.hpp"
#include "nvkit/crystal.hpp"
#include "nvkit/geometry.hpp"
#include "nvkit/defects.hpp"
#include "nvkit/qcdata.hpp"
#include "nvkit/photophysics.hpp"
#include "nvkit/odmr.hpp"
#include "nvkit/thermo.hpp"

#endif  // NVKIT_NVKIT_HPP
