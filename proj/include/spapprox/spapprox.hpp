#pragma once

#include <spapprox/averaging.hpp>
#include <spapprox/core.hpp>
#include <spapprox/jackson.hpp>
#include <spapprox/measure.hpp>
#include <spapprox/modulus.hpp>
#include <spapprox/psi.hpp>
#include <spapprox/quadrature.hpp>
#include <spapprox/random.hpp>
#include <spapprox/shape.hpp>
#include <spapprox/spectral.hpp>
#include <spapprox/widths.hpp>
