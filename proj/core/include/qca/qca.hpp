#pragma once

#include "qca/types.hpp"
#include "qca/lattice.hpp"
#include "qca/model.hpp"
#include "qca/spectral.hpp"
#include "qca/bloch.hpp"
#include "qca/unitarity.hpp"
#include "qca/fft.hpp"
#include "qca/evolve.hpp"
#include "qca/continuum.hpp"
#include "qca/io.hpp"
