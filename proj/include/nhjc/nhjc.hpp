// nhjc.hpp: Umbrella header for the non-Hermitian Jaynes-Cummings library

#pragma once

#include "nhjc/linalg.hpp"
#include "nhjc/gmm.hpp"
#include "nhjc/spectrum.hpp"
#include "nhjc/fock_oracle.hpp"
#include "nhjc/ep_analysis.hpp"
#include "nhjc/io.hpp"
#include "nhjc/sampling.hpp"
