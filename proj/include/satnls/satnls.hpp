// Umbrella header for the satnls library.
#pragma once

#include "satnls/core.hpp"
#include "satnls/diagnostics.hpp"
#include "satnls/fd.hpp"
#include "satnls/fft.hpp"
#include "satnls/io.hpp"
#include "satnls/simulation.hpp"
#include "satnls/soliton.hpp"
#include "satnls/spectral.hpp"
#include "satnls/stability.hpp"
#include "satnls/version.hpp"
