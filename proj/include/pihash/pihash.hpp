#pragma once

#include "pihash/attacks.hpp"
#include "pihash/bench.hpp"
#include "pihash/dct.hpp"
#include "pihash/hashes.hpp"
#include "pihash/image.hpp"
#include "pihash/pnm.hpp"
#include "pihash/raster.hpp"
#include "pihash/rng.hpp"
#include "pihash/similarity.hpp"
