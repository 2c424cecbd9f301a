#pragma once

#include "rsht/simplex.hpp"
#include "rsht/complex.hpp"
#include "rsht/engine.hpp"
#include "rsht/homology.hpp"
#include "rsht/manifold.hpp"
#include "rsht/generators.hpp"
#include "rsht/io.hpp"
#include "rsht/presets.hpp"
