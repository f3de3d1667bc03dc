#pragma once

// Umbrella header for the octsh library: degree-4 real spherical harmonics
// with octahedral symmetry, their implicit quadric representation, rotation
// operators, the SO(3) quotient machinery, and file formats.

#include "octsh/io.hpp"
#include "octsh/linalg.hpp"
#include "octsh/quotient.hpp"
#include "octsh/rotation.hpp"
#include "octsh/sh4.hpp"
#include "octsh/variety.hpp"
