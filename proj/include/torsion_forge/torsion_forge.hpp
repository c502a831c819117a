#pragma once

// Umbrella header.

#include "torsion_forge/certificate.hpp"
#include "torsion_forge/curve.hpp"
#include "torsion_forge/extension_field.hpp"
#include "torsion_forge/hensel.hpp"
#include "torsion_forge/json_io.hpp"
#include "torsion_forge/mumford.hpp"
#include "torsion_forge/poly.hpp"
#include "torsion_forge/prime_field.hpp"
#include "torsion_forge/rational_field.hpp"
#include "torsion_forge/rational_function.hpp"
#include "torsion_forge/store.hpp"
#include "torsion_forge/zeta.hpp"
