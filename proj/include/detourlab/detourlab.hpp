#pragma once

// Umbrella header: factored projector calculus, finite Hodge complexes,
// Einstein-scale detour operators, the symbolic slot engine, and the batch
// verification suite.

#include "detourlab/scalar.hpp"
#include "detourlab/rng.hpp"
#include "detourlab/linalg.hpp"
#include "detourlab/factored.hpp"
#include "detourlab/chain_complex.hpp"
#include "detourlab/generators.hpp"
#include "detourlab/detour_ops.hpp"
#include "detourlab/decompositions.hpp"
#include "detourlab/pairings.hpp"
#include "detourlab/word.hpp"
#include "detourlab/oppoly.hpp"
#include "detourlab/slots.hpp"
#include "detourlab/instantiate.hpp"
#include "detourlab/complex_io.hpp"
#include "detourlab/report.hpp"
#include "detourlab/suite.hpp"
