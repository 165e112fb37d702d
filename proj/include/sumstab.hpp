#pragma once

#include "sumstab/rational.hpp"
#include "sumstab/lattice.hpp"
#include "sumstab/sublattice.hpp"
#include "sumstab/gap.hpp"
#include "sumstab/fibers.hpp"
#include "sumstab/sumset.hpp"
#include "sumstab/hull.hpp"
#include "sumstab/polytope.hpp"
#include "sumstab/convex.hpp"
#include "sumstab/simplex_family.hpp"
#include "sumstab/infconv.hpp"
#include "sumstab/io.hpp"
#include "sumstab/harness/freiman.hpp"
#include "sumstab/harness/stability.hpp"
#include "sumstab/harness/families.hpp"
#include "sumstab/harness/samplers.hpp"
#include "sumstab/harness/suite.hpp"
