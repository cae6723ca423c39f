#pragma once

#include "fvs/bit_operators.hpp"
#include "fvs/bitstring.hpp"
#include "fvs/engine.hpp"
#include "fvs/experiment.hpp"
#include "fvs/fitness.hpp"
#include "fvs/gp_tree.hpp"
#include "fvs/hex.hpp"
#include "fvs/properties.hpp"
#include "fvs/random.hpp"
#include "fvs/transforms.hpp"
#include "fvs/tree_operators.hpp"
#include "fvs/truth_table.hpp"
#include "fvs/variation.hpp"
