#pragma once

#include "kwpart/analysis.hpp"
#include "kwpart/certificates.hpp"
#include "kwpart/error.hpp"
#include "kwpart/formula_oracle.hpp"
#include "kwpart/formulations.hpp"
#include "kwpart/lp_format.hpp"
#include "kwpart/milp_model.hpp"
#include "kwpart/partition_number.hpp"
#include "kwpart/partition_tree.hpp"
#include "kwpart/random.hpp"
#include "kwpart/rational.hpp"
#include "kwpart/relation.hpp"
#include "kwpart/simplex.hpp"
#include "kwpart/truth_table.hpp"
#include "kwpart/verification.hpp"
