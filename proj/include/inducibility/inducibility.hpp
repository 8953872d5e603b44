#pragma once

#include "counting.hpp"
#include "errors.hpp"
#include "experiment.hpp"
#include "extremal.hpp"
#include "lemmas.hpp"
#include "parallel.hpp"
#include "plane_tree.hpp"
#include "random.hpp"
#include "rational.hpp"
#include "tanglegram.hpp"
#include "tree_shape.hpp"
#include "tree_text.hpp"
