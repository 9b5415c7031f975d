#ifndef TREEDOM_TREEDOM_HPP
#define TREEDOM_TREEDOM_HPP

#include "treedom/chain.hpp"
#include "treedom/common.hpp"
#include "treedom/domination.hpp"
#include "treedom/exact.hpp"
#include "treedom/fuzzy.hpp"
#include "treedom/ising.hpp"
#include "treedom/maxflow.hpp"
#include "treedom/potts_exact.hpp"
#include "treedom/sampler.hpp"
#include "treedom/tree.hpp"

#endif
