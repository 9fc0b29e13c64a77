#pragma once

// Umbrella header: self-paced low-redundancy unsupervised feature selection,
// with the graph builders, clustering metrics and benchmark harness around it.

#include "splr/baselines.hpp"
#include "splr/clustering.hpp"
#include "splr/core.hpp"
#include "splr/data.hpp"
#include "splr/evaluate.hpp"
#include "splr/experiment.hpp"
#include "splr/graphs.hpp"
#include "splr/hungarian.hpp"
#include "splr/io.hpp"
#include "splr/metrics.hpp"
#include "splr/self_paced.hpp"
#include "splr/solver.hpp"
#include "splr/wilcoxon.hpp"
