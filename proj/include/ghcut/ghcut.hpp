#pragma once

#include "ghcut/certificate.hpp"
#include "ghcut/graph.hpp"
#include "ghcut/io.hpp"
#include "ghcut/isolating_cuts.hpp"
#include "ghcut/maxflow.hpp"
#include "ghcut/partial_tree.hpp"
#include "ghcut/pipeline.hpp"
#include "ghcut/refine.hpp"
#include "ghcut/rng.hpp"
#include "ghcut/sstmincut.hpp"
#include "ghcut/wellinked.hpp"
