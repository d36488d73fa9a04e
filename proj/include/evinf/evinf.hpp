#pragma once

#include "evinf/belief.hpp"
#include "evinf/cascade.hpp"
#include "evinf/celf.hpp"
#include "evinf/credit.hpp"
#include "evinf/error.hpp"
#include "evinf/experiment.hpp"
#include "evinf/generator.hpp"
#include "evinf/graph.hpp"
#include "evinf/graph_io.hpp"
#include "evinf/maximizer.hpp"
#include "evinf/measures.hpp"
#include "evinf/metrics.hpp"
#include "evinf/opinion.hpp"
#include "evinf/opinion_cascade.hpp"
#include "evinf/seed_result.hpp"
#include "evinf/spread.hpp"
#include "evinf/text.hpp"
