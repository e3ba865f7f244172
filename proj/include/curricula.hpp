#pragma once

#include "curricula/anova.hpp"
#include "curricula/error.hpp"
#include "curricula/fdist.hpp"
#include "curricula/graph.hpp"
#include "curricula/io.hpp"
#include "curricula/metrics.hpp"
#include "curricula/model.hpp"
#include "curricula/random.hpp"
#include "curricula/report.hpp"
#include "curricula/stats.hpp"
#include "curricula/study.hpp"
#include "curricula/svg.hpp"
#include "curricula/synthgen.hpp"
#include "curricula/validate.hpp"
