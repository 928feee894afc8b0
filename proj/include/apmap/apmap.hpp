#pragma once

#include "apmap/error.hpp"
#include "apmap/rng.hpp"
#include "apmap/core.hpp"
#include "apmap/election_io.hpp"
#include "apmap/cultures.hpp"
#include "apmap/assignment.hpp"
#include "apmap/metrics.hpp"
#include "apmap/committees.hpp"
#include "apmap/correlation.hpp"
#include "apmap/embedding.hpp"
#include "apmap/pabulib.hpp"
#include "apmap/experiments.hpp"
#include "apmap/render.hpp"
