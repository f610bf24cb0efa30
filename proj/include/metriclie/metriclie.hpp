#pragma once

#include "metriclie/catalog.hpp"
#include "metriclie/centroid.hpp"
#include "metriclie/complex_structures.hpp"
#include "metriclie/decompose.hpp"
#include "metriclie/io.hpp"
#include "metriclie/lie_algebra.hpp"
#include "metriclie/metric_lab.hpp"
