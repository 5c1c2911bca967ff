#pragma once

// Umbrella header: genetic-search attribute selection wrapped around a
// k-nearest-neighbor classifier, with data ingestion, normalization,
// stratified cross-validation and deterministic experiment reports.

#include "gaknn/chromosome.hpp"
#include "gaknn/dataset.hpp"
#include "gaknn/errors.hpp"
#include "gaknn/evaluate.hpp"
#include "gaknn/experiment.hpp"
#include "gaknn/genetic.hpp"
#include "gaknn/knn.hpp"
#include "gaknn/normalize.hpp"
#include "gaknn/report.hpp"
#include "gaknn/rng.hpp"
