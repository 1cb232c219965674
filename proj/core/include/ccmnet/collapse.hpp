#pragma once

#include <map>

#include "ccmnet/histogram.hpp"

namespace ccmnet {

struct CollapseBox {
  double eta_lo = 0.5;
  double eta_hi = 3.0;
  double zeta_lo = 0.2;
  double zeta_hi = 1.5;
};

struct ScalingCollapse {
  double eta = 0.0;
  double zeta = 0.0;
  double score = 0.0;
  double derived_gamma = 0.0;  // eta / zeta
};

// Mean squared log-deviation between curves rescaled to
// (x / N^zeta, density * N^eta), interpolated on a shared log grid over the
// overlapping support. Zero for a perfect collapse.
double collapse_score(const std::map<int, Histogram>& histograms, double eta,
                      double zeta);

// Coarse grid search (step 0.02) followed by Nelder-Mead refinement;
// deterministic for a given input.
ScalingCollapse optimize_collapse(const std::map<int, Histogram>& histograms,
                                  const CollapseBox& box);

}  // namespace ccmnet
