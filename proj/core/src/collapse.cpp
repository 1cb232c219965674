#include "ccmnet/collapse.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "ccmnet/errors.hpp"

namespace ccmnet {

namespace {

constexpr int kGridPoints = 64;

struct LogCurve {
  std::vector<double> x;  // log10, strictly increasing
  std::vector<double> y;
};

double interp(const LogCurve& c, double x) {
  auto it = std::lower_bound(c.x.begin(), c.x.end(), x);
  if (it == c.x.begin()) return c.y.front();
  if (it == c.x.end()) return c.y.back();
  std::size_t hi = static_cast<std::size_t>(it - c.x.begin());
  std::size_t lo = hi - 1;
  double t = (x - c.x[lo]) / (c.x[hi] - c.x[lo]);
  return c.y[lo] + t * (c.y[hi] - c.y[lo]);
}

}  // namespace

double collapse_score(const std::map<int, Histogram>& histograms, double eta,
                      double zeta) {
  if (histograms.size() < 2)
    throw InsufficientDataError("collapse needs >= 2 system sizes");
  std::vector<LogCurve> curves;
  double overlap_lo = -1e300, overlap_hi = 1e300;
  for (const auto& [n, hist] : histograms) {
    double logn = std::log10(static_cast<double>(n));
    LogCurve c;
    for (std::size_t b = 0; b < hist.n_bins(); ++b) {
      if (hist.counts[b] == 0) continue;
      c.x.push_back(std::log10(hist.center(b)) - zeta * logn);
      c.y.push_back(std::log10(hist.density[b]) + eta * logn);
    }
    if (c.x.size() < 2) throw NoOverlapError("curve with < 2 occupied bins");
    overlap_lo = std::max(overlap_lo, c.x.front());
    overlap_hi = std::min(overlap_hi, c.x.back());
    curves.push_back(std::move(c));
  }
  if (!(overlap_hi > overlap_lo))
    throw NoOverlapError("no overlapping support after rescaling");
  for (const auto& c : curves) {
    std::size_t inside = 0;
    for (double x : c.x)
      if (x >= overlap_lo && x <= overlap_hi) ++inside;
    if (inside < 4)
      throw NoOverlapError("curve with < 4 points in the overlap window");
  }
  double score = 0.0;
  for (int g = 0; g < kGridPoints; ++g) {
    double x = overlap_lo + (overlap_hi - overlap_lo) * (g + 0.5) / kGridPoints;
    double mean = 0.0;
    std::vector<double> ys(curves.size());
    for (std::size_t c = 0; c < curves.size(); ++c) {
      ys[c] = interp(curves[c], x);
      mean += ys[c];
    }
    mean /= static_cast<double>(curves.size());
    for (double y : ys) score += (y - mean) * (y - mean);
  }
  return score / (kGridPoints * static_cast<double>(curves.size()));
}

namespace {

double safe_score(const std::map<int, Histogram>& histograms, double eta,
                  double zeta) {
  try {
    return collapse_score(histograms, eta, zeta);
  } catch (const NoOverlapError&) {
    return 1e300;
  }
}

}  // namespace

ScalingCollapse optimize_collapse(const std::map<int, Histogram>& histograms,
                                  const CollapseBox& box) {
  if (!(box.eta_hi > box.eta_lo) || !(box.zeta_hi > box.zeta_lo))
    throw std::invalid_argument("empty collapse search box");
  const double step = 0.02;
  double best_eta = box.eta_lo, best_zeta = box.zeta_lo, best = 1e300;
  for (double eta = box.eta_lo; eta <= box.eta_hi + 1e-12; eta += step) {
    for (double zeta = box.zeta_lo; zeta <= box.zeta_hi + 1e-12; zeta += step) {
      double s = safe_score(histograms, eta, zeta);
      if (s < best) {
        best = s;
        best_eta = eta;
        best_zeta = zeta;
      }
    }
  }
  if (best >= 1e300)
    throw NoOverlapError("no (eta, zeta) in the box yields overlapping support");

  // Nelder-Mead on (eta, zeta) seeded at the grid optimum.
  struct Vertex {
    double e, z, f;
  };
  // Out-of-box points score worst so the refinement cannot leave the box.
  auto eval = [&](double e, double z) {
    if (e < box.eta_lo || e > box.eta_hi || z < box.zeta_lo || z > box.zeta_hi)
      return 1e300;
    return safe_score(histograms, e, z);
  };
  std::vector<Vertex> simplex = {
      {best_eta, best_zeta, best},
      {best_eta + step, best_zeta, eval(best_eta + step, best_zeta)},
      {best_eta, best_zeta + step, eval(best_eta, best_zeta + step)},
  };
  for (int iter = 0; iter < 200; ++iter) {
    std::sort(simplex.begin(), simplex.end(),
              [](const Vertex& a, const Vertex& b) { return a.f < b.f; });
    if (simplex[2].f - simplex[0].f < 1e-12) break;
    double ce = (simplex[0].e + simplex[1].e) / 2;
    double cz = (simplex[0].z + simplex[1].z) / 2;
    Vertex& worst = simplex[2];
    double re = ce + (ce - worst.e), rz = cz + (cz - worst.z);
    double fr = eval(re, rz);
    if (fr < simplex[0].f) {
      double ee = ce + 2 * (ce - worst.e), ez = cz + 2 * (cz - worst.z);
      double fe = eval(ee, ez);
      worst = fe < fr ? Vertex{ee, ez, fe} : Vertex{re, rz, fr};
    } else if (fr < simplex[1].f) {
      worst = {re, rz, fr};
    } else {
      double se = ce + 0.5 * (worst.e - ce), sz = cz + 0.5 * (worst.z - cz);
      double fs = eval(se, sz);
      if (fs < worst.f) {
        worst = {se, sz, fs};
      } else {
        for (int v = 1; v < 3; ++v) {
          simplex[v].e = simplex[0].e + 0.5 * (simplex[v].e - simplex[0].e);
          simplex[v].z = simplex[0].z + 0.5 * (simplex[v].z - simplex[0].z);
          simplex[v].f = eval(simplex[v].e, simplex[v].z);
        }
      }
    }
  }
  std::sort(simplex.begin(), simplex.end(),
            [](const Vertex& a, const Vertex& b) { return a.f < b.f; });
  ScalingCollapse result;
  result.eta = simplex[0].e;
  result.zeta = simplex[0].z;
  result.score = simplex[0].f;
  result.derived_gamma = result.eta / result.zeta;
  return result;
}

}  // namespace ccmnet
