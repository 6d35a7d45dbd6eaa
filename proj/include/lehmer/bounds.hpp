#pragma once

/**
 * @file bounds.hpp
 * @brief Evaluators for the Mahler-measure / field-degree / volume / systole inequality chain.
 *
 *   log M(P)  >= c1 (log log d / log d)^3                 (Dobrowolski-type)
 *   deg(k)    >= d / 2
 *   deg(k)    <= c2 log Vol + c3
 *   Syst1     >= c1 (log log L / log L)^3,  L = c_agg log Vol   (or c2 log Vol + c3)
 *   Vol       >= c_n / Syst1^(n - 2)                       (non-arithmetic construction)
 *
 * None of the default constants are literature values; they are placeholders
 * that callers are expected to override.
 */

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <ostream>
#include <string>
#include <vector>

#include "lehmer/errors.hpp"

namespace lehmer {

struct BoundConstants {
  double c1 = 0.25;
  double c2 = 1.0;
  double c3 = 0.0;
  double c_agg = 1.0;
  double c_n = 1.0;
  int dim_n = 3;

  /// Throws DomainError unless c1, c2, c_agg, c_n > 0 and dim_n >= 3.
  void validate() const {
    if (!(c1 > 0)) throw DomainError("c1 must be positive");
    if (!(c2 > 0)) throw DomainError("c2 must be positive");
    if (!std::isfinite(c3)) throw DomainError("c3 must be finite");
    if (!(c_agg > 0)) throw DomainError("c_agg must be positive");
    if (!(c_n > 0)) throw DomainError("c_n must be positive");
    if (dim_n < 3) throw DomainError("dim_n must be >= 3 (exponent n - 2 must be >= 1)");
  }

  static BoundConstants make(double c1, double c2, double c3, double c_agg, double c_n, int dim_n) {
    BoundConstants k{c1, c2, c3, c_agg, c_n, dim_n};
    k.validate();
    return k;
  }
};

/// c1 (log log x / log x)^3 for real x > 1.
inline double dobrowolski_form(double x, double c1) {
  if (!(x > 1)) throw DomainError("Dobrowolski form needs an argument > 1");
  const double lx = std::log(x);
  const double r = std::log(lx) / lx;
  return c1 * r * r * r;
}

/// Lower bound for log M(P), deg P = d >= 2. Negative (vacuous) values for
/// small d are returned unchanged.
inline double dobrowolski_lower_bound(int d, const BoundConstants& k) {
  if (d < 2) throw DomainError("Dobrowolski bound needs degree >= 2");
  k.validate();
  return dobrowolski_form(static_cast<double>(d), k.c1);
}

inline double field_degree_lower_bound(int d) {
  if (d < 1) throw DomainError("degree must be >= 1");
  return static_cast<double>(d) / 2.0;
}

inline double degree_volume_upper_bound(double vol, const BoundConstants& k) {
  if (!(vol > 0)) throw DomainError("volume must be positive");
  k.validate();
  return k.c2 * std::log(vol) + k.c3;
}

enum class ChainForm { PurePower, Affine };

inline const char* to_string(ChainForm f) { return f == ChainForm::PurePower ? "pure-power" : "affine"; }

/// c3 = 0 uses L = c_agg log Vol; otherwise L = c2 log Vol + c3.
inline ChainForm chain_form(const BoundConstants& k) { return k.c3 == 0.0 ? ChainForm::PurePower : ChainForm::Affine; }

inline double chain_argument(double vol, const BoundConstants& k) {
  return chain_form(k) == ChainForm::PurePower ? k.c_agg * std::log(vol) : k.c2 * std::log(vol) + k.c3;
}

/// Smallest volume with L >= e, where log log L >= 0.
inline double minimum_admissible_volume(const BoundConstants& k) {
  return chain_form(k) == ChainForm::PurePower ? std::exp(std::numbers::e / k.c_agg)
                                               : std::exp((std::numbers::e - k.c3) / k.c2);
}

/// Smallest volume from which the bound decreases in Vol (L >= e^e).
inline double monotone_regime_volume(const BoundConstants& k) {
  const double ee = std::exp(std::numbers::e);
  return chain_form(k) == ChainForm::PurePower ? std::exp(ee / k.c_agg) : std::exp((ee - k.c3) / k.c2);
}

inline double systole_volume_lower_bound(double vol, const BoundConstants& k) {
  if (!(vol > 0)) throw DomainError("volume must be positive");
  k.validate();
  const double L = chain_argument(vol, k);
  // Allow the last ulp below e so that vol = e^e lands on the boundary value 0.
  if (!(L >= std::numbers::e * (1 - 4 * std::numeric_limits<double>::epsilon())))
    throw DomainError("volume below the validity threshold: minimum admissible volume is " +
                      std::to_string(minimum_admissible_volume(k)));
  const double lL = std::log(L);
  const double llL = std::max(0.0, std::log(lL));
  const double r = llL / lL;
  return k.c1 * r * r * r;
}

inline double theorem1b_volume_lower_bound(double systole, const BoundConstants& k) {
  if (!(systole > 0)) throw DomainError("systole must be positive");
  k.validate();
  return k.c_n / std::pow(systole, k.dim_n - 2);
}

struct GrowthRow {
  double volume;
  double arith_syst_lb;
  double nonarith_syst_ub;  ///< (c_n / vol)^(1 / (n - 2))
};

/// Log-spaced volumes from vol_min to vol_max (both included).
inline std::vector<GrowthRow> growth_table(double vol_min, double vol_max, int steps, const BoundConstants& k) {
  if (steps < 2) throw DomainError("growth table needs at least 2 steps");
  if (!(vol_min > 0) || !(vol_min < vol_max)) throw DomainError("growth table needs 0 < vol_min < vol_max");
  k.validate();
  std::vector<GrowthRow> rows;
  const double lmin = std::log(vol_min), lmax = std::log(vol_max);
  for (int i = 0; i < steps; ++i) {
    double vol = i == 0 ? vol_min
                 : i == steps - 1 ? vol_max
                                  : std::exp(lmin + (lmax - lmin) * static_cast<double>(i) / (steps - 1));
    rows.push_back({vol, systole_volume_lower_bound(vol, k), std::pow(k.c_n / vol, 1.0 / (k.dim_n - 2))});
  }
  return rows;
}

inline constexpr const char* kGrowthCsvHeader = "volume,arith_syst_lb,nonarith_syst_ub";

inline void write_growth_csv(std::ostream& os, const std::vector<GrowthRow>& rows) {
  char buf[128];
  os << kGrowthCsvHeader << '\n';
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", r.volume, r.arith_syst_lb, r.nonarith_syst_ub);
    os << buf;
  }
}

}  // namespace lehmer
