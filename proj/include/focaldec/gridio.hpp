#ifndef FOCALDEC_GRIDIO_HPP
#define FOCALDEC_GRIDIO_HPP

#include <ostream>
#include <span>
#include <string>

#include "focaldec/dynamics.hpp"
#include "focaldec/focal.hpp"
#include "focaldec/renorm.hpp"

namespace focaldec {

/// One double, 17 significant digits ("%.17g"): enough to round-trip and
/// byte-stable across runs.
std::string format_value(double v);

void write_trajectory_csv(std::ostream& os, const TrajectorySample& s);

/// Rows v,T; when `fit` is finite a trailing comment line carries the
/// fitted v^2 coefficient.
void write_period_csv(std::ostream& os, std::span<const double> v,
                      std::span<const double> T, double fit);

void write_convergence_csv(std::ostream& os, std::span<const ConvergenceRow> rows);
void write_convergence_cells_csv(std::ostream& os,
                                 std::span<const ConvergenceCell> cells);

/// Header t,x,index,flag; index "inf" for the sigma-infinity sentinel,
/// flag "certain" or "near-boundary".
void write_focal_csv(std::ostream& os, const FocalGrid& g);

/// Plain PGM (P2), one grey level per index. Width is the t axis, rows
/// run from x_max down to x_min; counts clip at 254 and 255 means infinity.
void write_focal_pgm(std::ostream& os, const FocalGrid& g);

}  // namespace focaldec

#endif
