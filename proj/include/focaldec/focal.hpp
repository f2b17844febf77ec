#ifndef FOCALDEC_FOCAL_HPP
#define FOCALDEC_FOCAL_HPP

#include <functional>
#include <limits>
#include <utility>
#include <vector>

#include "focaldec/potentials.hpp"

namespace focaldec {

/// Sentinel index for sigma-infinity cells (the base point itself).
inline constexpr int kInfiniteIndex = std::numeric_limits<int>::max();

enum class CellFlag : unsigned char { Certain = 0, NearBoundary = 1 };

/// A solution count for one endpoint (t, x).
struct IndexResult {
    int count;
    CellFlag flag;
};

/// Rectangular (t, x) lattice of focal indices with per-cell flags.
/// index and flag are row-major with t outermost: cell(it, ix) lives at
/// it * x_axis.size() + ix.
struct FocalGrid {
    std::vector<double> t_axis;
    std::vector<double> x_axis;
    std::vector<int> index;
    std::vector<CellFlag> flag;

    int at(std::size_t it, std::size_t ix) const { return index[it * x_axis.size() + ix]; }
    CellFlag flag_at(std::size_t it, std::size_t ix) const {
        return flag[it * x_axis.size() + ix];
    }
};

/// Number of distinct v in the open interval (-1, 1) solving
/// X_ell(v; t) = x, by monotone-branch enumeration of
/// h(v) = v sin(ell t (v^2 - 1)).
///
/// Branch breakpoints are the zeros of h', located by a sign-change scan
/// (uniform in the phase variable) plus bisection; each monotone branch
/// contributes at most one crossing. Roots closer than 1e-9 merge, and a
/// cell is flagged NearBoundary when a branch extremum lies within 1e-9
/// of x. (t, x) = (0, 0) returns kInfiniteIndex.
IndexResult asymptotic_index(int ell, double t, double x);

/// asymptotic_index over the inclusive lattice [0, t_max] x [-1, 1].
FocalGrid asymptotic_grid(int ell, double t_max, int t_steps, int x_steps,
                          int threads = 1);

/// Shooting count for a concrete potential, in physical coordinates:
/// the number of initial speeds nu in v_band with q(nu; t) = x, where
/// trajectories launch from the equilibrium q* at time 0.
///
/// v |-> q(nu; t) - x is scanned on `samples` midpoints of v_band and
/// every sign change is refined by bisection. Even-order contacts within
/// tolerance are flagged, not counted; the count is flagged when any
/// root lies within one scan cell (at least 1e-7) of the band edge,
/// where truncation can hide further branches.
IndexResult numeric_index(const PotentialSpec& p, double t, double x,
                          std::pair<double, double> v_band, int samples,
                          double tol = 1e-10);

/// numeric_index over t in (0, t_max] (t_steps samples, endpoint
/// included) and x on `x_steps` midpoints of (-x_max, x_max).
FocalGrid numeric_grid(const PotentialSpec& p, double t_max, int t_steps,
                       double x_max, int x_steps, std::pair<double, double> v_band,
                       int samples, double tol = 1e-10, int threads = 1);

/// Root count of v |-> x_n(v; t) - x over v in (-1, 1), the empirical
/// probe of convergence of renormalized decompositions; for large n it
/// agrees with asymptotic_index away from region boundaries.
IndexResult renormalized_index(const PotentialSpec& p, int n, double t, double x,
                               int resolution);

/// renormalized_index over the same lattice convention as numeric_grid
/// with x_max = 1.
FocalGrid renormalized_grid(const PotentialSpec& p, int n, double t_max,
                            int t_steps, int x_steps, int resolution,
                            int threads = 1);

namespace detail {

/// Scan-and-refine root counting shared by the shooting paths.
/// `scan` holds f at the `samples` midpoints of (a, b); `f` re-evaluates
/// at arbitrary points for refinement.
IndexResult count_roots_scan(const std::vector<double>& scan,
                             const std::function<double(double)>& f, double a,
                             double b);

/// Monotone-branch decomposition of h(v) = v sin(ell t (v^2-1)) on [-1, 1].
struct Branches {
    std::vector<double> knot;   // ascending, first -1 and last +1
    std::vector<double> value;  // h at each knot
};
Branches decompose_branches(int ell, double t);
IndexResult count_branch_roots(const Branches& b, int ell, double t, double x);

}  // namespace detail

}  // namespace focaldec

#endif
