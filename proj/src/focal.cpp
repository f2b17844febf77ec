#include "focaldec/focal.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "focaldec/dynamics.hpp"
#include "focaldec/errors.hpp"
#include "focaldec/parallel.hpp"
#include "focaldec/renorm.hpp"

namespace focaldec {

namespace {
constexpr double kMergeTol = 1e-9;    // roots closer than this are one root
constexpr double kValueTol = 1e-9;    // extremum-to-level proximity flag
constexpr double kEdgeTol = 1e-7;     // root-to-band-edge proximity flag
constexpr double kTangencyTol = 1e-7; // |f| at a no-crossing local extremum

double h_of(int ell, double t, double v) {
    return v * std::sin(ell * t * (v * v - 1.0));
}

double hprime_of(int ell, double t, double v) {
    const double th = ell * t * (v * v - 1.0);
    return std::sin(th) + 2.0 * ell * t * v * v * std::cos(th);
}
}  // namespace

namespace detail {

Branches decompose_branches(int ell, double t) {
    // h' is even in v; find its zeros on (0, 1) and mirror. Sampling
    // uniformly in the phase theta = t(v^2-1) bounds the number of
    // oscillations between samples; v_j = sqrt(j/N).
    const int N = 64 + static_cast<int>(std::ceil(t * (32.0 / std::numbers::pi)));
    std::vector<double> crits;
    double v_prev = 0.0;
    double f_prev = hprime_of(ell, t, v_prev);
    for (int j = 1; j <= N; ++j) {
        const double v = std::sqrt(static_cast<double>(j) / N);
        const double f = hprime_of(ell, t, v);
        if (f_prev == 0.0) {
            if (v_prev > 0.0) crits.push_back(v_prev);
        } else if (f_prev * f < 0.0) {
            double a = v_prev, b = v, fa = f_prev;
            for (int it = 0; it < 100; ++it) {
                const double mid = 0.5 * (a + b);
                if (mid == a || mid == b) break;
                const double fm = hprime_of(ell, t, mid);
                if ((fm < 0.0) == (fa < 0.0)) {
                    a = mid;
                    fa = fm;
                } else {
                    b = mid;
                }
            }
            crits.push_back(0.5 * (a + b));
        }
        v_prev = v;
        f_prev = f;
    }

    Branches br;
    br.knot.reserve(2 * crits.size() + 3);
    br.knot.push_back(-1.0);
    for (auto it = crits.rbegin(); it != crits.rend(); ++it) br.knot.push_back(-*it);
    if (hprime_of(ell, t, 0.0) == 0.0) br.knot.push_back(0.0);
    for (const double c : crits) br.knot.push_back(c);
    br.knot.push_back(1.0);
    br.value.reserve(br.knot.size());
    for (const double k : br.knot) br.value.push_back(h_of(ell, t, k));
    return br;
}

IndexResult count_branch_roots(const Branches& b, int ell, double t, double x) {
    bool flagged = false;
    std::vector<double> roots;

    // Junction values: a branch extremum at level x is an even-order
    // tangency (not counted); same-direction junctions are odd crossings
    // with horizontal tangent and do count.
    const std::size_t K = b.knot.size();
    for (std::size_t j = 1; j + 1 < K; ++j) {
        if (std::fabs(b.value[j] - x) <= kValueTol) {
            flagged = true;
            const double dl = b.value[j] - b.value[j - 1];
            const double dr = b.value[j + 1] - b.value[j];
            if ((dl > 0.0 && dr > 0.0) || (dl < 0.0 && dr < 0.0))
                roots.push_back(b.knot[j]);
        }
    }
    // One crossing per monotone branch when x lies strictly between the
    // endpoint values. Endpoints v = -1, +1 are excluded (open interval).
    for (std::size_t j = 0; j + 1 < K; ++j) {
        const double ya = b.value[j], yb = b.value[j + 1];
        if (!(x > std::min(ya, yb) && x < std::max(ya, yb))) continue;
        double lo = b.knot[j], hi = b.knot[j + 1];
        const double fa = ya - x;
        for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (mid == lo || mid == hi) break;
            const double fm = h_of(ell, t, mid) - x;
            if ((fm < 0.0) == (fa < 0.0)) lo = mid;
            else hi = mid;
        }
        roots.push_back(0.5 * (lo + hi));
    }

    std::sort(roots.begin(), roots.end());
    int count = 0;
    double last = -2.0;
    for (const double r : roots) {
        if (count > 0 && r - last <= kMergeTol) {
            flagged = true;
            continue;
        }
        ++count;
        last = r;
    }
    return {count, flagged ? CellFlag::NearBoundary : CellFlag::Certain};
}

IndexResult count_roots_scan(const std::vector<double>& scan,
                             const std::function<double(double)>& f, double a,
                             double b) {
    const int n = static_cast<int>(scan.size());
    const double w = (b - a) / n;
    auto midpoint = [&](int i) { return a + (i + 0.5) * w; };

    bool flagged = false;
    std::vector<double> roots;

    int prev_sign = 0;
    int prev_idx = -1;
    for (int i = 0; i < n; ++i) {
        const double fi = scan[i];
        const int s = (fi > 0.0) ? 1 : (fi < 0.0 ? -1 : 0);
        if (s == 0) {
            // exact zero on a sample: a root, but evenness is ambiguous.
            // It also absorbs the surrounding sign transition, so the
            // tracker restarts here rather than bracketing the same root.
            roots.push_back(midpoint(i));
            flagged = true;
            prev_sign = 0;
            continue;
        }
        if (prev_sign != 0 && s != prev_sign) {
            double lo = midpoint(prev_idx), hi = midpoint(i);
            double flo = scan[prev_idx];
            for (int it = 0; it < 100; ++it) {
                const double mid = 0.5 * (lo + hi);
                if (mid == lo || mid == hi || hi - lo < 1e-12) break;
                const double fm = f(mid);
                if ((fm < 0.0) == (flo < 0.0)) {
                    lo = mid;
                    flo = fm;
                } else {
                    hi = mid;
                }
            }
            roots.push_back(0.5 * (lo + hi));
        }
        prev_sign = s;
        prev_idx = i;
    }

    // near-tangency: an interior local extremum of |f| close to zero with
    // no sign change around it
    for (int i = 1; i + 1 < n; ++i) {
        const double fm = scan[i];
        if (std::fabs(fm) > kTangencyTol) continue;
        if (scan[i - 1] * fm > 0.0 && scan[i + 1] * fm > 0.0 &&
            std::fabs(fm) <= std::fabs(scan[i - 1]) &&
            std::fabs(fm) <= std::fabs(scan[i + 1]))
            flagged = true;
    }

    // roots hugging the band edge leave the count uncertain: branches
    // beyond the outermost sample are invisible to the scan
    const double edge_tol = std::max(kEdgeTol, w);
    std::sort(roots.begin(), roots.end());
    int count = 0;
    double last = a - 1.0;
    for (const double r : roots) {
        if (count > 0 && r - last <= kMergeTol) {
            flagged = true;
            continue;
        }
        if (r - a <= edge_tol || b - r <= edge_tol) flagged = true;
        ++count;
        last = r;
    }
    return {count, flagged ? CellFlag::NearBoundary : CellFlag::Certain};
}

}  // namespace detail

IndexResult asymptotic_index(int ell, double t, double x) {
    if (ell != 1 && ell != -1)
        throw std::domain_error("asymptotic_index: ell must be +1 or -1");
    if (!(t >= 0.0)) throw std::domain_error("asymptotic_index: t must be >= 0");
    if (t == 0.0)
        return {x == 0.0 ? kInfiniteIndex : 0, CellFlag::Certain};
    if (std::fabs(x) > 1.0) return {0, CellFlag::Certain};
    const detail::Branches br = detail::decompose_branches(ell, t);
    return detail::count_branch_roots(br, ell, t, x);
}

FocalGrid asymptotic_grid(int ell, double t_max, int t_steps, int x_steps,
                          int threads) {
    if (t_steps < 2 || x_steps < 2)
        throw std::domain_error("asymptotic_grid: resolution must be >= 2 per axis");
    FocalGrid g;
    g.t_axis.resize(t_steps);
    g.x_axis.resize(x_steps);
    for (int i = 0; i < t_steps; ++i) g.t_axis[i] = t_max * i / (t_steps - 1);
    for (int k = 0; k < x_steps; ++k) g.x_axis[k] = -1.0 + 2.0 * k / (x_steps - 1);
    g.index.assign(static_cast<std::size_t>(t_steps) * x_steps, 0);
    g.flag.assign(g.index.size(), CellFlag::Certain);

    parallel_for(t_steps, threads, [&](int it) {
        const double t = g.t_axis[it];
        if (t == 0.0) {
            for (int k = 0; k < x_steps; ++k) {
                const IndexResult r = asymptotic_index(ell, 0.0, g.x_axis[k]);
                g.index[it * x_steps + k] = r.count;
                g.flag[it * x_steps + k] = r.flag;
            }
            return;
        }
        const detail::Branches br = detail::decompose_branches(ell, t);
        for (int k = 0; k < x_steps; ++k) {
            const IndexResult r = detail::count_branch_roots(br, ell, t, g.x_axis[k]);
            g.index[it * x_steps + k] = r.count;
            g.flag[it * x_steps + k] = r.flag;
        }
    });
    return g;
}

namespace {

// physical position of the shooting trajectory q(nu; tau) - q*
double physical_position(const PotentialSpec& p, double nu, double tau, double tol) {
    const double v = nu / (p.mu() * p.omega());
    return p.mu() * trajectory_position(p, v, p.omega() * tau, tol) + p.q_star();
}

void check_band_interval(const PotentialSpec& p, std::pair<double, double> v_band) {
    const double cap = p.mu() * p.omega() * p.v_max();
    if (!(v_band.first < v_band.second) || v_band.first <= -cap ||
        v_band.second >= cap)
        throw band_error("numeric_index: v_band must lie inside the periodic band");
}

}  // namespace

IndexResult numeric_index(const PotentialSpec& p, double t, double x,
                          std::pair<double, double> v_band, int samples,
                          double tol) {
    if (!(t > 0.0)) throw std::domain_error("numeric_index: t must be > 0");
    if (samples < 2) throw std::domain_error("numeric_index: samples must be >= 2");
    check_band_interval(p, v_band);
    auto f = [&](double nu) { return physical_position(p, nu, t, tol) - x; };
    std::vector<double> scan(samples);
    const double w = (v_band.second - v_band.first) / samples;
    for (int i = 0; i < samples; ++i) scan[i] = f(v_band.first + (i + 0.5) * w);
    return detail::count_roots_scan(scan, f, v_band.first, v_band.second);
}

FocalGrid numeric_grid(const PotentialSpec& p, double t_max, int t_steps,
                       double x_max, int x_steps, std::pair<double, double> v_band,
                       int samples, double tol, int threads) {
    if (t_steps < 1 || x_steps < 1)
        throw std::domain_error("numeric_grid: resolution must be >= 1 per axis");
    if (samples < 2) throw std::domain_error("numeric_grid: samples must be >= 2");
    check_band_interval(p, v_band);
    FocalGrid g;
    g.t_axis.resize(t_steps);
    g.x_axis.resize(x_steps);
    for (int j = 0; j < t_steps; ++j) g.t_axis[j] = t_max * (j + 1) / t_steps;
    for (int k = 0; k < x_steps; ++k)
        g.x_axis[k] = -x_max + (k + 0.5) * (2.0 * x_max / x_steps);
    g.index.assign(static_cast<std::size_t>(t_steps) * x_steps, 0);
    g.flag.assign(g.index.size(), CellFlag::Certain);

    // One dense integration per scan velocity covers every t column.
    const double w = (v_band.second - v_band.first) / samples;
    std::vector<double> times_norm(g.t_axis.size());
    for (std::size_t j = 0; j < g.t_axis.size(); ++j)
        times_norm[j] = p.omega() * g.t_axis[j];
    std::vector<std::vector<double>> sweep(samples);
    parallel_for(samples, threads, [&](int i) {
        const double nu = v_band.first + (i + 0.5) * w;
        const double v = nu / (p.mu() * p.omega());
        std::vector<double> xs = sample_positions(p, v, times_norm, tol);
        for (double& val : xs) val = p.mu() * val + p.q_star();
        sweep[i] = std::move(xs);
    });

    parallel_for(t_steps, threads, [&](int j) {
        const double t = g.t_axis[j];
        auto f_at = [&](double nu, double x) {
            return physical_position(p, nu, t, tol) - x;
        };
        std::vector<double> scan(samples);
        for (int k = 0; k < x_steps; ++k) {
            const double x = g.x_axis[k];
            for (int i = 0; i < samples; ++i) scan[i] = sweep[i][j] - x;
            const IndexResult r = detail::count_roots_scan(
                scan, [&](double nu) { return f_at(nu, x); }, v_band.first,
                v_band.second);
            g.index[j * x_steps + k] = r.count;
            g.flag[j * x_steps + k] = r.flag;
        }
    });
    return g;
}

IndexResult renormalized_index(const PotentialSpec& p, int n, double t, double x,
                               int resolution) {
    if (!(t > 0.0)) throw std::domain_error("renormalized_index: t must be > 0");
    if (resolution < 2)
        throw std::domain_error("renormalized_index: resolution must be >= 2");
    auto f = [&](double v) { return renormalized_trajectory(p, n, v, t) - x; };
    std::vector<double> scan(resolution);
    const double w = 2.0 / resolution;
    for (int i = 0; i < resolution; ++i) scan[i] = f(-1.0 + (i + 0.5) * w);
    return detail::count_roots_scan(scan, f, -1.0, 1.0);
}

FocalGrid renormalized_grid(const PotentialSpec& p, int n, double t_max,
                            int t_steps, int x_steps, int resolution,
                            int threads) {
    if (t_steps < 1 || x_steps < 1)
        throw std::domain_error("renormalized_grid: resolution must be >= 1 per axis");
    FocalGrid g;
    g.t_axis.resize(t_steps);
    g.x_axis.resize(x_steps);
    for (int j = 0; j < t_steps; ++j) g.t_axis[j] = t_max * (j + 1) / t_steps;
    for (int k = 0; k < x_steps; ++k)
        g.x_axis[k] = -1.0 + (k + 0.5) * (2.0 / x_steps);
    g.index.assign(static_cast<std::size_t>(t_steps) * x_steps, 0);
    g.flag.assign(g.index.size(), CellFlag::Certain);

    parallel_for(t_steps, threads, [&](int j) {
        const double t = g.t_axis[j];
        std::vector<double> scan(resolution);
        const double w = 2.0 / resolution;
        auto f0 = [&](double v) { return renormalized_trajectory(p, n, v, t); };
        std::vector<double> base(resolution);
        for (int i = 0; i < resolution; ++i) base[i] = f0(-1.0 + (i + 0.5) * w);
        for (int k = 0; k < x_steps; ++k) {
            const double x = g.x_axis[k];
            for (int i = 0; i < resolution; ++i) scan[i] = base[i] - x;
            const IndexResult r = detail::count_roots_scan(
                scan, [&](double v) { return f0(v) - x; }, -1.0, 1.0);
            g.index[j * x_steps + k] = r.count;
            g.flag[j * x_steps + k] = r.flag;
        }
    });
    return g;
}

}  // namespace focaldec
