#include "focaldec/gridio.hpp"

#include <cmath>
#include <cstdio>

namespace focaldec {

std::string format_value(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_trajectory_csv(std::ostream& os, const TrajectorySample& s) {
    os << "t,x,xdot,energy\n";
    for (std::size_t i = 0; i < s.t.size(); ++i)
        os << format_value(s.t[i]) << ',' << format_value(s.x[i]) << ','
           << format_value(s.xdot[i]) << ',' << format_value(s.energy[i]) << '\n';
}

void write_period_csv(std::ostream& os, std::span<const double> v,
                      std::span<const double> T, double fit) {
    os << "v,T\n";
    for (std::size_t i = 0; i < v.size(); ++i)
        os << format_value(v[i]) << ',' << format_value(T[i]) << '\n';
    if (std::isfinite(fit))
        os << "# v2_coefficient," << format_value(fit) << '\n';
}

void write_convergence_csv(std::ostream& os, std::span<const ConvergenceRow> rows) {
    os << "n,sup_error,window\n";
    for (const auto& r : rows)
        os << r.n << ',' << format_value(r.sup_error) << ','
           << format_value(r.window) << '\n';
}

void write_convergence_cells_csv(std::ostream& os,
                                 std::span<const ConvergenceCell> cells) {
    os << "n,v,t,x_n,X,abs_err\n";
    for (const auto& c : cells)
        os << c.n << ',' << format_value(c.v) << ',' << format_value(c.t) << ','
           << format_value(c.x_n) << ',' << format_value(c.X) << ','
           << format_value(c.abs_err) << '\n';
}

void write_focal_csv(std::ostream& os, const FocalGrid& g) {
    os << "t,x,index,flag\n";
    const std::size_t nx = g.x_axis.size();
    for (std::size_t it = 0; it < g.t_axis.size(); ++it)
        for (std::size_t ix = 0; ix < nx; ++ix) {
            os << format_value(g.t_axis[it]) << ',' << format_value(g.x_axis[ix])
               << ',';
            const int idx = g.index[it * nx + ix];
            if (idx == kInfiniteIndex) os << "inf";
            else os << idx;
            os << ','
               << (g.flag[it * nx + ix] == CellFlag::Certain ? "certain"
                                                             : "near-boundary")
               << '\n';
        }
}

void write_focal_pgm(std::ostream& os, const FocalGrid& g) {
    const std::size_t nt = g.t_axis.size(), nx = g.x_axis.size();
    os << "P2\n" << nt << ' ' << nx << "\n255\n";
    int per_line = 0;
    for (std::size_t row = nx; row-- > 0;) {
        for (std::size_t it = 0; it < nt; ++it) {
            const int idx = g.index[it * nx + row];
            const int grey = (idx == kInfiniteIndex) ? 255 : (idx > 254 ? 254 : idx);
            os << grey;
            if (++per_line == 18) {
                os << '\n';
                per_line = 0;
            } else {
                os << ' ';
            }
        }
    }
    if (per_line != 0) os << '\n';
}

}  // namespace focaldec
