#include "sweep/csv.hpp"

#include <charconv>
#include <cmath>
#include <ostream>

namespace sweep {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) return "0";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

namespace {

void coordinate_header(std::ostream& os, const char* prefix, Eigen::Index n) {
  for (Eigen::Index i = 1; i <= n; ++i) os << ',' << prefix << '_' << i;
}

void coordinates(std::ostream& os, const Vec& x) {
  for (Eigen::Index i = 0; i < x.size(); ++i) os << ',' << format_double(x[i]);
}

}  // namespace

void write_trajectory_csv(std::ostream& os, const Trajectory& traj) {
  const Eigen::Index n = traj.points.empty() ? 0 : traj.points.front().size();
  os << 't';
  coordinate_header(os, "x", n);
  os << ",step_speed,cum_length,is_breakpoint\n";
  for (std::size_t k = 0; k < traj.points.size(); ++k) {
    os << format_double(traj.times[k]);
    coordinates(os, traj.points[k]);
    os << ',' << format_double(k == 0 ? 0.0 : traj.step_speeds[k - 1]) << ','
       << format_double(traj.cum_length[k]) << ','
       << (traj.is_breakpoint(k) ? 1 : 0) << '\n';
  }
}

void write_talweg_csv(std::ostream& os, const TalwegProfile& p, int dimension) {
  os << "r,phi";
  coordinate_header(os, "witness", dimension);
  os << '\n';
  for (std::size_t i = 0; i < p.size(); ++i) {
    os << format_double(p.r[i]) << ','
       << format_double(p.empty[i] ? std::nan("") : p.phi[i]);
    if (p.witness[i]) {
      coordinates(os, *p.witness[i]);
    } else {
      for (int d = 0; d < dimension; ++d) os << ',';
    }
    os << '\n';
  }
}

void write_desing_csv(std::ostream& os, const DesingMap& map) {
  os << "r,Phi\n";
  if (map.has_head()) {
    os << format_double(map.a()) << ',' << format_double(map.a()) << '\n';
  }
  for (std::size_t i = 0; i < map.knots().size(); ++i) {
    os << format_double(map.knots()[i]) << ','
       << format_double(map.Phi_knots()[i]) << '\n';
  }
}

void write_bridge_csv(std::ostream& os, const BridgeResult& r) {
  const auto& u = r.swept.trajectory;
  const Eigen::Index n = u.points.empty() ? 0 : u.points.front().size();
  os << 's';
  coordinate_header(os, "u", n);
  os << ",inclusion_residual,value_residual\n";
  for (std::size_t k = 0; k < u.points.size(); ++k) {
    os << format_double(u.times[k]);
    coordinates(os, u.points[k]);
    const double inc = k < r.inclusion_residuals.size() ? r.inclusion_residuals[k]
                                                        : std::nan("");
    const double val = k < r.value_residuals.size() ? r.value_residuals[k]
                                                    : std::nan("");
    os << ',' << format_double(inc) << ',' << format_double(val) << '\n';
  }
}

void write_length_study_csv(std::ostream& os, const LengthStudy& study) {
  os << "h,length,gap_to_next,breakpoints,status\n";
  for (std::size_t i = 0; i < study.samples.size(); ++i) {
    const auto& s = study.samples[i];
    os << format_double(s.h) << ',' << format_double(s.length) << ','
       << (i < study.gaps.size() ? format_double(study.gaps[i]) : std::string())
       << ',' << s.breakpoints << ',' << to_string(s.status) << '\n';
  }
}

}  // namespace sweep
