#include "martinet/csv.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>

namespace martinet::csv {

namespace {

constexpr std::string_view kTrajectoryHeader = "t,x,y,z,px,py,pz,H";
constexpr std::string_view kSweepHeader = "theta0,eps,t1,k,K,R,one_minus_R,status";

class Row {
 public:
  explicit Row(std::ostream& os) : os_(os) {}
  Row& operator<<(double v) {
    sep();
    std::array<char, 32> buf{};
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v,
                                   std::chars_format::general, 17);
    os_.write(buf.data(), end - buf.data());
    return *this;
  }
  Row& operator<<(std::string_view s) {
    sep();
    os_ << s;
    return *this;
  }
  ~Row() { os_ << '\n'; }

 private:
  void sep() {
    if (!first_) os_ << ',';
    first_ = false;
  }
  std::ostream& os_;
  bool first_ = true;
};

double parse_double(std::string_view field, std::size_t line) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc() || ptr != field.data() + field.size())
    throw std::runtime_error("line " + std::to_string(line) + ": bad number '" + std::string(field) + "'");
  return v;
}

}  // namespace

void write_trajectory(std::ostream& os, const Trajectory& traj) {
  os << kTrajectoryHeader << '\n';
  for (std::size_t n = 0; n < traj.size(); ++n) {
    const PhaseState& s = traj.states[n];
    Row(os) << traj.times[n] << s.x << s.y << s.z << s.px << s.py << s.pz << traj.energies[n];
  }
}

Trajectory read_trajectory(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != kTrajectoryHeader)
    throw std::runtime_error("missing trajectory header");

  Trajectory traj;
  std::size_t lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::array<double, 8> v{};
    std::size_t pos = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
      const std::size_t comma = line.find(',', pos);
      const bool last = i + 1 == v.size();
      if (last != (comma == std::string::npos))
        throw std::runtime_error("line " + std::to_string(lineno) + ": expected 8 fields");
      const std::string_view field(line.data() + pos, (last ? line.size() : comma) - pos);
      v[i] = parse_double(field, lineno);
      pos = comma + 1;
    }
    traj.times.push_back(v[0]);
    traj.states.push_back({v[1], v[2], v[3], v[4], v[5], v[6]});
    traj.energies.push_back(v[7]);
  }
  return traj;
}

void write_sweep(std::ostream& os, const std::vector<SweepRecord>& records) {
  os << kSweepHeader << '\n';
  for (const SweepRecord& r : records) {
    std::string status = r.status;
    std::replace(status.begin(), status.end(), ',', ';');
    Row(os) << r.theta0 << r.eps << r.t1 << r.k << r.K << r.R << r.one_minus_R << status;
  }
}

}  // namespace martinet::csv
