#include "prion/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include "prion/errors.hpp"

namespace prion {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_trajectory_csv(const std::filesystem::path& path, const OdeTrajectory& traj) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open " + path.string() + " for writing");
    out << "t,U,V,P\n";
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        const auto& s = traj.states[i];
        out << format_double(traj.times[i]) << ',' << format_double(s.U) << ','
            << format_double(s.V) << ',' << format_double(s.P) << '\n';
    }
}

void write_density_csv(const std::filesystem::path& path, const Density& u) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open " + path.string() + " for writing");
    out << "x,u\n";
    for (std::size_t i = 0; i < u.values.size(); ++i)
        out << format_double(u.grid.node(i)) << ',' << format_double(u.values[i]) << '\n';
}

Density read_density_csv(const std::filesystem::path& path, Frame frame) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path.string());
    std::string line;
    if (!std::getline(in, line) || line != "x,u")
        throw Error(path.string() + ": expected header x,u");
    std::vector<double> xs, vs;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos) throw Error(path.string() + ": malformed row");
        xs.push_back(std::stod(line.substr(0, comma)));
        vs.push_back(std::stod(line.substr(comma + 1)));
    }
    if (xs.size() < 3) throw Error(path.string() + ": too few rows");
    Grid g(xs.front(), xs.back(), static_cast<int>(xs.size()) - 1);
    return Density(g, std::move(vs), frame);
}

} // namespace prion
