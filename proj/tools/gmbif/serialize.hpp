#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "acceptance.hpp"
#include "gmbif/bifurcation.hpp"
#include "gmbif/reference.hpp"

namespace gmbif::cli {

using nlohmann::json;

// shortest representation that parses back to the same double
std::string fmt(double v);

json to_json(const Params& p);
json to_json(const State& s);
json to_json(const Vec2& v);
json to_json(const Classification& c);
json to_json(const SectorOrientation& s);
json to_json(const Jet2& j, const std::string& family, double zero_tol = 0.0);
json to_json(const NormalFormReport& r);
json to_json(const SaddleNodeReport& r);
json to_json(const CycleSearch& c);
json to_json(const HopfReport& r);
json to_json(const CuspReport& r);
json to_json(const UnfoldingReport& r);
json to_json(const ScanResult& r);
json to_json(const Trajectory& t);
json to_json(const std::vector<CoefficientCheck>& checks);
json to_json(const acceptance::Result& r);

struct Row {
  Equilibrium eq;
  std::string kind;
};

std::string equilibria_csv(const std::vector<Row>& rows);
std::string scan_csv(const ScanResult& r);
std::string trajectory_csv(const Trajectory& t);

struct SvgTrack {
  const Trajectory* traj = nullptr;
  bool backward = false;
};

std::string portrait_svg(const Params& p, const std::vector<SvgTrack>& tracks,
                         const std::vector<Equilibrium>& eqs);

} // namespace gmbif::cli
