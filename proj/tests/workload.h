#pragma once

// Random update sets for session tests.

#include <random>
#include <string>
#include <vector>

#include "teamsim/inc_engine.h"

namespace workload {

// Random units over the current state. Units may be invalid (or leave P
// disconnected) when several land in the same set.
class UnitSource {
 public:
  UnitSource(std::uint64_t seed, std::vector<std::string> labels, std::vector<teamsim::Interval> caps)
      : rng_(seed), labels_(std::move(labels)), caps_(std::move(caps)) {}

  // mode 0 mixes pattern and data units, 1 is pattern only, 2 is data only.
  teamsim::UpdateSet make(const teamsim::Session& s, std::size_t units, int mode);

 private:
  void pattern_unit(const teamsim::PatternGraph& p, teamsim::UpdateSet& set);
  void data_unit(const teamsim::DataGraph& g, teamsim::UpdateSet& set);

  std::mt19937_64 rng_;
  std::vector<std::string> labels_;
  std::vector<teamsim::Interval> caps_;
  std::size_t fresh_ = 0;
  std::vector<std::string> deleted_;
};

}  // namespace workload
