#ifndef TUPLEVO_EVO_FITNESS_HPP
#define TUPLEVO_EVO_FITNESS_HPP

#include <vector>

namespace tuplevo::evo {

// Mean relative gap against per-instance reference objectives; lower is
// better and 0 means parity with the references.
double fitness_rel_gap(const std::vector<double>& objectives,
                       const std::vector<double>& references);

// Arithmetic mean of the raw objectives.
double fitness_avg_obj(const std::vector<double>& objectives);

}  // namespace tuplevo::evo

#endif
