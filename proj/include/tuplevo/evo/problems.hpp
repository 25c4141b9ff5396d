#ifndef TUPLEVO_EVO_PROBLEMS_HPP
#define TUPLEVO_EVO_PROBLEMS_HPP

#include <memory>
#include <string>
#include <vector>

#include "tuplevo/core/problem.hpp"
#include "tuplevo/evo/config.hpp"
#include "tuplevo/evo/evolution.hpp"

namespace tuplevo::evo {

ProblemDescriptor descriptor_for(const std::string& problem);

// Loads one instance file for the named problem; `legacy` switches to the
// experimental third-party importers.
std::shared_ptr<const CoupledInstance> load_instance(const std::string& problem,
                                                     const std::string& path, bool legacy);

InstanceSet load_instances(const RunSpec& spec);

}  // namespace tuplevo::evo

#endif
