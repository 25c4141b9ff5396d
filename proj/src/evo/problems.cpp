#include "tuplevo/evo/problems.hpp"

#include <fstream>
#include <sstream>

#include "tuplevo/core/errors.hpp"
#include "tuplevo/irp/irp.hpp"
#include "tuplevo/mrm/problem.hpp"

namespace tuplevo::evo {

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open instance file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace

ProblemDescriptor descriptor_for(const std::string& problem) {
    if (problem == "irp") return irp::irp_descriptor();
    if (problem == "mrmupmp") return mrm::mrmupmp_descriptor();
    throw ConfigError("unknown problem '" + problem + "' (expected irp or mrmupmp)");
}

std::shared_ptr<const CoupledInstance> load_instance(const std::string& problem,
                                                     const std::string& path, bool legacy) {
    std::string text = slurp(path);
    if (problem == "irp") {
        auto inst = legacy ? irp::parse_legacy_instance(text) : irp::parse_instance(text);
        if (inst.name.empty()) inst.name = path;
        return std::make_shared<irp::IrpProblem>(std::move(inst));
    }
    if (problem == "mrmupmp") {
        auto wh = legacy ? mrm::import_warehouse_json(text) : mrm::parse_warehouse(text);
        if (wh.name.empty()) wh.name = path;
        return std::make_shared<mrm::MrProblem>(std::move(wh));
    }
    throw ConfigError("unknown problem '" + problem + "'");
}

InstanceSet load_instances(const RunSpec& spec) {
    InstanceSet out;
    for (const auto& path : spec.instance_paths) {
        out.push_back(load_instance(spec.problem, path, spec.legacy_import));
    }
    return out;
}

}  // namespace tuplevo::evo
