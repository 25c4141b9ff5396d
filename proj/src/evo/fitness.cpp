#include "tuplevo/evo/fitness.hpp"

#include "tuplevo/core/errors.hpp"

namespace tuplevo::evo {

double fitness_rel_gap(const std::vector<double>& objectives,
                       const std::vector<double>& references) {
    if (objectives.empty() || objectives.size() != references.size()) {
        throw LengthMismatch("objectives and references must be equally sized and non-empty");
    }
    double sum = 0;
    for (std::size_t i = 0; i < objectives.size(); ++i) {
        if (references[i] <= 0) {
            throw NonpositiveReference("reference objectives must be positive");
        }
        sum += (objectives[i] - references[i]) / references[i];
    }
    return sum / static_cast<double>(objectives.size());
}

double fitness_avg_obj(const std::vector<double>& objectives) {
    if (objectives.empty()) throw EmptyInput("cannot average an empty objective list");
    double sum = 0;
    for (double o : objectives) sum += o;
    return sum / static_cast<double>(objectives.size());
}

}  // namespace tuplevo::evo
