#ifndef TUPLEVO_CLI_GAP_TABLE_HPP
#define TUPLEVO_CLI_GAP_TABLE_HPP

#include <optional>
#include <string>
#include <vector>

namespace tuplevo::cli {

// Objective comparison against one or more named baselines. Gap percent is
// 100 * (ours - baseline) / baseline, negative when ours is better. A
// baseline may be missing for a row ('-' in the CSV); means skip it.
struct GapTable {
    std::vector<std::string> baseline_names;
    struct Row {
        std::string label;
        double ours = 0;
        std::vector<std::optional<double>> baselines;
        std::vector<std::optional<double>> gaps;
    };
    std::vector<Row> rows;
    double ours_mean = 0;
    std::vector<std::optional<double>> baseline_means;  // over available rows
    std::vector<std::optional<double>> gap_means;       // mean of row gaps

    std::string to_text() const;
    std::string to_csv() const;
};

GapTable gap_table(const std::vector<std::pair<std::string, double>>& ours,
                   const std::vector<std::string>& baseline_names,
                   const std::vector<std::vector<std::optional<double>>>& baselines);

// CSV layouts: ours has a header `instance,objective`; baselines have
// `instance,<name>...` with '-' or blank marking a missing value.
GapTable gap_table_from_csv(const std::string& ours_csv, const std::string& baseline_csv);

}  // namespace tuplevo::cli

#endif
