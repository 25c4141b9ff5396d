#include "tuplevo/cli/gap_table.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "tuplevo/core/errors.hpp"

namespace tuplevo::cli {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    for (char c : line) {
        if (c == ',') {
            out.push_back(field);
            field.clear();
        } else if (c != '\r') {
            field += c;
        }
    }
    out.push_back(field);
    return out;
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        rows.push_back(split_csv_line(line));
    }
    return rows;
}

std::string fmt(double v, const char* spec = "%.2f") {
    char buf[64];
    std::snprintf(buf, sizeof(buf), spec, v);
    return buf;
}

}  // namespace

GapTable gap_table(const std::vector<std::pair<std::string, double>>& ours,
                   const std::vector<std::string>& baseline_names,
                   const std::vector<std::vector<std::optional<double>>>& baselines) {
    if (ours.size() != baselines.size()) {
        throw LengthMismatch("ours and baselines must cover the same instances");
    }
    GapTable table;
    table.baseline_names = baseline_names;
    const std::size_t B = baseline_names.size();
    std::vector<double> gap_sums(B, 0);
    std::vector<double> base_sums(B, 0);
    std::vector<int> present(B, 0);
    double ours_sum = 0;
    for (std::size_t i = 0; i < ours.size(); ++i) {
        if (baselines[i].size() != B) {
            throw LengthMismatch("baseline row width does not match the header");
        }
        GapTable::Row row;
        row.label = ours[i].first;
        row.ours = ours[i].second;
        ours_sum += row.ours;
        for (std::size_t b = 0; b < B; ++b) {
            row.baselines.push_back(baselines[i][b]);
            if (baselines[i][b].has_value()) {
                double base = *baselines[i][b];
                double gap = 100.0 * (row.ours - base) / base;
                row.gaps.emplace_back(gap);
                gap_sums[b] += gap;
                base_sums[b] += base;
                ++present[b];
            } else {
                row.gaps.emplace_back(std::nullopt);
            }
        }
        table.rows.push_back(std::move(row));
    }
    table.ours_mean = ours.empty() ? 0 : ours_sum / static_cast<double>(ours.size());
    for (std::size_t b = 0; b < B; ++b) {
        if (present[b] > 0) {
            table.baseline_means.emplace_back(base_sums[b] / present[b]);
            table.gap_means.emplace_back(gap_sums[b] / present[b]);
        } else {
            table.baseline_means.emplace_back(std::nullopt);
            table.gap_means.emplace_back(std::nullopt);
        }
    }
    return table;
}

std::string GapTable::to_text() const {
    std::ostringstream out;
    out << "instance";
    for (const auto& name : baseline_names) out << "\t" << name;
    out << "\tours";
    for (const auto& name : baseline_names) out << "\t" << name << " gap%";
    out << "\n";
    auto emit = [&](const std::string& label, double ours_v,
                    const std::vector<std::optional<double>>& bases,
                    const std::vector<std::optional<double>>& gaps) {
        out << label;
        for (const auto& b : bases) out << "\t" << (b ? fmt(*b) : "-");
        out << "\t" << fmt(ours_v);
        for (const auto& g : gaps) out << "\t" << (g ? fmt(*g) : "-");
        out << "\n";
    };
    for (const Row& row : rows) emit(row.label, row.ours, row.baselines, row.gaps);
    emit("mean", ours_mean, baseline_means, gap_means);
    return out.str();
}

std::string GapTable::to_csv() const {
    std::ostringstream out;
    out << "instance";
    for (const auto& name : baseline_names) out << "," << name;
    out << ",ours";
    for (const auto& name : baseline_names) out << "," << name << "_gap_percent";
    out << "\n";
    auto emit = [&](const std::string& label, double ours_v,
                    const std::vector<std::optional<double>>& bases,
                    const std::vector<std::optional<double>>& gaps) {
        out << label;
        for (const auto& b : bases) out << "," << (b ? fmt(*b, "%.6g") : "-");
        out << "," << fmt(ours_v, "%.6g");
        for (const auto& g : gaps) out << "," << (g ? fmt(*g) : "-");
        out << "\n";
    };
    for (const Row& row : rows) emit(row.label, row.ours, row.baselines, row.gaps);
    emit("mean", ours_mean, baseline_means, gap_means);
    return out.str();
}

GapTable gap_table_from_csv(const std::string& ours_csv, const std::string& baseline_csv) {
    auto ours_rows = parse_csv(ours_csv);
    auto base_rows = parse_csv(baseline_csv);
    if (ours_rows.size() < 2 || base_rows.size() < 2) {
        throw FormatError("gap-table CSVs need a header and at least one row");
    }
    std::vector<std::string> baseline_names(base_rows[0].begin() + 1, base_rows[0].end());
    std::vector<std::pair<std::string, double>> ours;
    for (std::size_t i = 1; i < ours_rows.size(); ++i) {
        if (ours_rows[i].size() < 2) throw FormatError("ours CSV row too short");
        ours.emplace_back(ours_rows[i][0], std::stod(ours_rows[i][1]));
    }
    if (base_rows.size() - 1 != ours.size()) {
        throw LengthMismatch("baseline CSV instance count differs from ours CSV");
    }
    std::vector<std::vector<std::optional<double>>> baselines;
    for (std::size_t i = 1; i < base_rows.size(); ++i) {
        if (base_rows[i][0] != ours[i - 1].first) {
            throw LengthMismatch("instance labels are not aligned: '" + base_rows[i][0] +
                                 "' vs '" + ours[i - 1].first + "'");
        }
        std::vector<std::optional<double>> row;
        for (std::size_t b = 1; b < base_rows[i].size(); ++b) {
            const std::string& cell = base_rows[i][b];
            if (cell.empty() || cell == "-") {
                row.emplace_back(std::nullopt);
            } else {
                row.emplace_back(std::stod(cell));
            }
        }
        baselines.push_back(std::move(row));
    }
    return gap_table(ours, baseline_names, baselines);
}

}  // namespace tuplevo::cli
