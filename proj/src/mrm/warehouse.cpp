#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "nlohmann/json.hpp"
#include "tuplevo/core/errors.hpp"
#include "tuplevo/core/rng.hpp"
#include "tuplevo/mrm/model.hpp"

namespace tuplevo::mrm {

namespace {

std::vector<std::string> tokenize(const std::string& line) {
    std::istringstream in(line);
    std::vector<std::string> out;
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

double to_number(const std::string& tok, const char* what) {
    try {
        std::size_t used = 0;
        double v = std::stod(tok, &used);
        if (used != tok.size() || !std::isfinite(v)) throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        throw FormatError(std::string("expected a number for ") + what + ", got '" + tok + "'");
    }
}

void validate(const Warehouse& w) {
    if (w.lanes.empty()) throw InvariantViolation("warehouse needs at least one lane");
    if (w.robots.homes.empty()) throw InvariantViolation("warehouse needs at least one robot");
    if (w.robots.speed <= 0) throw InvariantViolation("robot speed must be > 0");
    std::set<std::pair<double, double>> coords;
    for (const Lane& lane : w.lanes) {
        if (lane.depth < 1) throw InvariantViolation("lane depth must be >= 1");
        if (std::abs(lane.dx) + std::abs(lane.dy) != 1.0) {
            throw InvariantViolation("lane step must be a unit grid direction");
        }
        for (int i = 0; i < lane.depth; ++i) {
            Point p = lane.slot_pos(i);
            if (!coords.insert({p.x, p.y}).second) {
                throw InvariantViolation("lanes overlap at slot coordinates");
            }
        }
    }
    if (w.initial.size() != w.lanes.size()) {
        throw InvariantViolation("stacking shape does not match lanes");
    }
    std::vector<bool> seen(w.load_ids.size(), false);
    for (std::size_t l = 0; l < w.lanes.size(); ++l) {
        const auto& slots = w.initial[l];
        if (static_cast<int>(slots.size()) != w.lanes[l].depth) {
            throw InvariantViolation("stacking depth does not match lane depth");
        }
        bool occupied_seen = false;
        for (int i = 0; i < w.lanes[l].depth; ++i) {
            int load = slots[static_cast<std::size_t>(i)];
            if (load < 0) {
                if (occupied_seen) {
                    throw InvariantViolation(
                        "lane occupancy must be contiguous against the far end");
                }
                continue;
            }
            occupied_seen = true;
            if (load >= static_cast<int>(w.load_ids.size()) || seen[static_cast<std::size_t>(load)]) {
                throw InvariantViolation("each load occupies exactly one slot");
            }
            seen[static_cast<std::size_t>(load)] = true;
        }
    }
    for (bool s : seen) {
        if (!s) throw InvariantViolation("load declared but not placed");
    }
    for (int p : w.load_priority) {
        if (p < 1) throw InvariantViolation("priority classes start at 1");
    }
}

}  // namespace

Warehouse parse_warehouse(const std::string& text) {
    Warehouse w;
    std::istringstream in(text);
    std::string line;
    bool saw_magic = false;
    int robot_count = 0;
    struct PendingLoad {
        int id, lane_id, slot, priority;
    };
    std::vector<PendingLoad> loads;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto toks = tokenize(line);
        if (toks.empty()) continue;
        if (!saw_magic) {
            if (toks[0] != "warehouse") throw FormatError("document must start with 'warehouse'");
            saw_magic = true;
            if (toks.size() > 1) w.name = toks[1];
            continue;
        }
        if (toks[0] == "robots") {
            robot_count = static_cast<int>(to_number(toks.at(1), "robots"));
        } else if (toks[0] == "speed") {
            w.robots.speed = to_number(toks.at(1), "speed");
        } else if (toks[0] == "pick") {
            w.robots.pick_time = to_number(toks.at(1), "pick");
        } else if (toks[0] == "drop") {
            w.robots.drop_time = to_number(toks.at(1), "drop");
        } else if (toks[0] == "home") {
            if (toks.size() != 3) throw FormatError("home takes x y");
            w.robots.homes.push_back({to_number(toks[1], "home x"), to_number(toks[2], "home y")});
        } else if (toks[0] == "lane") {
            if (toks.size() != 7) throw FormatError("lane takes id x0 y0 dx dy depth");
            Lane lane;
            lane.id = static_cast<int>(to_number(toks[1], "lane id"));
            lane.x0 = to_number(toks[2], "lane x0");
            lane.y0 = to_number(toks[3], "lane y0");
            lane.dx = to_number(toks[4], "lane dx");
            lane.dy = to_number(toks[5], "lane dy");
            lane.depth = static_cast<int>(to_number(toks[6], "lane depth"));
            w.lanes.push_back(lane);
        } else if (toks[0] == "load") {
            if (toks.size() != 5) throw FormatError("load takes id lane slot priority");
            loads.push_back({static_cast<int>(to_number(toks[1], "load id")),
                             static_cast<int>(to_number(toks[2], "load lane")),
                             static_cast<int>(to_number(toks[3], "load slot")),
                             static_cast<int>(to_number(toks[4], "load priority"))});
        } else {
            throw FormatError("unknown record '" + toks[0] + "'");
        }
    }
    if (!saw_magic) throw FormatError("empty warehouse document");
    w.initial.resize(w.lanes.size());
    for (std::size_t l = 0; l < w.lanes.size(); ++l) {
        w.initial[l].assign(static_cast<std::size_t>(w.lanes[l].depth), -1);
    }
    for (const auto& pl : loads) {
        int lane_idx = -1;
        for (std::size_t l = 0; l < w.lanes.size(); ++l) {
            if (w.lanes[l].id == pl.lane_id) lane_idx = static_cast<int>(l);
        }
        if (lane_idx < 0) throw FormatError("load references unknown lane");
        if (pl.slot < 0 || pl.slot >= w.lanes[static_cast<std::size_t>(lane_idx)].depth) {
            throw FormatError("load slot outside lane depth");
        }
        int load_index = static_cast<int>(w.load_ids.size());
        w.load_ids.push_back(pl.id);
        w.load_priority.push_back(pl.priority);
        if (w.initial[static_cast<std::size_t>(lane_idx)][static_cast<std::size_t>(pl.slot)] != -1) {
            throw InvariantViolation("two loads share a slot");
        }
        w.initial[static_cast<std::size_t>(lane_idx)][static_cast<std::size_t>(pl.slot)] = load_index;
    }
    if (robot_count <= 0) robot_count = static_cast<int>(w.robots.homes.size());
    if (robot_count != static_cast<int>(w.robots.homes.size())) {
        throw FormatError("robot count does not match home lines");
    }
    validate(w);
    return w;
}

Warehouse import_warehouse_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(std::string("invalid JSON: ") + e.what());
    }
    // Expected shape: lanes as arrays of priorities from the access end
    // (null/0 = empty slot), plus robot parameters. Best effort only.
    Warehouse w;
    w.name = doc.value("name", std::string("imported"));
    w.robots.speed = doc.value("speed", 1.0);
    w.robots.pick_time = doc.value("pick", 1.0);
    w.robots.drop_time = doc.value("drop", 1.0);
    if (!doc.contains("lanes") || !doc["lanes"].is_array()) {
        throw FormatError("expected a 'lanes' array");
    }
    int next_load = 0;
    double y = 0;
    for (const auto& lane_doc : doc["lanes"]) {
        Lane lane;
        lane.id = static_cast<int>(w.lanes.size()) + 1;
        lane.x0 = 0;
        lane.y0 = y;
        lane.dx = 1;
        lane.dy = 0;
        lane.depth = static_cast<int>(lane_doc.size());
        w.lanes.push_back(lane);
        std::vector<int> slots(lane_doc.size(), -1);
        for (std::size_t i = 0; i < lane_doc.size(); ++i) {
            if (lane_doc[i].is_null()) continue;
            int prio = lane_doc[i].get<int>();
            if (prio <= 0) continue;
            slots[i] = next_load;
            w.load_ids.push_back(next_load + 1);
            w.load_priority.push_back(prio);
            ++next_load;
        }
        w.initial.push_back(std::move(slots));
        y += 1;
    }
    int robots = doc.value("robots", 1);
    for (int r = 0; r < robots; ++r) {
        w.robots.homes.push_back({-1.0 - r, 0.0});
    }
    validate(w);
    return w;
}

int front_index(const Stacking& s, int lane) {
    const auto& slots = s[static_cast<std::size_t>(lane)];
    for (std::size_t i = 0; i < slots.size(); ++i) {
        if (slots[i] >= 0) return static_cast<int>(i);
    }
    return static_cast<int>(slots.size());
}

int insertion_index(const Stacking& s, int lane) {
    int m = front_index(s, lane);
    return m == 0 ? -1 : m - 1;
}

bool is_blocking(const Warehouse& w, const Stacking& s, int lane, int slot) {
    int load = s[static_cast<std::size_t>(lane)][static_cast<std::size_t>(slot)];
    if (load < 0) return false;
    int prio = w.load_priority[static_cast<std::size_t>(load)];
    const auto& slots = s[static_cast<std::size_t>(lane)];
    for (std::size_t j = static_cast<std::size_t>(slot) + 1; j < slots.size(); ++j) {
        int behind = slots[j];
        if (behind >= 0 && w.load_priority[static_cast<std::size_t>(behind)] < prio) return true;
    }
    return false;
}

int blockage_count(const Warehouse& w, const Stacking& s) {
    int count = 0;
    for (std::size_t l = 0; l < s.size(); ++l) {
        for (std::size_t i = 0; i < s[l].size(); ++i) {
            if (is_blocking(w, s, static_cast<int>(l), static_cast<int>(i))) ++count;
        }
    }
    return count;
}

std::uint64_t stacking_hash(const Stacking& s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const auto& lane : s) {
        for (int v : lane) {
            h ^= static_cast<std::uint64_t>(v + 2);
            h *= 0x100000001b3ULL;
        }
        h ^= 0xff;
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace tuplevo::mrm
