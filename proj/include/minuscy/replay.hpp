#pragma once

// Golden replays of the two worked examples. Engine labels are matched to the
// figures' labels by an isomorphism of Auslander-Reiten quivers, never by
// index.

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "minuscy/orbitcat.hpp"

namespace minuscy {

// Translation quiver ZA_n modulo a translation by `period` columns, composed
// with the vertical flip when `flip` is set. Vertices are (col, row) in
// half-column units with col ≡ row + parity (mod 2), 0 <= col < period.
struct ArModel {
    int rank = 0, period = 0, parity = 0;
    bool flip = false;
    std::vector<std::pair<int, int>> vertices;
    std::map<std::string, std::pair<int, int>> labels;

    static ArModel make(int rank, int period, int parity, bool flip);
    std::pair<int, int> canonical(int col, int row) const;
    int index(int col, int row) const;
    std::vector<std::pair<int, int>> arrows() const;  // vertex indices
    std::vector<int> tau() const;
};

ArModel figure_rank_three_weight_one();
ArModel figure_rank_five_weight_two();

// Vertex index -> engine id, preserving arrows and the translation.
std::optional<std::vector<int>> match_ar_quiver(const OrbitCategory& c, const ArModel& m);
// Arrows of the AR quiver of c, from irreducible maps.
std::vector<std::pair<int, int>> ar_arrows(const OrbitCategory& c);

struct ReplayCheck {
    std::string name;
    bool ok = false;
    std::string detail;
};

struct ReplayResult {
    std::string example;
    std::vector<ReplayCheck> checks;
    std::map<std::string, int> labels;  // figure label -> engine id
    double seconds = 0;

    bool ok() const;
};

ReplayResult replay_rank_three_weight_one(int p);
ReplayResult replay_rank_five_weight_two(int p);

}  // namespace minuscy
