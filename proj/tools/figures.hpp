#pragma once
#include <map>
#include <string>
#include <vector>

#include "serialize.hpp"

namespace corisk::fig {

// One experiment panel: the plotted data plus the qualitative claims the
// panel illustrates, each re-verified numerically.
struct FigureResult {
    std::string id;
    io::Table table;
    std::vector<io::CheckResult> checks;
    std::map<std::string, std::string> params;
    bool all_pass() const;
};

const std::vector<std::string>& figure_ids();

// Build the panel's data and evaluate its checks. `points` <= 1 selects the
// panel's default axis density (80, except where the default grid is pinned
// by the experiment definition).
FigureResult run_figure(const std::string& id, int points = 0);

nlohmann::json to_json(const FigureResult& f);
// gnuplot script plotting `data_path` (a CSV written from f.table).
std::string gnuplot_script(const FigureResult& f, const std::string& data_path);

} // namespace corisk::fig
