#pragma once

#include <string>
#include <vector>

namespace oeb {

struct FigureInfo {
    std::string id;
    std::string description;
    int curve_count = 0;
};

const std::vector<FigureInfo>& figure_index();

// Expands the recipe, runs every curve (sub-runs fan out across threads;
// each writes its own CSV) and drops a manifest.json describing labels and
// axis hints. Throws on unknown ids; propagates sub-run failures.
void render_figure(const std::string& figure_id, const std::string& out_dir);

} // namespace oeb
