#pragma once

// JSON emission for the scan records, kept out of scan.hpp so consumers
// that only need CSV do not pull in the JSON library.

#include "scan.hpp"

#include <json.hpp>

namespace qet {

/// Same records as contour_csv, as a JSON array of objects with identical
/// field names. Degenerate ratios serialize as null.
inline std::string contour_json(const ContourGrid& grid) {
    nlohmann::json arr = nlohmann::json::array();
    for (const ContourRecord& rec : grid.records) {
        nlohmann::json row;
        row["tau"] = rec.tau;
        row["ted"] = rec.ted;
        if (rec.degenerate) {
            row["R"] = nullptr;
        } else {
            row["R"] = rec.ratio;
        }
        row["status"] = rec.degenerate ? "degenerate" : "ok";
        arr.push_back(std::move(row));
    }
    return arr.dump(2) + "\n";
}

/// Same records as repetition_csv.
inline std::string repetition_json(const RepetitionScan& scan) {
    nlohmann::json arr = nlohmann::json::array();
    for (std::size_t k = 0; k < scan.table.size(); ++k) {
        nlohmann::json row;
        row["N"] = k + 1;
        row["P_N"] = scan.table[k];
        arr.push_back(std::move(row));
    }
    return arr.dump(2) + "\n";
}

}  // namespace qet
