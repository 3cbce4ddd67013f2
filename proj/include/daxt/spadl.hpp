#pragma once

#include <string>
#include <vector>

#include "daxt/action.hpp"

namespace daxt {

// Canonical column set; parsing locates columns by name, serialization always
// writes this exact header.
extern const char* kSpadlHeader;

struct ParseDiagnostics {
    size_t rows_parsed = 0;
    size_t rows_rejected = 0;  // unparseable numeric cells
    size_t clamped = 0;        // actions with out-of-range coordinates clamped
    size_t unknown_types = 0;  // type names mapped to `other`

    bool clean() const { return rows_rejected == 0 && clamped == 0 && unknown_types == 0; }
    std::string summary() const;
};

// Reads a SPADL-format CSV, groups rows by game id (first-appearance order)
// and sorts each game by (period, time_seconds), stable. Missing required
// columns are fatal; rows with unparseable numeric cells are dropped and
// counted.
std::vector<GameStream> parse_spadl_csv(const std::string& path, ParseDiagnostics* diag = nullptr);

// Same parser over an in-memory document (used by tests and fingerprinting).
std::vector<GameStream> parse_spadl_text(const std::string& text, ParseDiagnostics* diag = nullptr);

std::string spadl_to_csv(const std::vector<GameStream>& games);
void write_spadl_csv(const std::vector<GameStream>& games, const std::string& path);

// FNV-1a of the canonical CSV form; recorded in surface/model metadata.
std::string corpus_fingerprint(const std::vector<GameStream>& games);

} // namespace daxt
