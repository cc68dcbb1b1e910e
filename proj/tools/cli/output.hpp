#pragma once

#include <string>
#include <vector>

#include "imcf/lvec3.hpp"

namespace imcf::cli {

/// Writes `content` to a sibling temporary file and renames it over `path`.
void write_atomic(const std::string& path, const std::string& content);

/// Shortest round-tripping decimal form is not needed; 17 significant digits are.
std::string fmt(double v);

/// A CSV table kept in memory until written.
class CsvTable {
public:
    explicit CsvTable(std::vector<std::string> header);
    void add_row(const std::vector<double>& values);
    std::string str() const;
    std::size_t rows() const noexcept { return rows_; }

private:
    std::string body_;
    std::size_t columns_;
    std::size_t rows_ = 0;
};

/// ASCII OBJ of an s_count x t_count vertex grid (row-major s then t) with quad faces.
std::string obj_mesh(const std::vector<LVec3>& vertices, int s_count, int t_count, const std::string& comment);

/// Replaces the extension of `path` (if any) by `suffix`.
std::string with_suffix(const std::string& path, const std::string& suffix);

} // namespace imcf::cli
