#include "cli/output.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <system_error>

#include <unistd.h>

namespace imcf::cli {

void write_atomic(const std::string& path, const std::string& content)
{
    namespace fs = std::filesystem;
    const fs::path target(path);
    const fs::path tmp = target.string() + ".tmp." + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot write '" + tmp.string() + "'");
        out << content;
        out.flush();
        if (!out) throw IoError("write to '" + tmp.string() + "' failed");
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw IoError("cannot move output into place at '" + path + "'");
    }
}

std::string fmt(double v)
{
    if (std::isnan(v)) return "nan";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

CsvTable::CsvTable(std::vector<std::string> header) : columns_(header.size())
{
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i) body_ += ',';
        body_ += header[i];
    }
    body_ += '\n';
}

void CsvTable::add_row(const std::vector<double>& values)
{
    if (values.size() != columns_) throw IoError("csv row has the wrong number of columns");
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) body_ += ',';
        body_ += fmt(values[i]);
    }
    body_ += '\n';
    ++rows_;
}

std::string CsvTable::str() const { return body_; }

std::string obj_mesh(const std::vector<LVec3>& vertices, int s_count, int t_count, const std::string& comment)
{
    std::string out = "# " + comment + "\n";
    for (const LVec3& v : vertices) out += "v " + fmt(v.x()) + ' ' + fmt(v.y()) + ' ' + fmt(v.z()) + '\n';
    for (int i = 0; i + 1 < s_count; ++i) {
        for (int j = 0; j + 1 < t_count; ++j) {
            const int a = i * t_count + j + 1; // OBJ indices are 1-based
            const int b = (i + 1) * t_count + j + 1;
            out += "f " + std::to_string(a) + ' ' + std::to_string(b) + ' ' + std::to_string(b + 1) + ' '
                 + std::to_string(a + 1) + '\n';
        }
    }
    return out;
}

std::string with_suffix(const std::string& path, const std::string& suffix)
{
    std::filesystem::path p(path);
    p.replace_extension();
    return p.string() + suffix;
}

} // namespace imcf::cli
