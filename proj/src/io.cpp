#include "densekit/io.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <system_error>

#include "densekit/types.hpp"

namespace densekit {

void write_file_atomic(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    const fs::path tmp = target.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw DataError("cli", "cannot write " + tmp.string());
        out << content;
        if (!out)
            throw DataError("cli", "write failed for " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp);
        throw DataError("cli", "cannot move output into place at " + path + ": " + ec.message());
    }
}

std::string read_file(const std::string& path, const std::string& module) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw DataError(module, "cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

} // namespace densekit
