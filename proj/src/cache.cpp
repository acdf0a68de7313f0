#include "branchkit/cache.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "branchkit/characters.hpp"

namespace branchkit {

namespace fs = std::filesystem;

static const char* kMagic = "BRANCHKIT-MULTS";
static const char* kVersion = "v1";

std::filesystem::path cache_file_path(const fs::path& dir, const std::string& selector,
                                      const LabelVec& labels, long long N) {
    std::ostringstream os;
    os << selector << "_l" << labels_to_string(labels) << "_N" << N << ".mults";
    return dir / os.str();
}

void cache_store(const fs::path& dir, const MultTable& table) {
    fs::create_directories(dir);
    fs::path file = cache_file_path(dir, table.algebra, table.lambda.labels, table.trunc);
    fs::path tmp = file;
    tmp += ".tmp";
    {
        std::ofstream out(tmp);
        if (!out) throw std::runtime_error("cannot write cache file " + tmp.string());
        out << kMagic << " " << kVersion << " " << table.algebra << " "
            << labels_to_string(table.lambda.labels) << " " << table.trunc << "\n";
        for (const auto& [beta, m] : table.entries) {
            for (size_t i = 0; i < beta.size(); ++i) out << beta[i] << " ";
            out << m.str() << "\n";
        }
    }
    fs::rename(tmp, file);
}

MultTable cache_read(const fs::path& file) {
    std::ifstream in(file);
    if (!in) throw std::runtime_error("cannot read cache file " + file.string());
    std::string magic, version, algebra, labels_text;
    long long trunc = 0;
    in >> magic >> version >> algebra >> labels_text >> trunc;
    if (magic != kMagic) throw std::runtime_error("not a mult-table cache file: " + file.string());
    if (version != kVersion)
        throw std::runtime_error("unsupported cache version '" + version + "' in " +
                                 file.string());
    MultTable table;
    table.algebra = algebra;
    table.lambda.labels = parse_labels(labels_text);
    table.lambda.dval = 0;
    table.trunc = trunc;
    const size_t nodes = table.lambda.labels.size();
    std::string line;
    std::getline(in, line);  // finish header line
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        LabelVec beta(nodes);
        for (size_t i = 0; i < nodes; ++i)
            if (!(row >> beta[i]))
                throw std::runtime_error("malformed cache row in " + file.string());
        std::string mult_text;
        if (!(row >> mult_text))
            throw std::runtime_error("malformed cache row in " + file.string());
        table.entries[beta] = Int(mult_text);
    }
    return table;
}

std::optional<MultTable> cache_load_best(const fs::path& dir, const std::string& selector,
                                         const LabelVec& labels, long long N) {
    if (!fs::exists(dir)) return std::nullopt;
    std::string prefix = selector + "_l" + labels_to_string(labels) + "_N";
    std::optional<long long> best;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (!entry.is_regular_file() || entry.path().extension() != ".mults") continue;
        std::string name = entry.path().filename().string();
        if (name.rfind(prefix, 0) != 0) continue;
        std::string tail = name.substr(prefix.size());
        size_t dot = tail.find('.');
        if (dot == std::string::npos) continue;
        long long n;
        try {
            n = std::stoll(tail.substr(0, dot));
        } catch (...) {
            continue;
        }
        if (n >= N && (!best || n < *best)) best = n;
    }
    if (!best) return std::nullopt;
    return cache_read(cache_file_path(dir, selector, labels, *best));
}

std::vector<CacheEntryInfo> cache_list(const fs::path& dir) {
    std::vector<CacheEntryInfo> out;
    if (!fs::exists(dir)) return out;
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir))
        if (entry.is_regular_file() && entry.path().extension() == ".mults")
            files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    for (const auto& f : files) {
        MultTable t = cache_read(f);
        out.push_back({f.filename().string(), t.algebra, labels_to_string(t.lambda.labels),
                       t.trunc, t.entries.size()});
    }
    return out;
}

size_t cache_clear(const fs::path& dir) {
    if (!fs::exists(dir)) return 0;
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir))
        if (entry.is_regular_file() && entry.path().extension() == ".mults")
            files.push_back(entry.path());
    for (const auto& f : files) fs::remove(f);
    return files.size();
}

}  // namespace branchkit
