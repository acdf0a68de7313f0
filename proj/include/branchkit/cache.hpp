#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "branchkit/cartan.hpp"

namespace branchkit {

struct MultTable;

/// On-disk MultTable format, one file per (algebra, lambda, N):
///   BRANCHKIT-MULTS v1 <algebra> <labels> <N>
///   n_0 n_1 ... n_r <multiplicity>
/// Readers reject unknown versions.

std::filesystem::path cache_file_path(const std::filesystem::path& dir,
                                      const std::string& selector, const LabelVec& labels,
                                      long long N);

void cache_store(const std::filesystem::path& dir, const MultTable& table);

/// Parse one cache file; throws on malformed content or version mismatch.
MultTable cache_read(const std::filesystem::path& file);

/// Load the smallest cached table for (selector, labels) whose truncation is
/// at least N, if any.
std::optional<MultTable> cache_load_best(const std::filesystem::path& dir,
                                         const std::string& selector, const LabelVec& labels,
                                         long long N);

struct CacheEntryInfo {
    std::string file;
    std::string algebra;
    std::string labels;
    long long trunc;
    size_t entries;
};

std::vector<CacheEntryInfo> cache_list(const std::filesystem::path& dir);
size_t cache_clear(const std::filesystem::path& dir);

}  // namespace branchkit
