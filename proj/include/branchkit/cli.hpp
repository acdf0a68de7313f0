#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "branchkit/numeric.hpp"

namespace branchkit {

/// Parsed command-line request.  Exactly one subcommand is set by the parser;
/// run() performs the work and writes to the given streams.
struct RunConfig {
    std::string subcommand;  // weyl | char | string | branch | verify | cache
    std::string algebra = "A1~1";
    std::string format = "text";  // text | json

    // weights as label vectors "l0,l1,...,lr"
    std::optional<LabelVec> lambda;   // char/string
    std::optional<LabelVec> nu;       // char/string target h'-weight
    std::optional<LabelVec> lambda1;  // branch
    std::optional<LabelVec> lambda2;
    std::optional<LabelVec> mu;

    std::string method = "all";  // branch: oracle | bosonic1 | bosonic1-swap | bosonic2 |
                                 // sl2-closed-1 | sl2-closed-2 | all
    long long trunc = 0;
    int max_length = -1;              // weyl
    std::optional<LabelVec> orbit_of;  // weyl: print shifted orbit of this weight
    long long orbit_dval = 0;

    std::vector<long long> levels;  // verify: k1 k2

    std::string cache_op;  // cache: list | clear
    std::optional<std::string> cache_dir;  // overridden by BRANCHKIT_CACHE
};

/// Exit status: 0 success, 1 usage/argument error, 2 mathematical
/// disagreement between methods.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace branchkit
