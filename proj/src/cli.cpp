#include "branchkit/cli.hpp"

#include <cstdlib>
#include <sstream>

#include "branchkit/branching.hpp"
#include "branchkit/cache.hpp"

namespace branchkit {

namespace {

std::optional<std::string> resolve_cache_dir(const RunConfig& cfg) {
    if (const char* env = std::getenv("BRANCHKIT_CACHE"); env && *env) return std::string(env);
    return cfg.cache_dir;
}

std::string weight_json(const LabelVec& labels) {
    std::ostringstream os;
    os << "[";
    for (size_t i = 0; i < labels.size(); ++i) {
        if (i) os << ",";
        os << labels[i];
    }
    os << "]";
    return os.str();
}

std::string result_json(const BranchingResult& r, const std::optional<Rat>& offset) {
    std::ostringstream os;
    os << "{\"method\":\"" << r.method << "\",\"trunc\":" << r.certified_trunc;
    if (offset) os << ",\"offset\":\"" << rat_to_string(*offset) << "\"";
    os << ",\"series\":[";
    bool first = true;
    for (const auto& [d, c] : r.series.coeffs()) {
        if (!first) os << ",";
        first = false;
        os << "[" << d << ",\"" << c.str() << "\"]";
    }
    os << "],\"terms_used\":" << r.terms_used << "}";
    return os.str();
}

std::vector<std::string> method_list(const std::string& method, const AffineAlgebra& alg,
                                     long long k2) {
    if (method != "all") return {method};
    std::vector<std::string> ms{"oracle", "bosonic1", "bosonic1-swap"};
    if (k2 > 0) ms.push_back("bosonic2");
    if (alg.selector() == "A1~1") {
        ms.push_back("sl2-closed-1");
        if (k2 > 0) ms.push_back("sl2-closed-2");
    }
    return ms;
}

BranchingResult dispatch_method(BranchingEngine& engine, const std::string& method,
                                const BranchingQuery& q) {
    const AffineAlgebra& alg = engine.algebra();
    if (method == "oracle") return engine.branch_oracle(q);
    if (method == "bosonic1") return engine.branch_bosonic_product(q, false);
    if (method == "bosonic1-swap") return engine.branch_bosonic_product(q, true);
    if (method == "bosonic2") return engine.branch_bosonic_fraction(q, false);
    if (method == "sl2-closed-1" || method == "sl2-closed-2") {
        if (alg.selector() != "A1~1")
            throw std::invalid_argument("method " + method + " requires --algebra A1~1");
        long long i1, k1, i2, k2, j, kmu;
        long long m;
        Weight w1 = q.lambda1, w2 = q.lambda2;
        sl2_ikm_from_weight(w1, i1, k1, m);
        sl2_ikm_from_weight(w2, i2, k2, m);
        Weight wmu{q.mu, 0};
        sl2_ikm_from_weight(wmu, j, kmu, m);
        return engine.branch_sl2_closed(method == "sl2-closed-1" ? 1 : 2, i1, k1, i2, k2, j,
                                        q.trunc);
    }
    throw std::invalid_argument("unknown method '" + method + "'");
}

int run_branch(const RunConfig& cfg, BranchingEngine& engine, std::ostream& out) {
    if (!cfg.lambda1 || !cfg.lambda2 || !cfg.mu)
        throw std::invalid_argument("branch requires --lambda1, --lambda2 and --mu");
    BranchingQuery q{Weight{*cfg.lambda1, 0}, Weight{*cfg.lambda2, 0}, *cfg.mu, cfg.trunc};
    engine.validate(q);
    const AffineAlgebra& alg = engine.algebra();
    long long k1 = alg.level(q.lambda1);
    long long k2 = alg.level(q.lambda2);
    std::vector<std::string> methods = method_list(cfg.method, alg, k2);

    std::vector<BranchingResult> results;
    for (const auto& m : methods) results.push_back(dispatch_method(engine, m, q));
    bool agree = true;
    for (const auto& r : results)
        if (r.series != results.front().series) agree = false;

    Rat offset = engine.conformal_data(q.lambda1.labels, k1) +
                 engine.conformal_data(q.lambda2.labels, k2) -
                 engine.conformal_data(q.mu, k1 + k2);

    if (cfg.format == "json") {
        out << "{\"algebra\":\"" << alg.selector() << "\",\"lambda1\":"
            << weight_json(*cfg.lambda1) << ",\"lambda2\":" << weight_json(*cfg.lambda2)
            << ",\"mu\":" << weight_json(*cfg.mu) << ",\"results\":[";
        for (size_t i = 0; i < results.size(); ++i) {
            if (i) out << ",";
            out << result_json(results[i], offset);
        }
        out << "]";
        if (methods.size() > 1)
            out << ",\"agreement\":\"" << (agree ? "ok" : "mismatch") << "\"";
        out << "}\n";
    } else {
        for (const auto& r : results)
            out << r.method << ": " << r.series.to_string() << "  [layers/terms: "
                << r.terms_used << "]\n";
        out << "coset offset: " << rat_to_string(offset) << "\n";
        if (methods.size() > 1) out << "agreement: " << (agree ? "ok" : "MISMATCH") << "\n";
    }
    return agree ? 0 : 2;
}

int run_verify(const RunConfig& cfg, BranchingEngine& engine, std::ostream& out) {
    if (cfg.levels.size() != 2)
        throw std::invalid_argument("verify requires --levels k1 k2");
    long long k1 = cfg.levels[0], k2 = cfg.levels[1];
    if (k1 < 0 || k2 < 0) throw std::invalid_argument("levels must be nonnegative");
    const AffineAlgebra& alg = engine.algebra();
    std::vector<Weight> l1s = alg.dominant_weights(k1);
    std::vector<Weight> l2s = alg.dominant_weights(k2);
    std::vector<Weight> mus = alg.dominant_weights(k1 + k2);
    std::vector<std::string> methods = method_list("all", alg, k2);

    bool all_ok = true;
    size_t count = 0;
    for (const auto& w1 : l1s)
        for (const auto& w2 : l2s)
            for (const auto& wm : mus) {
                BranchingQuery q{w1, w2, wm.labels, cfg.trunc};
                std::vector<BranchingResult> results;
                for (const auto& m : methods) results.push_back(dispatch_method(engine, m, q));
                bool agree = true;
                for (const auto& r : results)
                    if (r.series != results.front().series) agree = false;
                all_ok = all_ok && agree;
                ++count;
                out << "lambda1=" << labels_to_string(w1.labels)
                    << " lambda2=" << labels_to_string(w2.labels)
                    << " mu=" << labels_to_string(wm.labels) << " : "
                    << (agree ? "OK" : "MISMATCH") << "\n";
                if (!agree)
                    for (const auto& r : results)
                        out << "    " << r.method << ": " << r.series.to_string() << "\n";
            }
    out << count << " triples checked (" << methods.size() << " methods, trunc " << cfg.trunc
        << "): " << (all_ok ? "all OK" : "DISAGREEMENT") << "\n";
    return all_ok ? 0 : 2;
}

int run_weyl(const RunConfig& cfg, BranchingEngine& engine, std::ostream& out) {
    if (cfg.max_length < 0)
        throw std::invalid_argument("weyl requires --max-length");
    WeylGroup& weyl = engine.weyl();
    std::vector<size_t> sizes = weyl.layer_sizes(cfg.max_length);
    if (cfg.format == "json") {
        out << "{\"algebra\":\"" << engine.algebra().selector() << "\",\"layer_sizes\":[";
        for (size_t l = 0; l < sizes.size(); ++l) {
            if (l) out << ",";
            out << sizes[l];
        }
        out << "]";
        if (cfg.orbit_of) {
            Weight base{*cfg.orbit_of, cfg.orbit_dval};
            out << ",\"orbit\":[";
            bool first = true;
            for (int l = 0; l <= cfg.max_length; ++l)
                for (const auto& w : weyl.layer(l)) {
                    Weight img = weyl.shifted_action(w, base);
                    if (!first) out << ",";
                    first = false;
                    out << "{\"length\":" << l << ",\"word\":[";
                    for (size_t i = 0; i < w.word().size(); ++i) {
                        if (i) out << ",";
                        out << w.word()[i];
                    }
                    out << "],\"labels\":" << weight_json(img.labels)
                        << ",\"dval\":" << img.dval << "}";
                }
            out << "]";
        }
        out << "}\n";
    } else {
        for (size_t l = 0; l < sizes.size(); ++l)
            out << "length " << l << ": " << sizes[l] << " elements\n";
        if (cfg.orbit_of) {
            Weight base{*cfg.orbit_of, cfg.orbit_dval};
            for (int l = 0; l <= cfg.max_length; ++l)
                for (const auto& w : weyl.layer(l)) {
                    Weight img = weyl.shifted_action(w, base);
                    out << "l=" << l << " w*lambda = (" << labels_to_string(img.labels)
                        << ") dval " << img.dval << "\n";
                }
        }
    }
    return 0;
}

int run_char(const RunConfig& cfg, BranchingEngine& engine, std::ostream& out,
             bool normalized) {
    if (!cfg.lambda) throw std::invalid_argument("char/string require --lambda");
    Weight lambda{*cfg.lambda, 0};
    LabelVec nu = cfg.nu ? *cfg.nu : *cfg.lambda;
    auto tbl = engine.tables().get(lambda, cfg.trunc);
    const AffineAlgebra& alg = engine.algebra();
    if (!normalized) {
        QSeries s = weight_space_character(alg, *tbl, nu, cfg.trunc);
        if (cfg.format == "json")
            out << qseries_to_json(s) << "\n";
        else
            out << s.to_string() << "\n";
        return 0;
    }
    StringFunction sf = string_function(alg, *tbl, nu, cfg.trunc);
    if (cfg.format == "json") {
        if (sf.empty)
            out << "{\"empty\":true,\"trunc\":" << cfg.trunc << "}\n";
        else
            out << "{\"offset\":" << sf.offset << ",\"series\":" << qseries_to_json(sf.series)
                << "}\n";
    } else {
        if (sf.empty)
            out << "empty within truncation " << cfg.trunc << "\n";
        else
            out << "offset " << sf.offset << ": " << sf.series.to_string() << "\n";
    }
    return 0;
}

int run_cache(const RunConfig& cfg, const std::optional<std::string>& dir, std::ostream& out) {
    if (!dir)
        throw std::invalid_argument("cache requires --cache-dir or BRANCHKIT_CACHE");
    if (cfg.cache_op == "list") {
        auto entries = cache_list(*dir);
        for (const auto& e : entries)
            out << e.file << "  algebra=" << e.algebra << " lambda=" << e.labels
                << " trunc=" << e.trunc << " entries=" << e.entries << "\n";
        out << entries.size() << " cached tables in " << *dir << "\n";
        return 0;
    }
    if (cfg.cache_op == "clear") {
        size_t n = cache_clear(*dir);
        out << "removed " << n << " cached tables from " << *dir << "\n";
        return 0;
    }
    throw std::invalid_argument("cache operation must be 'list' or 'clear'");
}

}  // namespace

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        std::optional<std::string> dir = resolve_cache_dir(cfg);
        if (cfg.subcommand == "cache") return run_cache(cfg, dir, out);

        BranchingEngine engine(AffineAlgebra::from_selector(cfg.algebra));
        if (dir) engine.tables().set_cache_dir(std::filesystem::path(*dir));

        if (cfg.subcommand == "branch") return run_branch(cfg, engine, out);
        if (cfg.subcommand == "verify") return run_verify(cfg, engine, out);
        if (cfg.subcommand == "weyl") return run_weyl(cfg, engine, out);
        if (cfg.subcommand == "char") return run_char(cfg, engine, out, false);
        if (cfg.subcommand == "string") return run_char(cfg, engine, out, true);
        throw std::invalid_argument("unknown subcommand '" + cfg.subcommand + "'");
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace branchkit
