#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "branchkit/cartan.hpp"
#include "branchkit/cli.hpp"

namespace {

// "i,k" in sl2-hat paper coordinates -> labels (k-i, i).
branchkit::LabelVec labels_from_ik(const std::string& text) {
    branchkit::LabelVec ik = branchkit::parse_labels(text);
    if (ik.size() != 2) throw CLI::ValidationError("--ikm expects \"i,k\"");
    return {ik[1] - ik[0], ik[0]};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"branchkit: exact branching functions of affine Kac-Moody algebras"};
    app.require_subcommand(1);

    branchkit::RunConfig cfg;
    std::string lambda_text, nu_text, l1_text, l2_text, mu_text;
    std::string ikm_text, ikm1_text, ikm2_text;
    long long ikmu_j = -1;
    std::string orbit_text;
    std::string cache_dir_text;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--algebra", cfg.algebra, "algebra selector, e.g. A1~1 or G2~1");
        sub->add_option("--format", cfg.format, "output format: text or json")
            ->check(CLI::IsMember({"text", "json"}));
        sub->add_option("--cache-dir", cache_dir_text,
                        "MultTable cache directory (BRANCHKIT_CACHE overrides)");
    };

    CLI::App* weyl = app.add_subcommand("weyl", "enumerate Weyl group layers");
    add_common(weyl);
    weyl->add_option("--max-length", cfg.max_length, "largest length to enumerate")->required();
    weyl->add_option("--orbit", orbit_text, "print the shifted orbit of this weight (labels)");
    weyl->add_option("--orbit-dval", cfg.orbit_dval, "d-value of the orbit weight");

    CLI::App* chr = app.add_subcommand("char", "weight-space character of L_lambda");
    add_common(chr);
    chr->add_option("--lambda", lambda_text, "highest weight labels l0,...,lr");
    chr->add_option("--ikm", ikm_text, "sl2-hat paper coordinates i,k for --lambda");
    chr->add_option("--nu", nu_text, "target h'-weight labels (default: lambda)");
    chr->add_option("--trunc", cfg.trunc, "q-order")->required();

    CLI::App* str = app.add_subcommand("string", "offset-normalized string function");
    add_common(str);
    str->add_option("--lambda", lambda_text, "highest weight labels l0,...,lr");
    str->add_option("--ikm", ikm_text, "sl2-hat paper coordinates i,k for --lambda");
    str->add_option("--nu", nu_text, "target h'-weight labels (default: lambda)");
    str->add_option("--trunc", cfg.trunc, "q-order")->required();

    CLI::App* branch = app.add_subcommand("branch", "compute one branching function");
    add_common(branch);
    branch->add_option("--lambda1", l1_text, "labels of lambda1");
    branch->add_option("--lambda2", l2_text, "labels of lambda2");
    branch->add_option("--mu", mu_text, "labels of mu");
    branch->add_option("--ikm1", ikm1_text, "sl2-hat coordinates i1,k1 for --lambda1");
    branch->add_option("--ikm2", ikm2_text, "sl2-hat coordinates i2,k2 for --lambda2");
    branch->add_option("--ikmu", ikmu_j, "sl2-hat coordinate j for --mu (level inferred)");
    branch->add_option("--trunc", cfg.trunc, "q-order")->required();
    branch
        ->add_option("--method", cfg.method,
                     "oracle | bosonic1 | bosonic1-swap | bosonic2 | sl2-closed-1 | "
                     "sl2-closed-2 | all")
        ->check(CLI::IsMember({"oracle", "bosonic1", "bosonic1-swap", "bosonic2",
                               "sl2-closed-1", "sl2-closed-2", "all"}));

    CLI::App* verify = app.add_subcommand("verify", "sweep all dominant triples at two levels");
    add_common(verify);
    verify->add_option("--levels", cfg.levels, "levels k1 k2")->expected(2)->required();
    verify->add_option("--trunc", cfg.trunc, "q-order")->required();

    CLI::App* cache = app.add_subcommand("cache", "list or clear the MultTable cache");
    add_common(cache);
    cache->add_option("op", cfg.cache_op, "list | clear")->required();

    try {
        app.parse(argc, argv);

        cfg.subcommand = app.get_subcommands().front()->get_name();
        if (!cache_dir_text.empty()) cfg.cache_dir = cache_dir_text;
        if (!orbit_text.empty()) cfg.orbit_of = branchkit::parse_labels(orbit_text);
        if (!lambda_text.empty()) cfg.lambda = branchkit::parse_labels(lambda_text);
        if (!ikm_text.empty()) cfg.lambda = labels_from_ik(ikm_text);
        if (!nu_text.empty()) cfg.nu = branchkit::parse_labels(nu_text);
        if (!l1_text.empty()) cfg.lambda1 = branchkit::parse_labels(l1_text);
        if (!l2_text.empty()) cfg.lambda2 = branchkit::parse_labels(l2_text);
        if (!mu_text.empty()) cfg.mu = branchkit::parse_labels(mu_text);
        if (!ikm1_text.empty()) cfg.lambda1 = labels_from_ik(ikm1_text);
        if (!ikm2_text.empty()) cfg.lambda2 = labels_from_ik(ikm2_text);
        if (ikmu_j >= 0) {
            if (!cfg.lambda1 || !cfg.lambda2)
                throw CLI::ValidationError("--ikmu needs lambda1 and lambda2 to infer the level");
            long long k = 0;
            // level of both factors; for A1~1 comarks are (1,1)
            k = (*cfg.lambda1)[0] + (*cfg.lambda1)[1] + (*cfg.lambda2)[0] + (*cfg.lambda2)[1];
            cfg.mu = branchkit::LabelVec{k - ikmu_j, ikmu_j};
        }
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }

    return branchkit::run(cfg, std::cout, std::cerr);
}
