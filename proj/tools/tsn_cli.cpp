// Command-line surface over the whole library. Exit codes: 0 success,
// 2 malformed input, 3 undecidable at the precision cap, 4 unsupported
// family / unknown index / failed construction hypotheses, 5 cap exceeded,
// 1 anything else. Diagnostics go to stderr, results to stdout.

#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "tsn/cache.hpp"
#include "tsn/classify.hpp"
#include "tsn/json_io.hpp"
#include "tsn/selftest.hpp"
#include "tsn/transfer.hpp"

namespace {

int exit_code_for(tsn::errc c) {
    using tsn::errc;
    switch (c) {
        case errc::parse:
        case errc::zero_ordinal:
        case errc::not_limit:
        case errc::malformed_blocks:
            return 2;
        case errc::undecidable_at_precision:
            return 3;
        case errc::unsupported_family:
        case errc::unknown_index:
        case errc::index_one:
        case errc::hypothesis_fails:
        case errc::diverged:
        case errc::empty_intersection:
            return 4;
        case errc::cap_exceeded:
            return 5;
        default:
            return 1;
    }
}

std::vector<tsn::Vector> parse_block_vectors(const std::string& text) {
    std::vector<tsn::Vector> out;
    size_t pos = 0;
    while (pos <= text.size()) {
        size_t semi = text.find(';', pos);
        std::string piece = text.substr(pos, semi == std::string::npos ? semi : semi - pos);
        out.push_back(tsn::vector_parse(piece));
        if (semi == std::string::npos) break;
        pos = semi + 1;
    }
    return out;
}

} // namespace

int main(int argc, char** argv) {
    using namespace tsn;

    CLI::App app{"exact norms, membership, and classification for Schreier-type spaces"};
    app.require_subcommand(1);

    bool json_out = false;
    unsigned long long seed = 42;
    std::string cache_file;
    long long max_n = -1;
    unsigned precision = 1024;
    app.add_flag("--json", json_out, "emit JSON on stdout");
    app.add_option("--seed", seed, "sampler seed (experiment)");
    app.add_option("--cache", cache_file, "persistent norm/certificate cache file");
    app.add_option("--max-n", max_n, "override the subcommand's cap (support size or set bound)");
    app.add_option("--precision", precision, "interval bit cap for logarithmic comparisons");

    std::string a_family, a_set, a_blocks, a_space, a_space2, a_vector, a_fun, a_rat, a_mode =
        "subset";
    long long a_n = 0, a_samples = 200, a_max_supp = 10, a_fundseq = 0, a_criterion = 0;
    std::string a_cli_path;

    auto* c_member = app.add_subcommand("member", "is the set in the family?");
    c_member->add_option("family", a_family, "family expression")->required();
    c_member->add_option("set", a_set, "finite set, e.g. {2,3,5}")->required();

    auto* c_adm = app.add_subcommand("admissible", "is the block sequence admissible?");
    c_adm->add_option("family", a_family)->required();
    c_adm->add_option("blocks", a_blocks, "blocks, e.g. {2,3};{6};{9,10}")->required();

    auto* c_trunc = app.add_subcommand("truncate", "all members inside {1..N}");
    c_trunc->add_option("family", a_family)->required();
    c_trunc->add_option("N", a_n)->required();

    auto* c_max = app.add_subcommand("maximal", "maximal members inside {1..N}");
    c_max->add_option("family", a_family)->required();
    c_max->add_option("N", a_n)->required();
    c_max->add_option("--mode", a_mode, "subset | endext");

    auto* c_index = app.add_subcommand("index", "symbolic compactness index");
    c_index->add_option("family", a_family)->required();
    c_index->add_option("--fundseq", a_fundseq, "also print this fundamental-sequence entry");

    auto* c_norm = app.add_subcommand("norm", "exact norm with certificate");
    c_norm->add_option("space", a_space, "e.g. {S[1],1/2;[<=3],2/3}")->required();
    c_norm->add_option("vector", a_vector, "e.g. e:2=1,3=1/2")->required();

    auto* c_cert = app.add_subcommand("certify", "recompute, then validate the certificate");
    c_cert->add_option("space", a_space)->required();
    c_cert->add_option("vector", a_vector)->required();

    auto* c_transfer = app.add_subcommand("transfer", "push a functional onto a block sequence");
    c_transfer->add_option("space", a_space)->required();
    c_transfer->add_option("functional", a_fun, "functional as JSON")->required();
    c_transfer->add_option("blocks", a_blocks, "block vectors, ';'-separated")->required();

    auto* c_classify = app.add_subcommand("classify", "canonical class of a space");
    c_classify->add_option("space", a_space)->required();

    auto* c_compare = app.add_subcommand("compare", "same class or not");
    c_compare->add_option("space0", a_space)->required();
    c_compare->add_option("space1", a_space2)->required();

    auto* c_witness = app.add_subcommand("witness", "numeric incomparability certificate");
    c_witness->add_option("pair0", a_space, "single-pair space")->required();
    c_witness->add_option("pair1", a_space2, "single-pair space, must dominate")->required();
    c_witness->add_option("C", a_rat, "ratio target, rational")->required();

    auto* c_exp = app.add_subcommand("experiment", "sampled norm ratios of two spaces");
    c_exp->add_option("space0", a_space)->required();
    c_exp->add_option("space1", a_space2)->required();
    c_exp->add_option("--samples", a_samples);
    c_exp->add_option("--max-supp", a_max_supp);

    auto* c_self = app.add_subcommand("selftest", "run the acceptance checks");
    c_self->add_option("--criterion", a_criterion, "run a single criterion (default: all)");
    c_self->add_option("--cli", a_cli_path, "path to this binary for the CLI criterion");

    for (auto* sub : app.get_subcommands({})) sub->fallthrough();
    CLI11_PARSE(app, argc, argv);

    try {
        if (*c_member) {
            bool r = contains(family_parse(a_family), set_parse(a_set));
            if (json_out)
                std::cout << json{{"member", r}}.dump() << "\n";
            else
                std::cout << (r ? "true" : "false") << "\n";
        } else if (*c_adm) {
            bool r = is_admissible(family_parse(a_family), blocks_parse(a_blocks));
            if (json_out)
                std::cout << json{{"admissible", r}}.dump() << "\n";
            else
                std::cout << (r ? "true" : "false") << "\n";
        } else if (*c_trunc) {
            long long cap = max_n < 0 ? 20 : max_n;
            auto sets = truncate(family_parse(a_family), a_n, cap);
            if (json_out) {
                json arr = json::array();
                for (const auto& s : sets) arr.push_back(s.v);
                std::cout << arr.dump() << "\n";
            } else {
                for (const auto& s : sets) std::cout << set_str(s) << "\n";
            }
        } else if (*c_max) {
            long long cap = max_n < 0 ? 20 : max_n;
            MaxMode mode;
            if (a_mode == "subset")
                mode = MaxMode::subset;
            else if (a_mode == "endext")
                mode = MaxMode::endext;
            else
                fail(errc::parse, "mode must be subset or endext");
            auto sets = maximal_sets(family_parse(a_family), a_n, mode, cap);
            if (json_out) {
                json arr = json::array();
                for (const auto& s : sets) arr.push_back(s.v);
                std::cout << arr.dump() << "\n";
            } else {
                for (const auto& s : sets) std::cout << set_str(s) << "\n";
            }
        } else if (*c_index) {
            IndexResult r = cb_index_symbolic(family_parse(a_family));
            json out;
            std::string kind = r.kind == IndexResult::Kind::exact      ? "exact"
                               : r.kind == IndexResult::Kind::interval ? "interval"
                                                                       : "unknown";
            out["kind"] = kind;
            if (r.kind != IndexResult::Kind::unknown) {
                out["lo"] = ord_to_json(r.lo);
                out["hi"] = ord_to_json(r.hi);
            }
            std::string extra;
            if (a_fundseq > 0) {
                if (r.kind != IndexResult::Kind::exact)
                    fail(errc::unknown_index, "fundamental sequence needs an exact index");
                Ordinal e = fundamental_seq(r.lo, static_cast<unsigned long long>(a_fundseq));
                out["fundseq"] = ord_to_json(e);
                extra = "  [" + std::to_string(a_fundseq) + "] = " + ord_str(e);
            }
            if (json_out)
                std::cout << out.dump() << "\n";
            else
                std::cout << index_str(r) << extra << "\n";
        } else if (*c_norm) {
            Space sp = space_parse(a_space);
            Vector x = vector_parse(a_vector);
            size_t cap = max_n < 0 ? 14 : static_cast<size_t>(max_n);
            std::string norm_text;
            json cert;
            bool hit = false;
            Cache cache;
            std::string key;
            if (!cache_file.empty()) {
                cache = Cache::load(cache_file);
                key = cache_key(sp, x);
                if (auto v = cache.lookup(key)) {
                    norm_text = (*v)["norm"].get<std::string>();
                    cert = (*v)["certificate"];
                    hit = true;
                }
            }
            if (!hit) {
                NormResult r = norm(sp, x, cap);
                norm_text = rat_str(r.value);
                cert = fun_to_json(r.cert);
                if (!cache_file.empty()) {
                    cache.store(key, json{{"norm", norm_text}, {"certificate", cert}});
                    cache.save();
                }
            }
            if (json_out)
                std::cout << json{{"norm", norm_text}, {"certificate", cert}}.dump() << "\n";
            else
                std::cout << norm_text << "\ncertificate: " << cert.dump() << "\n";
        } else if (*c_cert) {
            Space sp = space_parse(a_space);
            Vector x = vector_parse(a_vector);
            size_t cap = max_n < 0 ? 14 : static_cast<size_t>(max_n);
            NormResult r = norm(sp, x, cap);
            std::string why;
            bool ok = validate(sp, r.cert, rat(1), &why);
            bool matches = eval(sp, r.cert, x) == r.value;
            if (json_out)
                std::cout << json{{"norm", rat_str(r.value)},
                                  {"certificate", fun_to_json(r.cert)},
                                  {"valid", ok},
                                  {"value_matches", matches},
                                  {"why", why}}
                                 .dump()
                          << "\n";
            else
                std::cout << rat_str(r.value) << "\nvalid: " << (ok ? "yes" : "no")
                          << "  reproduces the value: " << (matches ? "yes" : "no") << "\n";
            if (!ok || !matches) return 1;
        } else if (*c_transfer) {
            Space sp = space_parse(a_space);
            json jf = json::parse(a_fun, nullptr, false);
            if (jf.is_discarded()) fail(errc::parse, "functional is not valid JSON");
            FunP f = fun_from_json(jf);
            std::vector<Vector> xs = parse_block_vectors(a_blocks);
            TransferRecord rec = transfer(sp, f, xs);
            if (json_out) {
                json out;
                out["transferred"] = space_str(rec.transferred);
                out["g"] = fun_to_json(rec.g);
                out["q"] = rec.q;
                out["engaged"] = rec.engaged;
                out["identity"] = rec.identity_ok;
                out["supp"] = rec.supp_ok;
                out["admissible"] = rec.admissible_ok;
                out["note"] = rec.note;
                std::cout << out.dump() << "\n";
            } else {
                std::cout << "transferred space: " << space_str(rec.transferred) << "\n";
                std::cout << "g: " << fun_to_json(rec.g).dump() << "\n";
                std::cout << "identity: " << (rec.identity_ok ? "ok" : "FAIL")
                          << "  support: " << (rec.supp_ok ? "ok" : "FAIL")
                          << "  admissible: " << (rec.admissible_ok ? "ok" : "FAIL") << "\n";
                if (!rec.note.empty()) std::cout << "note: " << rec.note << "\n";
            }
            if (!rec.identity_ok || !rec.supp_ok || !rec.admissible_ok) return 1;
        } else if (*c_classify) {
            CanonicalClass c = canonical_class(space_parse(a_space), precision);
            if (json_out)
                std::cout << json{{"class", class_to_json(c)}}.dump() << "\n";
            else
                std::cout << class_str(c) << "\n";
        } else if (*c_compare) {
            Space s0 = space_parse(a_space), s1 = space_parse(a_space2);
            CanonicalClass c0 = canonical_class(s0, precision);
            CanonicalClass c1 = canonical_class(s1, precision);
            std::string verdict;
            int code = 0;
            try {
                verdict = class_eq(c0, c1, precision) ? "same" : "different";
            } catch (const error& e) {
                if (e.code != errc::undecidable_at_precision) throw;
                verdict = "undetermined (precision)";
                code = 3;
            }
            if (json_out)
                std::cout << json{{"class", class_to_json(c0)},
                                  {"class2", class_to_json(c1)},
                                  {"verdict",
                                   code == 3 ? "undetermined" : verdict}}
                                 .dump()
                          << "\n";
            else
                std::cout << verdict << "\n";
            return code;
        } else if (*c_witness) {
            Space s0 = space_parse(a_space), s1 = space_parse(a_space2);
            if (s0.pairs.size() != 1 || s1.pairs.size() != 1)
                fail(errc::parse, "witness wants single-pair spaces");
            long long cap = max_n < 0 ? 2000 : max_n;
            Witness w = incomparability_witness(s0.pairs[0], s1.pairs[0], rat_parse(a_rat), cap);
            if (json_out)
                std::cout << json{{"mean", vec_to_json(w.mean.mu)},
                                  {"lower1", rat_str(w.lower1)},
                                  {"upper0", rat_str(w.upper0)},
                                  {"l", w.l},
                                  {"eps", rat_str(w.eps)}}
                                 .dump()
                          << "\n";
            else
                std::cout << "l = " << w.l << ", eps = " << rat_str(w.eps) << "\n"
                          << "mean: " << vector_str(w.mean.mu) << "\n"
                          << "lower1 = " << rat_str(w.lower1)
                          << ", upper0 = " << rat_str(w.upper0) << "\n";
        } else if (*c_exp) {
            Space s0 = space_parse(a_space), s1 = space_parse(a_space2);
            size_t cap = max_n < 0 ? 14 : static_cast<size_t>(max_n);
            ExperimentReport rep =
                equivalence_experiment(s0, s1, a_samples, a_max_supp, seed, cap);
            if (json_out)
                std::cout << json{{"max_ratio_01", rat_str(rep.max_ratio_01)},
                                  {"max_ratio_10", rat_str(rep.max_ratio_10)},
                                  {"samples", rep.samples}}
                                 .dump()
                          << "\n";
            else
                std::cout << "max_ratio_01 = " << rat_str(rep.max_ratio_01)
                          << "\nmax_ratio_10 = " << rat_str(rep.max_ratio_10)
                          << "\nsamples = " << rep.samples << "\n";
        } else if (*c_self) {
            std::string cli = a_cli_path.empty() ? std::string(argv[0]) : a_cli_path;
            std::vector<int> which;
            if (a_criterion > 0) which.push_back(static_cast<int>(a_criterion));
            auto results = run_selftest(cli, which);
            bool all = true;
            for (const auto& r : results) {
                std::cout << "criterion " << r.id << " " << (r.pass ? "PASS" : "FAIL") << " ("
                          << r.detail << ") [" << r.ms << " ms]\n";
                all = all && r.pass;
            }
            return all ? 0 : 1;
        }
    } catch (const error& e) {
        std::cerr << errc_name(e.code) << ": " << e.what() << "\n";
        return exit_code_for(e.code);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
